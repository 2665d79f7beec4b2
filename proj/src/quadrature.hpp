// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace dirmeas {

// Adaptive Simpson integration of f over [a, b] to the given absolute
// tolerance. The integrands in this project are smooth (at worst mildly
// oscillatory sinc kernels), so plain interval bisection converges fast.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-10);

}  // namespace dirmeas
