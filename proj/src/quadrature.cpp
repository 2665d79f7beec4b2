// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace dirmeas {

namespace {

constexpr int kMaxDepth = 60;

double simpson(double h, double fa, double fc, double fb) {
  return (fa + 4.0 * fc + fb) * (h / 6.0);
}

double simpson_adaptive(const std::function<double(double)>& f, double a,
                        double c, double b, double fa, double fc, double fb,
                        double whole, double tol, int depth) {
  const double ca = 0.5 * (a + c);
  const double cb = 0.5 * (c + b);
  const double fca = f(ca);
  const double fcb = f(cb);
  const double left = simpson(c - a, fa, fca, fc);
  const double right = simpson(b - c, fc, fcb, fb);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol || depth >= kMaxDepth) {
    return left + right + err;
  }
  return simpson_adaptive(f, a, ca, c, fa, fca, fc, left, 0.5 * tol,
                          depth + 1) +
         simpson_adaptive(f, c, cb, b, fc, fcb, fb, right, 0.5 * tol,
                          depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("integrate_adaptive: tolerance must be > 0");
  }
  if (a == b) return 0.0;
  const double c = 0.5 * (a + b);
  const double fa = f(a);
  const double fc = f(c);
  const double fb = f(b);
  const double whole = simpson(b - a, fa, fc, fb);
  return simpson_adaptive(f, a, c, b, fa, fc, fb, whole, abs_tol, 0);
}

}  // namespace dirmeas
