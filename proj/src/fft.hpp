// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace dirmeas {

// In-place DFT, X_k = sum_j x_j exp(sign * 2 pi i j k / N). Radix-2 when N
// is a power of two, direct evaluation otherwise (grids here are small).
// No normalization is applied in either direction.
void dft(std::vector<std::complex<double>>& data, int sign);

inline void fft_forward(std::vector<std::complex<double>>& data) {
  dft(data, -1);
}

// Includes the 1/N factor, so fft_inverse(fft_forward(x)) == x.
void fft_inverse(std::vector<std::complex<double>>& data);

std::size_t next_pow2(std::size_t n);

}  // namespace dirmeas
