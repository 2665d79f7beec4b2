// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <cmath>
#include <numbers>

namespace dirmeas {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / double(len);
    const std::complex<double> wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w = 1.0;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

void dft_direct(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double base = sign * 2.0 * std::numbers::pi / double(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += a[j] * std::polar(1.0, base * double((j * k) % n));
    }
    out[k] = s;
  }
  a = std::move(out);
}

}  // namespace

void dft(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  if (is_pow2(data.size())) {
    fft_radix2(data, sign);
  } else {
    dft_direct(data, sign);
  }
}

void fft_inverse(std::vector<std::complex<double>>& data) {
  dft(data, +1);
  const double scale = 1.0 / double(data.size());
  for (auto& v : data) v *= scale;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace dirmeas
