// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
//
// Test-side numerics kept independent of the library implementation:
// fixed-step composite Simpson instead of adaptive bisection, and a
// deterministic xorshift state generator for random-state properties.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

// Composite Simpson with a fixed (even) panel count.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels = 1 << 14) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

class Xorshift {
 public:
  explicit Xorshift(std::uint64_t seed) : state_(seed ? seed : 1) {}

  std::uint64_t next() {
    std::uint64_t x = state_;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return state_ = x;
  }

  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  // uniform modulus/phase complex value away from zero
  std::complex<double> amplitude() {
    const double r = 0.1 + uniform();
    const double phi = 2.0 * 3.14159265358979323846 * uniform();
    return std::polar(r, phi);
  }

  std::vector<std::complex<double>> amplitudes(int n) {
    std::vector<std::complex<double>> out(n);
    for (auto& v : out) v = amplitude();
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace oracles
