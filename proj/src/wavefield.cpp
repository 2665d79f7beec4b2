// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "wavefield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirmeas {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);
}  // namespace

Grid make_grid(int n_points, double half_range) {
  if (n_points < 2) {
    throw std::invalid_argument("make_grid: n_points must be >= 2");
  }
  if (!(half_range > 0.0)) {
    throw std::invalid_argument("make_grid: half_range must be > 0");
  }
  return Grid{n_points, half_range};
}

MomentumGrid conjugate_grid(const Grid& grid) {
  return MomentumGrid{grid.n_points, kTwoPi / (grid.n_points * grid.spacing())};
}

WaveFunction make_wavefunction(const Grid& grid,
                               std::vector<cplx> amplitudes) {
  if (static_cast<int>(amplitudes.size()) != grid.n_points) {
    throw std::invalid_argument(
        "make_wavefunction: amplitude count does not match the grid");
  }
  return WaveFunction{grid, std::move(amplitudes)};
}

double norm_squared(const WaveFunction& psi) {
  double s = 0.0;
  for (const cplx& a : psi.amplitudes) s += std::norm(a);
  return s * psi.grid.spacing();
}

double norm_squared(const JointState& joint) {
  double s = 0.0;
  for (const cplx& a : joint.amp0) s += std::norm(a);
  for (const cplx& a : joint.amp1) s += std::norm(a);
  return s * joint.grid.spacing();
}

WaveFunction normalize(const WaveFunction& psi) {
  const double n2 = norm_squared(psi);
  if (n2 <= 0.0) {
    throw std::invalid_argument("normalize: cannot normalize the zero state");
  }
  WaveFunction out = psi;
  const double scale = 1.0 / std::sqrt(n2);
  for (cplx& a : out.amplitudes) a *= scale;
  return out;
}

cplx overlap(const WaveFunction& psi1, const WaveFunction& psi2) {
  if (!(psi1.grid == psi2.grid)) {
    throw std::invalid_argument("overlap: grid mismatch");
  }
  cplx s = 0.0;
  for (int k = 0; k < psi1.grid.n_points; ++k) {
    s += std::conj(psi1.amplitudes[k]) * psi2.amplitudes[k];
  }
  return s * psi1.grid.spacing();
}

MomentumWave to_momentum(const WaveFunction& psi) {
  const Grid& g = psi.grid;
  const MomentumGrid mg = conjugate_grid(g);
  const double dx = g.spacing();
  MomentumWave out{mg, std::vector<cplx>(g.n_points)};
  for (int j = 0; j < g.n_points; ++j) {
    const double p = mg.p(j);
    cplx s = 0.0;
    for (int k = 0; k < g.n_points; ++k) {
      s += psi.amplitudes[k] * std::polar(1.0, -p * g.x(k));
    }
    out.amplitudes[j] = s * dx * kInvSqrt2Pi;
  }
  return out;
}

WaveFunction from_momentum(const MomentumWave& phi, const Grid& grid) {
  if (phi.grid.n_points != grid.n_points) {
    throw std::invalid_argument("from_momentum: grid mismatch");
  }
  const double dp = phi.grid.spacing;
  WaveFunction out{grid, std::vector<cplx>(grid.n_points)};
  for (int k = 0; k < grid.n_points; ++k) {
    const double x = grid.x(k);
    cplx s = 0.0;
    for (int j = 0; j < grid.n_points; ++j) {
      s += phi.amplitudes[j] * std::polar(1.0, phi.grid.p(j) * x);
    }
    out.amplitudes[k] = s * dp * kInvSqrt2Pi;
  }
  return out;
}

cplx momentum_amplitude(const WaveFunction& psi, double p) {
  const Grid& g = psi.grid;
  cplx s = 0.0;
  for (int k = 0; k < g.n_points; ++k) {
    s += psi.amplitudes[k] * std::polar(1.0, -p * g.x(k));
  }
  return s * g.spacing() * kInvSqrt2Pi;
}

WaveFunction gaussian_source(double a, double tau, const Grid& grid) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("gaussian_source: waist a must be > 0");
  }
  if (tau < 0.0) {
    throw std::invalid_argument(
        "gaussian_source: propagation parameter must be >= 0");
  }
  const cplx w(a, tau);
  const cplx prefactor = std::pow(a / w, 1.5);
  std::vector<cplx> amps(grid.n_points);
  for (int k = 0; k < grid.n_points; ++k) {
    const double x = grid.x(k);
    amps[k] = prefactor * std::exp(-x * x / (2.0 * w));
  }
  return normalize(WaveFunction{grid, std::move(amps)});
}

JointState join_with_pointer0(const WaveFunction& psi) {
  return JointState{psi.grid, psi.amplitudes,
                    std::vector<cplx>(psi.grid.n_points, cplx{})};
}

}  // namespace dirmeas
