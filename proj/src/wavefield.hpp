// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace dirmeas {

using cplx = std::complex<double>;

// Uniform discretization of the transverse coordinate on [-half_range,
// half_range]. Samples sit at bin centers, x_k = -half_range +
// (k + 0.5) * spacing, so a symmetric range has no double-counted endpoint.
// All lengths are expressed in units of the measuring half-range L, so
// half_range = 1 reproduces the x in [-L, L] convention used throughout.
struct Grid {
  int n_points = 0;
  double half_range = 0.0;

  double spacing() const { return 2.0 * half_range / n_points; }
  double x(int k) const { return -half_range + (k + 0.5) * spacing(); }
  bool operator==(const Grid&) const = default;
};

Grid make_grid(int n_points, double half_range);

// Conjugate momentum grid (hbar = 1). Sample spacing is 2*pi / (n * dx) and
// the p = 0 sample always lies exactly on the grid: p_j = (j - n/2) * dp for
// even n, (j - (n-1)/2) * dp for odd n. Position bins use centers, momentum
// samples do not, because post-selection targets p = 0 exactly.
struct MomentumGrid {
  int n_points = 0;
  double spacing = 0.0;

  int zero_index() const { return n_points / 2; }
  double p(int j) const { return (j - zero_index()) * spacing; }
};

MomentumGrid conjugate_grid(const Grid& grid);

// Complex amplitudes psi(x_k) on a Grid; normalization is with respect to
// the measure sum |psi|^2 * spacing.
struct WaveFunction {
  Grid grid;
  std::vector<cplx> amplitudes;
};

// Momentum-representation amplitudes phi(p_j) on the conjugate grid.
struct MomentumWave {
  MomentumGrid grid;
  std::vector<cplx> amplitudes;
};

// Pointer-resolved field: amp0 rides the pointer state |0>, amp1 rides |1>.
struct JointState {
  Grid grid;
  std::vector<cplx> amp0;
  std::vector<cplx> amp1;
};

WaveFunction make_wavefunction(const Grid& grid, std::vector<cplx> amplitudes);

double norm_squared(const WaveFunction& psi);
double norm_squared(const JointState& joint);

WaveFunction normalize(const WaveFunction& psi);

// sum_k conj(psi1_k) psi2_k * spacing; the grids must match.
cplx overlap(const WaveFunction& psi1, const WaveFunction& psi2);

// phi(p_j) = (1/sqrt(2 pi)) sum_k psi(x_k) exp(-i p_j x_k) * dx.
// With the conjugate grid this map is exactly unitary: Parseval holds and
// from_momentum inverts it to round-off.
MomentumWave to_momentum(const WaveFunction& psi);
WaveFunction from_momentum(const MomentumWave& phi, const Grid& grid);

// Evaluate the same transform at an arbitrary (off-grid) momentum.
cplx momentum_amplitude(const WaveFunction& psi, double p);

// Gaussian wave packet [a/(a+i*tau)]^{3/2} exp[-x^2 / (2(a+i*tau))],
// renormalized on the grid. tau is the propagation parameter t/m (m being
// the effective photon mass 2*pi*hbar/(lambda*c)); tau = 0 places the source
// plane at the coupling plane. The exponent is taken verbatim, with x and a
// both dimensionless in units of L.
WaveFunction gaussian_source(double a, double tau, const Grid& grid);

// Pointer-|0> product state psi(x)|0>.
JointState join_with_pointer0(const WaveFunction& psi);

}  // namespace dirmeas
