// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "coupling.hpp"
#include "wavefield.hpp"

namespace dirmeas {

// |<psi_m|psi_G>|^2 with both states normalized first, so the result lies
// in [0, 1] and equals 1 exactly for states differing by a global phase.
double fidelity(const WaveFunction& psi_m, const WaveFunction& psi_g);

// Normalization conventions for reported |beta| values.
//
//   none              raw window integral
//   unit_sum_over_bins  sum of |beta|^2 over the measuring bins equals 1
//                     (the convention the beta-vs-x curves are plotted in)
//   state_overlap     both windows treated as normalized states, i.e. the
//                     raw integral divided by sqrt(2 delta_x * 2 delta_p);
//                     this is the convention under which the reference-setup
//                     numbers come out
enum class BetaNormalization { none, unit_sum_over_bins, state_overlap };

struct BetaProfileSpec {
  std::vector<double> delta_p;  // momentum half-widths, internal units
  int n_bins = 60;
  double half_range = 1.0;
  BetaNormalization normalization = BetaNormalization::unit_sum_over_bins;
};

struct BetaProfilePoint {
  double delta_p;
  double x;
  double value;  // |beta| under the requested normalization
};

// |beta(x)| of the momentum-window model on the measuring grid, one curve
// per delta_p, rows ordered by (delta_p, x). delta_p outside [0, pi/L] is
// rejected; that is the discrete-Fourier compatibility range.
std::vector<BetaProfilePoint> beta_profile(const BetaProfileSpec& spec);

struct FidelitySweepSpec {
  std::vector<double> delta_p;  // internal units
  std::vector<double> waist;    // Gaussian a values, units of L
  double half_range = 1.0;
};

struct FidelityPoint {
  double delta_p;
  double waist;
  double fidelity;
};

// Fidelity between the distorted measurement psi_m(x) = beta(x) psi_G(x)
// and psi_G over the measuring range, evaluated with adaptive quadrature in
// the continuum (no grid discretization error).
std::vector<FidelityPoint> fidelity_sweep(const FidelitySweepSpec& spec);

struct MagnificationSweepSpec {
  std::vector<int> n_values;
  BetaModel::Mode mode = BetaModel::Mode::mub;  // mub or double_window
  double delta_p = 0.0;  // internal units, double_window mode only
  double half_range = 1.0;
};

struct MagnificationPoint {
  int n;
  double magnification;
};

// M as a function of the number of measuring points N. The mub mode gives
// M = sqrt(N) exactly; the double-window mode uses delta_x = L/N and the
// state-overlap normalization.
std::vector<MagnificationPoint> magnification_sweep(
    const MagnificationSweepSpec& spec);

// Reference experiment parameters, all in millimetres. delta_x is the
// measuring step (full bin width).
struct PaperSetup {
  double range_half = 30.0;
  double step = 1.0;
  double focal_length = 1000.0;
  double slit_width = 0.015;
  double wavelength = 8.0e-4;
};

struct PaperEstimate {
  double delta_x_over_l;
  double delta_p_over_pil;
  double beta_abs;
  double magnification;
};

// The step/range ratio, the slit-limited momentum half-width, |beta| from
// the double-window quadrature under the state-overlap normalization, and
// M = 1/|beta|.
PaperEstimate estimate_paper_setup(const PaperSetup& setup = {});

}  // namespace dirmeas
