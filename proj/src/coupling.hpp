// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <variant>

#include "wavefield.hpp"

namespace dirmeas {

// theta = g t / hbar. Supported schemes use 0 <= theta <= pi/2; theta = pi/2
// is the strong-measurement case.
struct CouplingAngle {
  double theta = 0.0;

  bool is_strong() const;
};

CouplingAngle make_coupling_angle(double theta);

// Unnormalized pointer vector after post-selection: a0 multiplies |0>, a1
// multiplies |1>. For the standard scheme a0 = phi_p - 2 beta sin^2(theta/2)
// psi(x) and a1 = -beta sin(theta) psi(x).
struct PointerState {
  cplx a0;
  cplx a1;
};

// Probabilities of projecting the pointer onto |+>, |->, |L>, |R>, |1>,
// with |+-> = (|1> +- |0>)/sqrt(2) and |L/R> = (|1> +- i|0>)/sqrt(2).
// They satisfy p_plus + p_minus = p_l + p_r = |a0|^2 + |a1|^2 and
// (p_plus - p_minus)/2 - i (p_l - p_r)/2 = conj(a0) * a1.
struct PointerProbs {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_l = 0.0;
  double p_r = 0.0;
  double p_one = 0.0;

  double total() const { return p_plus + p_minus; }
};

// Analytic models for beta = <p|x>.
//
//   point           exp(i p0 x) / sqrt(2 pi) at a single momentum p0
//   momentum_window integral of <p|x> over [-delta_p, delta_p]:
//                   (2/sqrt(2 pi)) sin(delta_p x) / x
//   double_window   additionally averaged over a position window of
//                   half-width delta_x around x (adaptive quadrature)
//   mub             discrete d-dimensional mutually unbiased pair: 1/sqrt(d)
struct BetaModel {
  enum class Mode { point, momentum_window, double_window, mub };

  Mode mode = Mode::point;
  double delta_p = 0.0;  // momentum half-width, internal units (pi/L = pi)
  double delta_x = 0.0;  // position half-width, units of L
  int dimension = 1;     // d for mub mode
  double p0 = 0.0;       // evaluation momentum for point mode
};

cplx beta_value(const BetaModel& model, double x);

// Rotates the pointer within one position bin. Matches the evolution
// U(theta) = I - 2 sin^2(theta/2) pi_x - sin(theta) (i pi_x sigma_y):
// amp0' = cos(theta) amp0 + sin(theta) amp1,
// amp1' = -sin(theta) amp0 + cos(theta) amp1.
JointState apply_coupling(const JointState& joint, int x_bin,
                          CouplingAngle theta);

// Normalized zero-momentum window mode on the grid. p_window = 0 gives the
// discrete |p_0> state (uniform over all bins); p_window > 0 gives the
// grid-normalized sinc profile sin(p_window x)/x, i.e. the coherent
// superposition of momentum eigenstates over [-p_window, p_window].
WaveFunction momentum_window_mode(const Grid& grid, double p_window);

// Rank-1 projection of the joint state onto the window mode. Returns the
// pointer vector (a0, a1) and the success probability
// (|a0|^2 + |a1|^2) / total norm.
std::pair<PointerState, double> postselect_momentum(const JointState& joint,
                                                    double p_window);

PointerProbs pointer_probabilities(const PointerState& f);

// Correction-term conventions for the standard strong readout. The exact
// identity uses the post-selected P_1 with coefficient tan(theta/2). The
// printed strong-measurement form weights an unconditioned P_1 (measured
// without post-selection) by |beta|^2; the two coincide at theta = pi/2,
// which is the only angle where the bare convention is exact.
enum class POneConvention { postselected, bare };

struct StandardScheme {
  CouplingAngle theta;
  cplx beta;
  POneConvention p_one_convention = POneConvention::postselected;
};

struct ModifiedScheme {
  cplx beta;
};

using Scheme = std::variant<StandardScheme, ModifiedScheme>;

// k(x) = (p+ - p-)/2 - i (pL - pR)/2 - c * p_one with the scheme's
// correction coefficient c. For noiseless probabilities this equals
// -beta sin(theta) conj(phi_p) psi(x) in the standard scheme and
// -conj(phi(0)) psi(x) in the modified scheme, exactly.
cplx reconstruct_strong(const PointerProbs& probs, const Scheme& scheme);

// Weak readout: [(p+ - p-)/2 - i (pL - pR)/2] / (-beta sin(theta)
// conj(phi_p)). Valid in the small-theta limit; theta = 0 is rejected.
cplx reconstruct_weak(const PointerProbs& probs, double theta, cplx beta,
                      cplx phi_p);

// Closed-form pointer-state builders used by the identity tests and the
// photon-counting layer.
PointerState standard_pointer_state(cplx phi_p, cplx beta, cplx psi_x,
                                    CouplingAngle theta);
PointerState modified_pointer_state(cplx phi_0, cplx beta, cplx psi_x);

// M = 1 / |beta|.
double magnification(cplx beta);

// delta_p = pi * l_slit / (f * lambda); all arguments in one consistent
// length unit, result in inverse length.
double delta_p_from_slit(double l_slit, double focal_length,
                         double wavelength);

}  // namespace dirmeas
