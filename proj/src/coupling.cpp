// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "coupling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quadrature.hpp"

namespace dirmeas {

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

// sin(a u) / u with the u -> 0 limit.
double sinc_kernel(double a, double u) {
  if (std::abs(a * u) < 1e-8) {
    const double au = a * u;
    return a * (1.0 - au * au / 6.0);
  }
  return std::sin(a * u) / u;
}
}  // namespace

bool CouplingAngle::is_strong() const {
  return std::abs(theta - 0.5 * kPi) < 1e-12;
}

CouplingAngle make_coupling_angle(double theta) {
  if (theta < 0.0 || theta > 0.5 * kPi + 1e-12) {
    throw std::invalid_argument(
        "make_coupling_angle: supported range is 0 <= theta <= pi/2");
  }
  return CouplingAngle{theta};
}

cplx beta_value(const BetaModel& model, double x) {
  switch (model.mode) {
    case BetaModel::Mode::point:
      return std::polar(kInvSqrt2Pi, model.p0 * x);
    case BetaModel::Mode::momentum_window: {
      if (model.delta_p < 0.0) {
        throw std::invalid_argument("beta_value: delta_p must be >= 0");
      }
      return 2.0 * kInvSqrt2Pi * sinc_kernel(model.delta_p, x);
    }
    case BetaModel::Mode::double_window: {
      if (model.delta_p < 0.0 || model.delta_x < 0.0) {
        throw std::invalid_argument(
            "beta_value: window half-widths must be >= 0");
      }
      if (model.delta_x == 0.0) return 0.0;
      const double dp = model.delta_p;
      const double value = integrate_adaptive(
          [dp](double u) { return 2.0 * sinc_kernel(dp, u); }, x - model.delta_x,
          x + model.delta_x, 1e-10);
      return value * kInvSqrt2Pi;
    }
    case BetaModel::Mode::mub:
      if (model.dimension < 1) {
        throw std::invalid_argument("beta_value: mub dimension must be >= 1");
      }
      return 1.0 / std::sqrt(static_cast<double>(model.dimension));
  }
  throw std::logic_error("beta_value: unknown mode");
}

JointState apply_coupling(const JointState& joint, int x_bin,
                          CouplingAngle theta) {
  if (x_bin < 0 || x_bin >= joint.grid.n_points) {
    throw std::invalid_argument("apply_coupling: bin index out of range");
  }
  JointState out = joint;
  const double c = std::cos(theta.theta);
  const double s = std::sin(theta.theta);
  const cplx a0 = joint.amp0[x_bin];
  const cplx a1 = joint.amp1[x_bin];
  out.amp0[x_bin] = c * a0 + s * a1;
  out.amp1[x_bin] = -s * a0 + c * a1;
  return out;
}

WaveFunction momentum_window_mode(const Grid& grid, double p_window) {
  if (p_window < 0.0) {
    throw std::invalid_argument(
        "momentum_window_mode: p_window must be >= 0");
  }
  std::vector<cplx> amps(grid.n_points);
  if (p_window == 0.0) {
    const double v = 1.0 / std::sqrt(2.0 * grid.half_range);
    for (cplx& a : amps) a = v;
    return WaveFunction{grid, std::move(amps)};
  }
  for (int k = 0; k < grid.n_points; ++k) {
    amps[k] = sinc_kernel(p_window, grid.x(k));
  }
  return normalize(WaveFunction{grid, std::move(amps)});
}

std::pair<PointerState, double> postselect_momentum(const JointState& joint,
                                                    double p_window) {
  const double total = norm_squared(joint);
  if (total <= 0.0) {
    throw std::invalid_argument(
        "postselect_momentum: joint state has zero norm");
  }
  const WaveFunction mode = momentum_window_mode(joint.grid, p_window);
  cplx a0 = 0.0, a1 = 0.0;
  for (int k = 0; k < joint.grid.n_points; ++k) {
    const cplx w = std::conj(mode.amplitudes[k]);
    a0 += w * joint.amp0[k];
    a1 += w * joint.amp1[k];
  }
  const double dx = joint.grid.spacing();
  a0 *= dx;
  a1 *= dx;
  const double success = (std::norm(a0) + std::norm(a1)) / total;
  return {PointerState{a0, a1}, success};
}

PointerProbs pointer_probabilities(const PointerState& f) {
  const cplx a0 = f.a0;
  const cplx a1 = f.a1;
  PointerProbs p;
  p.p_plus = 0.5 * std::norm(a1 + a0);
  p.p_minus = 0.5 * std::norm(a1 - a0);
  p.p_l = 0.5 * std::norm(a1 - cplx(0.0, 1.0) * a0);
  p.p_r = 0.5 * std::norm(a1 + cplx(0.0, 1.0) * a0);
  p.p_one = std::norm(a1);
  return p;
}

namespace {
cplx cross_term(const PointerProbs& probs) {
  return 0.5 * cplx(probs.p_plus - probs.p_minus,
                    -(probs.p_l - probs.p_r));
}
}  // namespace

cplx reconstruct_strong(const PointerProbs& probs, const Scheme& scheme) {
  const cplx raw = cross_term(probs);
  if (const auto* std_scheme = std::get_if<StandardScheme>(&scheme)) {
    const double theta = std_scheme->theta.theta;
    if (std::abs(std::cos(0.5 * theta)) < 1e-12) {
      throw std::invalid_argument(
          "reconstruct_strong: tan(theta/2) singular at theta = pi");
    }
    if (std_scheme->p_one_convention == POneConvention::bare) {
      // Printed strong-measurement form; p_one must then hold the
      // unconditioned |1>-projection probability. Exact only at pi/2.
      return raw - std::norm(std_scheme->beta) * probs.p_one;
    }
    return raw - std::tan(0.5 * theta) * probs.p_one;
  }
  const auto& mod = std::get<ModifiedScheme>(scheme);
  return raw - std::conj(mod.beta) * probs.p_one;
}

cplx reconstruct_weak(const PointerProbs& probs, double theta, cplx beta,
                      cplx phi_p) {
  if (theta == 0.0) {
    throw std::invalid_argument("reconstruct_weak: theta must be nonzero");
  }
  const cplx denom = -beta * std::sin(theta) * std::conj(phi_p);
  if (std::abs(denom) == 0.0) {
    throw std::invalid_argument("reconstruct_weak: zero denominator");
  }
  return cross_term(probs) / denom;
}

PointerState standard_pointer_state(cplx phi_p, cplx beta, cplx psi_x,
                                    CouplingAngle theta) {
  const double s2 = std::sin(0.5 * theta.theta);
  return PointerState{phi_p - 2.0 * beta * s2 * s2 * psi_x,
                      -beta * std::sin(theta.theta) * psi_x};
}

PointerState modified_pointer_state(cplx phi_0, cplx beta, cplx psi_x) {
  return PointerState{phi_0 - beta * psi_x, -psi_x};
}

double magnification(cplx beta) {
  const double b = std::abs(beta);
  if (b == 0.0) {
    throw std::invalid_argument("magnification: beta must be nonzero");
  }
  return 1.0 / b;
}

double delta_p_from_slit(double l_slit, double focal_length,
                         double wavelength) {
  if (!(l_slit > 0.0) || !(focal_length > 0.0) || !(wavelength > 0.0)) {
    throw std::invalid_argument(
        "delta_p_from_slit: all lengths must be > 0");
  }
  return kPi * l_slit / (focal_length * wavelength);
}

}  // namespace dirmeas
