// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quadrature.hpp"

namespace dirmeas {

namespace {
constexpr double kPi = std::numbers::pi;

void require_monotone(const std::vector<double>& values, const char* what) {
  if (values.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty sweep range");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw std::invalid_argument(std::string(what) +
                                  ": sweep range must be strictly increasing");
    }
  }
}
}  // namespace

double fidelity(const WaveFunction& psi_m, const WaveFunction& psi_g) {
  const WaveFunction m = normalize(psi_m);
  const WaveFunction g = normalize(psi_g);
  const double f = std::norm(overlap(m, g));
  return std::min(f, 1.0);
}

std::vector<BetaProfilePoint> beta_profile(const BetaProfileSpec& spec) {
  require_monotone(spec.delta_p, "beta_profile");
  if (spec.n_bins < 2 || !(spec.half_range > 0.0)) {
    throw std::invalid_argument("beta_profile: invalid grid");
  }
  const double p_max = kPi / spec.half_range;
  for (double dp : spec.delta_p) {
    if (dp < 0.0 || dp > p_max * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "beta_profile: delta_p must lie in [0, pi/L]");
    }
  }
  const Grid grid = make_grid(spec.n_bins, spec.half_range);
  const int n = spec.n_bins;
  std::vector<BetaProfilePoint> out;
  out.reserve(spec.delta_p.size() * n);
  for (double dp : spec.delta_p) {
    BetaModel model{BetaModel::Mode::momentum_window, dp};
    std::vector<double> values(n);
    double sum_sq = 0.0;
    for (int k = 0; k < n; ++k) {
      values[k] = std::abs(beta_value(model, grid.x(k)));
      sum_sq += values[k] * values[k];
    }
    double scale = 1.0;
    switch (spec.normalization) {
      case BetaNormalization::none:
        break;
      case BetaNormalization::unit_sum_over_bins:
        scale = (sum_sq > 0.0) ? 1.0 / std::sqrt(sum_sq) : 1.0;
        break;
      case BetaNormalization::state_overlap:
        // Window states of half-widths dx/2 (one bin) and dp.
        scale = 1.0 / std::sqrt(grid.spacing() * 2.0 * std::max(dp, 1e-300));
        break;
    }
    for (int k = 0; k < n; ++k) {
      out.push_back(BetaProfilePoint{dp, grid.x(k), values[k] * scale});
    }
  }
  return out;
}

namespace {
// One fidelity point: psi_m = beta(x) psi_G(x) against psi_G on [-L, L].
double fidelity_point(double delta_p, double waist, double half_range) {
  const auto beta = [delta_p](double x) {
    if (std::abs(delta_p * x) < 1e-8) {
      return delta_p * (1.0 - delta_p * delta_p * x * x / 6.0);
    }
    return std::sin(delta_p * x) / x;
  };
  const auto psi_sq = [waist](double x) { return std::exp(-x * x / waist); };
  const double tol = 1e-13;
  const double l = half_range;
  const double cross = integrate_adaptive(
      [&](double x) { return beta(x) * psi_sq(x); }, -l, l, tol);
  const double mm = integrate_adaptive(
      [&](double x) { return beta(x) * beta(x) * psi_sq(x); }, -l, l, tol);
  const double gg = integrate_adaptive(psi_sq, -l, l, tol);
  if (!(mm > 0.0) || !(gg > 0.0)) {
    throw std::domain_error("fidelity_sweep: degenerate state norm");
  }
  return std::min(1.0, cross * cross / (mm * gg));
}
}  // namespace

std::vector<FidelityPoint> fidelity_sweep(const FidelitySweepSpec& spec) {
  if (spec.delta_p.empty() || spec.waist.empty()) {
    throw std::invalid_argument("fidelity_sweep: empty sweep range");
  }
  for (std::size_t i = 1; i < spec.delta_p.size(); ++i) {
    if (!(spec.delta_p[i] > spec.delta_p[i - 1])) {
      throw std::invalid_argument(
          "fidelity_sweep: delta_p range must be strictly increasing");
    }
  }
  const double p_max = kPi / spec.half_range;
  for (double dp : spec.delta_p) {
    if (dp < 0.0 || dp > p_max * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "fidelity_sweep: delta_p must lie in [0, pi/L]");
    }
  }
  for (double a : spec.waist) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("fidelity_sweep: waist must be > 0");
    }
  }
  std::vector<FidelityPoint> out;
  out.reserve(spec.delta_p.size() * spec.waist.size());
  for (double dp : spec.delta_p) {
    for (double a : spec.waist) {
      const double f =
          (dp == 0.0) ? 1.0 : fidelity_point(dp, a, spec.half_range);
      out.push_back(FidelityPoint{dp, a, f});
    }
  }
  return out;
}

std::vector<MagnificationPoint> magnification_sweep(
    const MagnificationSweepSpec& spec) {
  if (spec.n_values.empty()) {
    throw std::invalid_argument("magnification_sweep: empty sweep range");
  }
  for (std::size_t i = 1; i < spec.n_values.size(); ++i) {
    if (spec.n_values[i] <= spec.n_values[i - 1]) {
      throw std::invalid_argument(
          "magnification_sweep: N range must be strictly increasing");
    }
  }
  if (spec.n_values.front() < 1) {
    throw std::invalid_argument("magnification_sweep: N must be >= 1");
  }
  std::vector<MagnificationPoint> out;
  out.reserve(spec.n_values.size());
  for (int n : spec.n_values) {
    double m = 0.0;
    if (spec.mode == BetaModel::Mode::mub) {
      m = std::sqrt(double(n));
    } else if (spec.mode == BetaModel::Mode::double_window) {
      if (!(spec.delta_p > 0.0)) {
        throw std::invalid_argument(
            "magnification_sweep: double_window mode needs delta_p > 0");
      }
      const double dx = spec.half_range / double(n);
      BetaModel model{BetaModel::Mode::double_window, spec.delta_p, dx};
      const cplx raw = beta_value(model, 0.0);
      const cplx normalized =
          raw / std::sqrt(4.0 * dx * spec.delta_p);
      m = magnification(normalized);
    } else {
      throw std::invalid_argument(
          "magnification_sweep: mode must be mub or double_window");
    }
    out.push_back(MagnificationPoint{n, m});
  }
  return out;
}

PaperEstimate estimate_paper_setup(const PaperSetup& setup) {
  if (!(setup.range_half > 0.0) || !(setup.step > 0.0) ||
      !(setup.focal_length > 0.0) || !(setup.slit_width > 0.0) ||
      !(setup.wavelength > 0.0)) {
    throw std::invalid_argument("estimate_paper_setup: lengths must be > 0");
  }
  const double l = setup.range_half;
  const double dp_abs = delta_p_from_slit(setup.slit_width,
                                          setup.focal_length,
                                          setup.wavelength);
  PaperEstimate est;
  est.delta_x_over_l = setup.step / l;
  est.delta_p_over_pil = dp_abs * l / kPi;

  // Internal units, L = 1: the measuring bin is the full step, so the
  // double-window half-widths are step/2 and the slit momentum half-width.
  const double dx_half = 0.5 * setup.step / l;
  const double dp_int = est.delta_p_over_pil * kPi;
  BetaModel model{BetaModel::Mode::double_window, dp_int, dx_half};
  const cplx raw = beta_value(model, 0.0);
  const cplx normalized = raw / std::sqrt(4.0 * dx_half * dp_int);
  est.beta_abs = std::abs(normalized);
  est.magnification = magnification(normalized);
  return est;
}

}  // namespace dirmeas
