// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exit code is the number of failed criteria. The command-line binary path
// is expected as argv[1] for the determinism check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "coupling.hpp"
#include "optics.hpp"
#include "oracles.hpp"
#include "shots.hpp"
#include "wavefield.hpp"

using namespace dirmeas;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

WaveFunction random_state(int n, std::uint64_t seed) {
  oracles::Xorshift rng(seed);
  return normalize({make_grid(n, 1.0), rng.amplitudes(n)});
}

/* --- 1: exact readout identities ------------------------------------- */

Criterion criterion_1() {
  Criterion c{1, "exact strong-readout identities"};
  double worst_standard = 0.0;
  double worst_modified = 0.0;
  for (int n : {4, 8, 32}) {
    const WaveFunction psi = random_state(n, 1000 + n);
    const MomentumWave phi = to_momentum(psi);
    const cplx phi_p = phi.amplitudes[phi.grid.zero_index()];
    for (double theta : {0.05, 0.3, kPi / 2.0}) {
      const CouplingAngle angle = make_coupling_angle(theta);
      const BetaModel models[] = {
          {BetaModel::Mode::point},
          {BetaModel::Mode::momentum_window, 0.4},
          {BetaModel::Mode::mub, 0.0, 0.0, n},
      };
      for (const BetaModel& model : models) {
        for (int k = 0; k < n; ++k) {
          const cplx beta = beta_value(model, psi.grid.x(k));
          const cplx psi_x = psi.amplitudes[k];
          const PointerState f =
              standard_pointer_state(phi_p, beta, psi_x, angle);
          const cplx got = reconstruct_strong(pointer_probabilities(f),
                                              StandardScheme{angle, beta});
          const cplx want =
              -beta * std::sin(theta) * std::conj(phi_p) * psi_x;
          worst_standard = std::max(worst_standard, std::abs(got - want));
        }
      }
    }
    // modified identity, arbitrary complex coefficients
    oracles::Xorshift rng(55 + n);
    const cplx phi_0 = rng.amplitude();
    const cplx beta = rng.amplitude();
    for (int k = 0; k < n; ++k) {
      const cplx psi_x = psi.amplitudes[k];
      const PointerState f = modified_pointer_state(phi_0, beta, psi_x);
      const cplx got = reconstruct_strong(pointer_probabilities(f),
                                          ModifiedScheme{beta});
      worst_modified =
          std::max(worst_modified, std::abs(got + std::conj(phi_0) * psi_x));
    }
  }
  c.require(worst_standard < 1e-12,
            "standard identity max error " + fmt(worst_standard));
  c.require(worst_modified < 1e-12,
            "modified identity max error " + fmt(worst_modified));
  if (c.pass) {
    c.note("max errors " + fmt(worst_standard) + " / " + fmt(worst_modified));
  }
  return c;
}

/* --- 2: weak-measurement bias scaling --------------------------------- */

Criterion criterion_2() {
  Criterion c{2, "weak-measurement bias halving"};
  const WaveFunction psi = random_state(16, 4242);
  const MomentumWave phi = to_momentum(psi);
  const cplx phi_p = phi.amplitudes[phi.grid.zero_index()];
  const cplx beta = beta_value(BetaModel{BetaModel::Mode::point}, 0.0);
  auto max_bias = [&](double theta) {
    const CouplingAngle angle = make_coupling_angle(theta);
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) {
      const PointerState f =
          standard_pointer_state(phi_p, beta, psi.amplitudes[k], angle);
      const cplx rec =
          reconstruct_weak(pointer_probabilities(f), theta, beta, phi_p);
      worst = std::max(worst, std::abs(rec - psi.amplitudes[k]));
    }
    return worst;
  };
  const double factor = max_bias(0.02) / max_bias(0.01);
  c.require(factor >= 1.6 && factor <= 2.4,
            "measured reduction factor " + fmt(factor) +
                " outside [1.6, 2.4] (the exact residual is "
                "2 sin^2(theta/2) |beta| |psi|^2 / |phi_p|, which scales "
                "with theta^2 and halves the bias by 4)");
  return c;
}

/* --- 3: reference-setup reproduction ----------------------------------- */

Criterion criterion_3() {
  Criterion c{3, "reference-setup numbers"};
  const PaperEstimate est = estimate_paper_setup();
  c.require(std::abs(est.delta_p_over_pil - 0.563) <= 0.001,
            "delta_p/(pi/L) = " + fmt(est.delta_p_over_pil));
  c.require(std::abs(est.beta_abs - 0.138) <= 0.015,
            "|beta| = " + fmt(est.beta_abs));
  c.require(std::abs(est.magnification * est.beta_abs - 1.0) < 1e-12,
            "M * |beta| != 1");
  c.note("delta_p = " + fmt(est.delta_p_over_pil) + " pi/L, |beta| = " +
         fmt(est.beta_abs) + ", M = " + fmt(est.magnification));
  return c;
}

/* --- 4: mub magnification ---------------------------------------------- */

Criterion criterion_4() {
  Criterion c{4, "mutually-unbiased magnification"};
  MagnificationSweepSpec spec;
  spec.n_values = {1, 4, 60, 1024};
  const auto rows = magnification_sweep(spec);
  for (const auto& row : rows) {
    const double want = std::sqrt(double(row.n));
    c.require(std::abs(row.magnification - want) < 1e-12,
              "M(" + std::to_string(row.n) + ") = " +
                  fmt(row.magnification));
  }
  return c;
}

/* --- 5: beta-profile properties ----------------------------------------- */

Criterion criterion_5() {
  Criterion c{5, "post-selection factor profiles"};
  BetaProfileSpec spec;
  spec.delta_p = {0.05 * kPi, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi, kPi};
  spec.n_bins = 60;
  const auto rows = beta_profile(spec);
  const int n = spec.n_bins;

  for (size_t curve = 0; curve < spec.delta_p.size(); ++curve) {
    const double dp = spec.delta_p[curve];
    std::vector<double> values(n);
    std::vector<double> xs(n);
    for (int k = 0; k < n; ++k) {
      values[k] = rows[curve * n + k].value;
      xs[k] = rows[curve * n + k].x;
    }
    for (int k = 0; k < n / 2; ++k) {
      c.require(std::abs(values[k] - values[n - 1 - k]) < 1e-12,
                "curve " + fmt(dp / kPi) + " not even");
    }
    for (int k = n / 2; k + 1 < n; ++k) {
      c.require(values[k + 1] <= values[k] + 1e-12,
                "curve " + fmt(dp / kPi) + " not monotone");
    }
    // independent quadrature oracle, same normalization
    std::vector<double> oracle(n);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = xs[k];
      oracle[k] = std::abs(oracles::simpson(
                      [x](double p) { return std::cos(p * x); }, -dp, dp,
                      4096)) /
                  std::sqrt(2.0 * kPi);
      sum += oracle[k] * oracle[k];
    }
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      worst = std::max(worst,
                       std::abs(values[k] - oracle[k] / std::sqrt(sum)));
    }
    c.require(worst < 1e-8, "curve " + fmt(dp / kPi) +
                                " deviates from the oracle by " + fmt(worst));
  }

  // flatness at delta_p = 0.05 pi/L
  double flat_worst = 0.0;
  for (int k = 0; k < n; ++k) {
    flat_worst = std::max(flat_worst,
                          std::abs(rows[k].value / rows[n / 2].value - 1.0));
  }
  c.require(flat_worst < 0.005,
            "flatness deviation " + fmt(flat_worst) + " at 0.05 pi/L");
  if (c.pass) c.note("flatness deviation " + fmt(flat_worst));
  return c;
}

/* --- 6: fidelity-sweep properties --------------------------------------- */

Criterion criterion_6() {
  Criterion c{6, "measured-state fidelity sweep"};
  FidelitySweepSpec spec;
  spec.waist = {0.5, 0.75, 1.0};
  spec.delta_p.resize(20);
  for (int i = 0; i < 20; ++i) spec.delta_p[i] = kPi * double(i) / 19.0;
  const auto rows = fidelity_sweep(spec);
  for (double a : spec.waist) {
    std::vector<double> curve;
    for (const auto& r : rows) {
      if (r.waist == a) curve.push_back(r.fidelity);
    }
    c.require(curve.front() == 1.0, "F(0) != 1 at a = " + fmt(a));
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
      c.require(curve[i + 1] < curve[i],
                "F not strictly decreasing at a = " + fmt(a));
    }
  }

  // dense-grid oracle at (pi/L, 0.5 L)
  FidelitySweepSpec probe;
  probe.delta_p = {kPi};
  probe.waist = {0.5};
  const double got = fidelity_sweep(probe)[0].fidelity;
  auto beta = [](double x) {
    return std::abs(x) < 1e-12 ? kPi : std::sin(kPi * x) / x;
  };
  auto psi2 = [](double x) { return std::exp(-x * x / 0.5); };
  const int panels = 1 << 16;
  const double cross = oracles::simpson(
      [&](double x) { return beta(x) * psi2(x); }, -1.0, 1.0, panels);
  const double mm = oracles::simpson(
      [&](double x) { return beta(x) * beta(x) * psi2(x); }, -1.0, 1.0,
      panels);
  const double gg = oracles::simpson(psi2, -1.0, 1.0, panels);
  const double oracle = cross * cross / (mm * gg);
  c.require(std::abs(got - oracle) < 1e-6,
            "F(pi/L, 0.5L) = " + fmt(got) + " vs oracle " + fmt(oracle));
  if (c.pass) c.note("F(pi/L, 0.5L) = " + fmt(got));
  return c;
}

/* --- 7: chirp cancellation ----------------------------------------------- */

Criterion criterion_7() {
  Criterion c{7, "signal flattening after the polarization lens"};
  const int n = 1024;
  const Grid grid = make_grid(n, 1.0);
  const Grid padded = make_grid(2 * n, 2.0);  // x2 guard band
  OpticalConfig oc;
  oc.focal_length = 10.0;
  oc.wavelength = resonant_lambda_f(grid) / oc.focal_length;
  oc.slit_width = 1.0;

  JointState field{padded, std::vector<cplx>(2 * n), std::vector<cplx>(2 * n)};
  const int bin = n;  // centre of the padded axis
  field.amp1[bin] = 1.0;
  JointState out = fresnel_propagate(field, oc.focal_length, oc, false);
  out = apply_lcp(out, oc.focal_length, padded.x(bin), oc);

  double mean = 0.0, m2 = 0.0;
  cplx phase_ref = 0.0;
  int count = 0;
  for (int k = 0; k < 2 * n; ++k) {
    if (std::abs(padded.x(k)) > 0.8) continue;
    const double a = std::abs(out.amp1[k]);
    mean += a;
    m2 += a * a;
    phase_ref += out.amp1[k];
    ++count;
  }
  mean /= count;
  m2 /= count;
  const double cov = std::sqrt(std::max(0.0, m2 - mean * mean)) / mean;
  double phase_dev = 0.0;
  for (int k = 0; k < 2 * n; ++k) {
    if (std::abs(padded.x(k)) > 0.8) continue;
    phase_dev = std::max(phase_dev,
                         std::abs(std::arg(out.amp1[k] / phase_ref)));
  }
  c.require(cov < 1e-3, "modulus coefficient of variation " + fmt(cov));
  c.require(phase_dev < 1e-3, "phase deviation " + fmt(phase_dev));
  if (c.pass) {
    c.note("cov = " + fmt(cov) + ", phase dev = " + fmt(phase_dev) + " rad");
  }
  return c;
}

/* --- 8: end-to-end efficiency -------------------------------------------- */

Criterion criterion_8() {
  Criterion c{8, "slit transmission gain at the reference geometry"};
  const Grid g = make_grid(512, 1.0);
  const WaveFunction psi = gaussian_source(1.0, 0.0, g);
  OpticalConfig oc;
  oc.wavelength = 8.0e-4 / 30.0;
  oc.focal_length = 1000.0 / 30.0;
  oc.slit_width = 0.015 / 30.0;
  oc.theta = make_coupling_angle(kPi / 2.0);
  RunOptions options;
  options.threads = 2;

  const MeasurementRecord rs = run_standard_scheme(psi, oc, options);
  const MeasurementRecord rm = run_modified_scheme(psi, oc, options);

  double min_mod = 1.0;
  for (double t : rm.signal_transmission) min_mod = std::min(min_mod, t);
  c.require(min_mod >= 0.95,
            "modified transmission min " + fmt(min_mod) + " < 0.95");

  const double dp = delta_p_from_slit(oc.slit_width, oc.focal_length,
                                      oc.wavelength);
  BetaModel binned{BetaModel::Mode::double_window, dp, 0.5 * g.spacing()};
  const cplx beta_n = beta_value(binned, 0.0) /
                      std::sqrt(4.0 * 0.5 * g.spacing() * dp);
  const double beta2 = std::norm(beta_n);
  double worst_std = 0.0;
  for (double t : rs.signal_transmission) {
    worst_std = std::max(worst_std, std::abs(t / beta2 - 1.0));
  }
  c.require(worst_std < 0.3, "standard transmission off the binned "
                             "|beta|^2 by " + fmt(worst_std));

  const double m2 = 1.0 / beta2;
  double worst_ratio = 0.0;
  for (size_t k = 0; k < rm.signal_transmission.size(); ++k) {
    const double ratio =
        rm.signal_transmission[k] / rs.signal_transmission[k];
    worst_ratio = std::max(worst_ratio, std::abs(ratio / m2 - 1.0));
  }
  c.require(worst_ratio < 0.3,
            "transmission ratio off M^2 by " + fmt(worst_ratio));
  if (c.pass) {
    c.note("modified >= " + fmt(min_mod) + ", standard = " +
           fmt(rs.signal_transmission[256]) + " ~ |beta|^2 = " + fmt(beta2) +
           ", ratio/M^2 within " + fmt(worst_ratio));
  }
  return c;
}

/* --- 9: shot-noise operationalization ------------------------------------- */

Criterion criterion_9() {
  Criterion c{9, "equal-budget shot-noise comparison"};
  const int d = 60;  // the reference experiment's native measuring points
  const Grid g = make_grid(d, 1.0);
  const WaveFunction psi = gaussian_source(1.0, 0.0, g);
  const double dp = 0.5625 * kPi;

  // standard arm: coupling + momentum-window post-selection per bin
  std::vector<PointerProbs> std_probs(d);
  std::vector<double> std_success(d);
  std::vector<cplx> std_noiseless(d);
  const CouplingAngle strong = make_coupling_angle(kPi / 2.0);
  const Scheme std_scheme = StandardScheme{strong, cplx{0.0}};
  for (int b = 0; b < d; ++b) {
    JointState joint = join_with_pointer0(psi);
    joint = apply_coupling(joint, b, strong);
    const auto [f, success] = postselect_momentum(joint, dp);
    std_probs[b] = pointer_probabilities(f);
    std_success[b] = success;
    std_noiseless[b] = reconstruct_strong(std_probs[b], std_scheme);
  }

  // modified arm: the discrete zero-momentum projection
  const WaveFunction p0 = momentum_window_mode(g, 0.0);
  const cplx phi_0 = overlap(p0, psi);
  const cplx beta = 1.0 / std::sqrt(double(d));
  const Scheme mod_scheme = ModifiedScheme{beta};
  std::vector<PointerProbs> mod_probs(d);
  std::vector<double> mod_success(d);
  std::vector<cplx> mod_noiseless(d);
  for (int b = 0; b < d; ++b) {
    const cplx psi_d = psi.amplitudes[b] * std::sqrt(g.spacing());
    const PointerState f = modified_pointer_state(phi_0, beta, psi_d);
    mod_probs[b] = pointer_probabilities(f);
    mod_success[b] = mod_probs[b].total();
    mod_noiseless[b] = reconstruct_strong(mod_probs[b], mod_scheme);
  }

  auto signal_rms = [&](const std::vector<cplx>& k0) {
    double acc = 0.0;
    for (const cplx& v : k0) acc += std::norm(v);
    return std::sqrt(acc / double(d));
  };
  const double a_std = signal_rms(std_noiseless);
  const double a_mod = signal_rms(mod_noiseless);

  const long long photons = 100000;
  const int n_seeds = 10;
  double ratio_sum = 0.0;
  int modified_wins = 0;
  for (int s = 0; s < n_seeds; ++s) {
    auto rmse = [&](const std::vector<PointerProbs>& probs,
                    const std::vector<double>& success,
                    const std::vector<cplx>& noiseless, const Scheme& scheme,
                    std::uint64_t seed) {
      double acc = 0.0;
      const ShotPlan plan{photons, seed};
      for (int b = 0; b < d; ++b) {
        const DetectorCounts counts =
            sample_counts(probs[b], std::min(success[b], 1.0), plan,
                          std::uint64_t(b));
        const CountReconstruction rec =
            reconstruct_from_counts(counts, plan, scheme);
        acc += std::norm(rec.readout - noiseless[b]);
      }
      return std::sqrt(acc / double(d));
    };
    const double e_std = rmse(std_probs, std_success, std_noiseless,
                              std_scheme, 9000 + s) / a_std;
    const double e_mod = rmse(mod_probs, mod_success, mod_noiseless,
                              mod_scheme, 70000 + s) / a_mod;
    if (e_mod < e_std) ++modified_wins;
    ratio_sum += e_std / e_mod;
  }
  const double mean_ratio = ratio_sum / n_seeds;
  const double m = estimate_paper_setup().magnification;
  c.require(modified_wins == n_seeds,
            "modified scheme won only " + std::to_string(modified_wins) +
                "/" + std::to_string(n_seeds) + " seeds");
  c.require(mean_ratio > 0.7 * m && mean_ratio < 1.3 * m,
            "error ratio " + fmt(mean_ratio) + " vs M = " + fmt(m));
  if (c.pass) {
    c.note("error ratio " + fmt(mean_ratio) + " vs M = " + fmt(m));
  }
  return c;
}

/* --- 10: byte-identical reruns -------------------------------------------- */

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Criterion criterion_10(const std::string& cli) {
  Criterion c{10, "deterministic command-line output"};
  if (cli.empty()) {
    c.require(false, "no CLI path supplied");
    return c;
  }
  const std::string conf = "/tmp/dirmeas_acceptance.conf";
  {
    std::ofstream out(conf, std::ios::trunc);
    out << "scheme = modified\nn_points = 32\nphotons_per_bin = 50000\n";
  }
  const std::string out1 = "/tmp/dirmeas_acceptance_1.csv";
  const std::string out2 = "/tmp/dirmeas_acceptance_2.csv";
  const std::string base = cli + " simulate --config " + conf + " --seed 31 ";
  c.require(std::system((base + "--out " + out1 + " >/dev/null 2>&1").c_str())
                == 0, "first run failed");
  c.require(std::system((base + "--out " + out2 + " >/dev/null 2>&1").c_str())
                == 0, "second run failed");
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  c.require(!a.empty(), "empty output");
  c.require(a == b, "outputs differ between reruns");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<Criterion> results;
  const auto t0 = std::chrono::steady_clock::now();
  results.push_back(criterion_1());
  results.push_back(criterion_2());
  results.push_back(criterion_3());
  results.push_back(criterion_4());
  results.push_back(criterion_5());
  results.push_back(criterion_6());
  results.push_back(criterion_7());
  results.push_back(criterion_8());
  results.push_back(criterion_9());
  results.push_back(criterion_10(cli));
  const auto t1 = std::chrono::steady_clock::now();

  int failures = 0;
  for (const Criterion& c : results) {
    std::printf("criterion %2d [%s]: %s%s%s\n", c.id,
                c.title.c_str(), c.pass ? "PASS" : "FAIL",
                c.detail.empty() ? "" : " - ", c.detail.c_str());
    if (!c.pass) ++failures;
  }
  const double seconds =
      std::chrono::duration<double>(t1 - t0).count();
  std::printf("%d/%zu criteria passed in %.1f s\n",
              int(results.size()) - failures, results.size(), seconds);
  return failures;
}
