// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Figure data and simulation traces are produced
// as CSV from a flat key=value config file; command-line flags override
// file values. Exit codes: 0 success, 1 runtime failure, 2 invalid
// configuration.
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dirmeas/dirmeas.h"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kSchemaLine = "# dirmeas-sim schema v1";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

using ConfigMap = std::map<std::string, std::string>;

ConfigMap load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ConfigMap out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
  }
  return out;
}

// Validated view over defaults, config file and flag overrides.
class Settings {
 public:
  Settings(ConfigMap file_values, std::set<std::string> allowed)
      : values_(std::move(file_values)), allowed_(std::move(allowed)) {
    for (const auto& [key, value] : values_) {
      (void)value;
      if (!allowed_.count(key)) {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  }

  void override_value(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double number(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      size_t used = 0;
      const double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' is not a number: '" +
                        it->second + "'");
    }
  }

  long long integer(const std::string& key, long long fallback) const {
    const double v = number(key, double(fallback));
    const long long n = static_cast<long long>(std::llround(v));
    if (double(n) != v) {
      throw ConfigError("config: key '" + key + "' is not an integer");
    }
    return n;
  }

  std::vector<double> number_list(const std::string& key,
                                  const std::string& fallback) const {
    const std::string raw = str(key, fallback);
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (t.empty()) continue;
      try {
        out.push_back(std::stod(t));
      } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has a bad entry '" + t +
                          "'");
      }
    }
    if (out.empty()) {
      throw ConfigError("config: key '" + key + "' is an empty list");
    }
    return out;
  }

 private:
  ConfigMap values_;
  std::set<std::string> allowed_;
};

void check(dm_status status, const char* what) {
  if (status == DM_OK) return;
  const std::string message = std::string(what) + ": " + dm_last_error();
  if (status == DM_ERR_INVALID_ARGUMENT) throw ConfigError(message);
  throw RunError(message);
}

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& header) {
    if (path.empty() || path == "-") {
      out_ = stdout;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw RunError("cannot open output file '" + path + "'");
    }
    line(kSchemaLine);
    line(header);
  }

  void line(const std::string& s) {
    if (out_) {
      std::fputs(s.c_str(), out_);
      std::fputc('\n', out_);
    } else {
      file_ << s << '\n';
    }
  }

  void row(const std::vector<std::string>& fields) {
    std::string s;
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) s += ',';
      s += fields[i];
    }
    line(s);
  }

 private:
  std::FILE* out_ = nullptr;
  std::ofstream file_;
};

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 1;
  bool seed_given = false;
  bool threads_given = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "flat key=value config file");
  cmd->add_option("--out", flags->out_path, "output CSV path ('-' = stdout)");
  cmd->add_option("--seed", flags->seed, "random seed for photon sampling")
      ->each([flags](const std::string&) { flags->seed_given = true; });
  cmd->add_option("--threads", flags->threads, "worker threads for sweeps")
      ->each([flags](const std::string&) { flags->threads_given = true; });
}

Settings make_settings(const CommonFlags& flags,
                       std::set<std::string> allowed) {
  ConfigMap file_values;
  if (!flags.config_path.empty()) file_values = load_config(flags.config_path);
  Settings settings(std::move(file_values), std::move(allowed));
  if (flags.seed_given)
    settings.override_value("seed", std::to_string(flags.seed));
  if (flags.threads_given)
    settings.override_value("threads", std::to_string(flags.threads));
  return settings;
}

/* ---- beta ------------------------------------------------------------ */

void cmd_beta(const CommonFlags& flags) {
  Settings cfg = make_settings(
      flags, {"delta_p_list", "n_bins", "normalization", "seed", "threads"});
  const std::vector<double> dp_pil =
      cfg.number_list("delta_p_list", "0.05,0.25,0.5,0.75,1.0");
  const int n_bins = static_cast<int>(cfg.integer("n_bins", 60));
  const std::string norm_name = cfg.str("normalization", "unit_sum");
  dm_beta_normalization norm;
  if (norm_name == "unit_sum") {
    norm = DM_NORM_UNIT_SUM;
  } else if (norm_name == "none") {
    norm = DM_NORM_NONE;
  } else if (norm_name == "state_overlap") {
    norm = DM_NORM_STATE_OVERLAP;
  } else {
    throw ConfigError("config: normalization must be unit_sum, none or "
                      "state_overlap");
  }
  if (n_bins < 2) throw ConfigError("config: n_bins must be >= 2");

  std::vector<double> dp_internal(dp_pil.size());
  for (size_t i = 0; i < dp_pil.size(); ++i) dp_internal[i] = dp_pil[i] * kPi;
  const size_t rows = dp_pil.size() * size_t(n_bins);
  std::vector<double> out_dp(rows), out_x(rows), out_v(rows);
  check(dm_beta_profile(dp_internal.data(), dp_internal.size(), n_bins, 1.0,
                        norm, out_dp.data(), out_x.data(), out_v.data()),
        "beta profile");

  CsvWriter csv(flags.out_path, "delta_p_over_piL,x_over_L,beta_abs_normalized");
  for (size_t i = 0; i < rows; ++i) {
    csv.row({format_number(out_dp[i] / kPi), format_number(out_x[i]),
             format_number(out_v[i])});
  }
}

/* ---- fidelity ---------------------------------------------------------- */

void cmd_fidelity(const CommonFlags& flags) {
  Settings cfg = make_settings(flags, {"delta_p_count", "delta_p_max",
                                       "waist_list", "seed", "threads"});
  const long long count = cfg.integer("delta_p_count", 21);
  const double dp_max = cfg.number("delta_p_max", 1.0);
  const std::vector<double> waists =
      cfg.number_list("waist_list", "0.5,0.75,1.0");
  if (count < 2) throw ConfigError("config: delta_p_count must be >= 2");
  if (!(dp_max > 0.0) || dp_max > 1.0 + 1e-12) {
    throw ConfigError("config: delta_p_max must lie in (0, 1] (units pi/L)");
  }
  std::vector<double> dp_internal(count);
  for (long long i = 0; i < count; ++i) {
    dp_internal[i] = dp_max * kPi * double(i) / double(count - 1);
  }
  const size_t rows = size_t(count) * waists.size();
  std::vector<double> out_dp(rows), out_a(rows), out_f(rows);
  check(dm_fidelity_sweep(dp_internal.data(), dp_internal.size(),
                          waists.data(), waists.size(), 1.0, out_dp.data(),
                          out_a.data(), out_f.data()),
        "fidelity sweep");

  CsvWriter csv(flags.out_path, "delta_p_over_piL,a_over_L,fidelity");
  for (size_t i = 0; i < rows; ++i) {
    csv.row({format_number(out_dp[i] / kPi), format_number(out_a[i]),
             format_number(out_f[i])});
  }
}

/* ---- magnification ------------------------------------------------------ */

void cmd_magnification(const CommonFlags& flags) {
  Settings cfg = make_settings(
      flags, {"mode", "n_list", "delta_p", "seed", "threads"});
  const std::string mode = cfg.str("mode", "mub");
  if (mode != "mub" && mode != "double_window") {
    throw ConfigError("config: mode must be mub or double_window");
  }
  const std::vector<double> n_raw =
      cfg.number_list("n_list", "1,2,4,8,15,30,60");
  std::vector<int> n_values(n_raw.size());
  for (size_t i = 0; i < n_raw.size(); ++i) {
    n_values[i] = static_cast<int>(std::llround(n_raw[i]));
    if (double(n_values[i]) != n_raw[i] || n_values[i] < 1) {
      throw ConfigError("config: n_list entries must be positive integers");
    }
  }
  const double dp = cfg.number("delta_p", 0.563) * kPi;
  std::vector<double> out_m(n_values.size());
  check(dm_magnification_sweep(n_values.data(), n_values.size(),
                               mode == "double_window" ? 1 : 0, dp, 1.0,
                               out_m.data()),
        "magnification sweep");

  CsvWriter csv(flags.out_path, "n_points,magnification");
  for (size_t i = 0; i < n_values.size(); ++i) {
    csv.row({std::to_string(n_values[i]), format_number(out_m[i])});
  }
}

/* ---- simulate ----------------------------------------------------------- */

struct GridHandle {
  dm_grid* ptr = nullptr;
  ~GridHandle() { dm_grid_destroy(ptr); }
};
struct WaveHandle {
  dm_wavefunction* ptr = nullptr;
  ~WaveHandle() { dm_wavefunction_destroy(ptr); }
};
struct RunHandle {
  dm_run_result* ptr = nullptr;
  ~RunHandle() { dm_run_result_destroy(ptr); }
};

// Unit-normalized copy of k with the strongest bin rotated to the positive
// real axis; the same deterministic convention the library applies.
void normalize_phase_fixed(std::vector<std::complex<double>>& k) {
  size_t best = 0;
  double best_abs = 0.0;
  double norm2 = 0.0;
  for (size_t i = 0; i < k.size(); ++i) {
    const double a = std::abs(k[i]);
    norm2 += a * a;
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs == 0.0 || norm2 == 0.0) return;
  const std::complex<double> rot =
      std::polar(1.0, -std::arg(k[best]));
  const double scale = 1.0 / std::sqrt(norm2 * 2.0 / double(k.size()));
  for (auto& v : k) v *= rot * scale;
}

void cmd_simulate(const CommonFlags& flags) {
  Settings cfg = make_settings(
      flags, {"scheme", "n_points", "waist", "tau", "theta", "lambda_over_L",
              "focal_over_L", "slit_over_L", "modified_slit_over_L",
              "match_factor", "photons_per_bin", "seed", "threads"});
  const std::string scheme_name = cfg.str("scheme", "modified");
  if (scheme_name != "standard" && scheme_name != "modified") {
    throw ConfigError("config: scheme must be standard or modified");
  }
  const int n_points = static_cast<int>(cfg.integer("n_points", 64));
  const double waist = cfg.number("waist", 1.0);
  const double tau = cfg.number("tau", 0.0);
  const long long photons = cfg.integer("photons_per_bin", 0);
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed", 0));

  dm_optical_config oc{};
  oc.wavelength = cfg.number("lambda_over_L", 0.0);
  oc.focal_length = cfg.number("focal_over_L", 0.0);
  oc.slit_width = cfg.number("slit_over_L", 0.0);
  oc.theta = cfg.number("theta", 0.0);  // 0 selects the strong case pi/2
  oc.modified_slit_width = cfg.number("modified_slit_over_L", 0.0);
  oc.match_factor = cfg.number("match_factor", 0.0);
  oc.threads = static_cast<int>(cfg.integer("threads", 1));

  GridHandle grid;
  check(dm_grid_create(n_points, 1.0, &grid.ptr), "grid");
  WaveHandle psi;
  check(dm_gaussian_source(grid.ptr, waist, tau, &psi.ptr), "source");
  RunHandle run;
  check(dm_run_scheme(psi.ptr, scheme_name == "modified" ? DM_SCHEME_MODIFIED
                                                         : DM_SCHEME_STANDARD,
                      &oc, &run.ptr),
        "scheme run");

  const size_t n = size_t(dm_run_result_n_bins(run.ptr));
  std::vector<double> true_re(n), true_im(n), hat_re(n), hat_im(n), trans(n);
  check(dm_run_result_psi_true(run.ptr, true_re.data(), true_im.data(), n),
        "psi_true");
  check(dm_run_result_signal_transmission(run.ptr, trans.data(), n),
        "transmission");
  if (photons > 0) {
    std::vector<double> k_re(n), k_im(n), se_re(n), se_im(n);
    std::vector<int> missing(n);
    check(dm_run_result_sample_shots(run.ptr, photons, seed, k_re.data(),
                                     k_im.data(), se_re.data(), se_im.data(),
                                     missing.data(), n),
          "shot sampling");
    std::vector<std::complex<double>> k(n);
    for (size_t i = 0; i < n; ++i) {
      k[i] = missing[i] ? 0.0 : std::complex<double>(k_re[i], k_im[i]);
    }
    normalize_phase_fixed(k);
    for (size_t i = 0; i < n; ++i) {
      hat_re[i] = k[i].real();
      hat_im[i] = k[i].imag();
    }
  } else {
    check(dm_run_result_psi_hat(run.ptr, hat_re.data(), hat_im.data(), n),
          "psi_hat");
  }

  CsvWriter csv(flags.out_path,
                "x_over_L,re_psi_true,im_psi_true,re_psi_hat,im_psi_hat,"
                "signal_transmission,scheme");
  for (size_t i = 0; i < n; ++i) {
    csv.row({format_number(dm_grid_x(grid.ptr, int(i))),
             format_number(true_re[i]), format_number(true_im[i]),
             format_number(hat_re[i]), format_number(hat_im[i]),
             format_number(trans[i]), scheme_name});
  }
}

/* ---- paper-report -------------------------------------------------------- */

void cmd_paper_report(const CommonFlags& flags) {
  Settings cfg = make_settings(
      flags, {"range_half_mm", "step_mm", "focal_mm", "slit_mm", "lambda_mm",
              "seed", "threads"});
  const double l = cfg.number("range_half_mm", 30.0);
  const double step = cfg.number("step_mm", 1.0);
  const double focal = cfg.number("focal_mm", 1000.0);
  const double slit = cfg.number("slit_mm", 0.015);
  const double lambda = cfg.number("lambda_mm", 8.0e-4);

  double dx_l = 0, dp_pil = 0, beta = 0, m = 0;
  check(dm_paper_estimate(l, step, focal, slit, lambda, &dx_l, &dp_pil, &beta,
                          &m),
        "paper estimate");

  std::printf("measuring step       delta_x / L      = %.6f\n", dx_l);
  std::printf("post-selection width delta_p / (pi/L) = %.6f\n", dp_pil);
  std::printf("window overlap       |beta|           = %.6f\n", beta);
  std::printf("readout gain         M = 1/|beta|     = %.6f\n", m);

  CsvWriter csv(flags.out_path,
                "delta_x_over_L,delta_p_over_piL,beta_abs,magnification");
  csv.row({format_number(dx_l), format_number(dp_pil), format_number(beta),
           format_number(m)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"direct wave-function measurement simulator"};
  app.require_subcommand(1);

  CommonFlags beta_flags, fidelity_flags, mag_flags, sim_flags, paper_flags;
  add_common_flags(app.add_subcommand("beta", "post-selection factor vs x"),
                   &beta_flags);
  add_common_flags(
      app.add_subcommand("fidelity", "measured-state fidelity vs delta_p"),
      &fidelity_flags);
  add_common_flags(
      app.add_subcommand("magnification", "readout gain vs measuring points"),
      &mag_flags);
  add_common_flags(
      app.add_subcommand("simulate", "end-to-end scheme simulation"),
      &sim_flags);
  add_common_flags(
      app.add_subcommand("paper-report", "reference-setup summary"),
      &paper_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("beta")) cmd_beta(beta_flags);
    if (app.got_subcommand("fidelity")) cmd_fidelity(fidelity_flags);
    if (app.got_subcommand("magnification")) cmd_magnification(mag_flags);
    if (app.got_subcommand("simulate")) cmd_simulate(sim_flags);
    if (app.got_subcommand("paper-report")) cmd_paper_report(paper_flags);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
