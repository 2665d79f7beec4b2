// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "dirmeas/dirmeas.h"

#include <cstring>
#include <numbers>
#include <string>

#include "analysis.hpp"
#include "coupling.hpp"
#include "optics.hpp"
#include "shots.hpp"
#include "wavefield.hpp"

struct dm_grid {
  dirmeas::Grid grid;
};

struct dm_wavefunction {
  dirmeas::WaveFunction psi;
};

struct dm_run_result {
  dirmeas::MeasurementRecord record;
};

namespace {

thread_local std::string g_last_error;

dm_status fail(dm_status code, const char* message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
dm_status guarded(Fn&& fn) {
  try {
    fn();
    return DM_OK;
  } catch (const std::invalid_argument& e) {
    return fail(DM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(DM_ERR_RUNTIME, e.what());
  }
}

dm_status require(bool ok, const char* message) {
  return ok ? DM_OK : fail(DM_ERR_NULL_POINTER, message);
}

dm_status copy_complex(const std::vector<dirmeas::cplx>& src, double* re,
                       double* im, size_t len) {
  if (len != src.size()) {
    return fail(DM_ERR_INVALID_ARGUMENT, "buffer length mismatch");
  }
  for (size_t k = 0; k < len; ++k) {
    if (re) re[k] = src[k].real();
    if (im) im[k] = src[k].imag();
  }
  return DM_OK;
}

dm_status copy_real(const std::vector<double>& src, double* out, size_t len) {
  if (len != src.size() || !out) {
    return fail(DM_ERR_INVALID_ARGUMENT, "buffer length mismatch");
  }
  std::memcpy(out, src.data(), len * sizeof(double));
  return DM_OK;
}

}  // namespace

extern "C" {

const char* dm_last_error(void) { return g_last_error.c_str(); }

dm_status dm_grid_create(int n_points, double half_range, dm_grid** out) {
  if (dm_status s = require(out != nullptr, "dm_grid_create: out is null"))
    return s;
  return guarded([&] {
    *out = new dm_grid{dirmeas::make_grid(n_points, half_range)};
  });
}

void dm_grid_destroy(dm_grid* grid) { delete grid; }

int dm_grid_n_points(const dm_grid* grid) {
  return grid ? grid->grid.n_points : 0;
}

double dm_grid_spacing(const dm_grid* grid) {
  return grid ? grid->grid.spacing() : 0.0;
}

double dm_grid_x(const dm_grid* grid, int k) {
  if (!grid || k < 0 || k >= grid->grid.n_points) return 0.0;
  return grid->grid.x(k);
}

dm_status dm_gaussian_source(const dm_grid* grid, double waist, double tau,
                             dm_wavefunction** out) {
  if (dm_status s = require(grid && out, "dm_gaussian_source: null argument"))
    return s;
  return guarded([&] {
    *out = new dm_wavefunction{
        dirmeas::gaussian_source(waist, tau, grid->grid)};
  });
}

dm_status dm_wavefunction_create(const dm_grid* grid, const double* re,
                                 const double* im, dm_wavefunction** out) {
  if (dm_status s =
          require(grid && re && out, "dm_wavefunction_create: null argument"))
    return s;
  return guarded([&] {
    std::vector<dirmeas::cplx> amps(grid->grid.n_points);
    for (int k = 0; k < grid->grid.n_points; ++k) {
      amps[k] = dirmeas::cplx(re[k], im ? im[k] : 0.0);
    }
    *out = new dm_wavefunction{
        dirmeas::make_wavefunction(grid->grid, std::move(amps))};
  });
}

void dm_wavefunction_destroy(dm_wavefunction* psi) { delete psi; }

dm_status dm_wavefunction_amplitudes(const dm_wavefunction* psi, double* re,
                                     double* im, size_t len) {
  if (dm_status s =
          require(psi != nullptr, "dm_wavefunction_amplitudes: psi is null"))
    return s;
  return copy_complex(psi->psi.amplitudes, re, im, len);
}

dm_status dm_fidelity(const dm_wavefunction* psi_m,
                      const dm_wavefunction* psi_g, double* out) {
  if (dm_status s =
          require(psi_m && psi_g && out, "dm_fidelity: null argument"))
    return s;
  return guarded([&] { *out = dirmeas::fidelity(psi_m->psi, psi_g->psi); });
}

dm_status dm_beta_value(dm_beta_mode mode, double delta_p, double delta_x,
                        int dimension, double p0, double x, double* out_re,
                        double* out_im) {
  if (dm_status s = require(out_re != nullptr, "dm_beta_value: out is null"))
    return s;
  return guarded([&] {
    dirmeas::BetaModel model;
    switch (mode) {
      case DM_BETA_POINT:
        model.mode = dirmeas::BetaModel::Mode::point;
        break;
      case DM_BETA_MOMENTUM_WINDOW:
        model.mode = dirmeas::BetaModel::Mode::momentum_window;
        break;
      case DM_BETA_DOUBLE_WINDOW:
        model.mode = dirmeas::BetaModel::Mode::double_window;
        break;
      case DM_BETA_MUB:
        model.mode = dirmeas::BetaModel::Mode::mub;
        break;
      default:
        throw std::invalid_argument("dm_beta_value: unknown mode");
    }
    model.delta_p = delta_p;
    model.delta_x = delta_x;
    model.dimension = dimension;
    model.p0 = p0;
    const dirmeas::cplx b = dirmeas::beta_value(model, x);
    *out_re = b.real();
    if (out_im) *out_im = b.imag();
  });
}

dm_status dm_magnification(double beta_re, double beta_im, double* out) {
  if (dm_status s = require(out != nullptr, "dm_magnification: out is null"))
    return s;
  return guarded([&] {
    *out = dirmeas::magnification(dirmeas::cplx(beta_re, beta_im));
  });
}

dm_status dm_delta_p_from_slit(double l_slit, double focal_length,
                               double wavelength, double* out) {
  if (dm_status s =
          require(out != nullptr, "dm_delta_p_from_slit: out is null"))
    return s;
  return guarded([&] {
    *out = dirmeas::delta_p_from_slit(l_slit, focal_length, wavelength);
  });
}

dm_status dm_beta_profile(const double* delta_p, size_t n_delta_p, int n_bins,
                          double half_range, dm_beta_normalization norm,
                          double* out_delta_p, double* out_x,
                          double* out_value) {
  if (dm_status s = require(delta_p && out_value,
                            "dm_beta_profile: null argument"))
    return s;
  return guarded([&] {
    dirmeas::BetaProfileSpec spec;
    spec.delta_p.assign(delta_p, delta_p + n_delta_p);
    spec.n_bins = n_bins;
    spec.half_range = half_range;
    spec.normalization = static_cast<dirmeas::BetaNormalization>(norm);
    const auto rows = dirmeas::beta_profile(spec);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (out_delta_p) out_delta_p[i] = rows[i].delta_p;
      if (out_x) out_x[i] = rows[i].x;
      out_value[i] = rows[i].value;
    }
  });
}

dm_status dm_fidelity_sweep(const double* delta_p, size_t n_delta_p,
                            const double* waist, size_t n_waist,
                            double half_range, double* out_delta_p,
                            double* out_waist, double* out_fidelity) {
  if (dm_status s = require(delta_p && waist && out_fidelity,
                            "dm_fidelity_sweep: null argument"))
    return s;
  return guarded([&] {
    dirmeas::FidelitySweepSpec spec;
    spec.delta_p.assign(delta_p, delta_p + n_delta_p);
    spec.waist.assign(waist, waist + n_waist);
    spec.half_range = half_range;
    const auto rows = dirmeas::fidelity_sweep(spec);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (out_delta_p) out_delta_p[i] = rows[i].delta_p;
      if (out_waist) out_waist[i] = rows[i].waist;
      out_fidelity[i] = rows[i].fidelity;
    }
  });
}

dm_status dm_magnification_sweep(const int* n_values, size_t n_count,
                                 int use_double_window, double delta_p,
                                 double half_range, double* out_m) {
  if (dm_status s = require(n_values && out_m,
                            "dm_magnification_sweep: null argument"))
    return s;
  return guarded([&] {
    dirmeas::MagnificationSweepSpec spec;
    spec.n_values.assign(n_values, n_values + n_count);
    spec.mode = use_double_window ? dirmeas::BetaModel::Mode::double_window
                                  : dirmeas::BetaModel::Mode::mub;
    spec.delta_p = delta_p;
    spec.half_range = half_range;
    const auto rows = dirmeas::magnification_sweep(spec);
    for (size_t i = 0; i < rows.size(); ++i) out_m[i] = rows[i].magnification;
  });
}

dm_status dm_paper_estimate(double range_half, double step,
                            double focal_length, double slit_width,
                            double wavelength, double* out_dx_over_l,
                            double* out_dp_over_pil, double* out_beta,
                            double* out_m) {
  return guarded([&] {
    dirmeas::PaperSetup setup{range_half, step, focal_length, slit_width,
                              wavelength};
    const dirmeas::PaperEstimate est = dirmeas::estimate_paper_setup(setup);
    if (out_dx_over_l) *out_dx_over_l = est.delta_x_over_l;
    if (out_dp_over_pil) *out_dp_over_pil = est.delta_p_over_pil;
    if (out_beta) *out_beta = est.beta_abs;
    if (out_m) *out_m = est.magnification;
  });
}

dm_status dm_run_scheme(const dm_wavefunction* psi, dm_scheme scheme,
                        const dm_optical_config* config, dm_run_result** out) {
  if (dm_status s =
          require(psi && config && out, "dm_run_scheme: null argument"))
    return s;
  return guarded([&] {
    const dirmeas::Grid& grid = psi->psi.grid;
    dirmeas::OpticalConfig oc;
    double lambda = config->wavelength;
    double focal = config->focal_length;
    if (lambda <= 0.0 && focal <= 0.0) {
      lambda = 0.25 * grid.spacing();
      focal = dirmeas::resonant_lambda_f(grid) / lambda;
    } else if (lambda <= 0.0) {
      lambda = dirmeas::resonant_lambda_f(grid) / focal;
    } else if (focal <= 0.0) {
      focal = dirmeas::resonant_lambda_f(grid) / lambda;
    }
    oc.wavelength = lambda;
    oc.focal_length = focal;
    oc.slit_width = config->slit_width > 0.0
                        ? config->slit_width
                        : 0.563 * lambda * focal / grid.half_range;
    const double theta = config->theta > 0.0 ? config->theta
                                             : 0.5 * std::numbers::pi;
    oc.theta = dirmeas::make_coupling_angle(theta);

    dirmeas::RunOptions options;
    options.threads = config->threads > 0 ? config->threads : 1;
    options.modified_slit_width = config->modified_slit_width;
    options.match_factor =
        config->match_factor > 0.0 ? config->match_factor : 8.0;

    dirmeas::MeasurementRecord rec =
        (scheme == DM_SCHEME_MODIFIED)
            ? dirmeas::run_modified_scheme(psi->psi, oc, options)
            : dirmeas::run_standard_scheme(psi->psi, oc, options);
    *out = new dm_run_result{std::move(rec)};
  });
}

void dm_run_result_destroy(dm_run_result* result) { delete result; }

int dm_run_result_n_bins(const dm_run_result* result) {
  return result ? int(result->record.readout.size()) : 0;
}

double dm_run_result_p_window(const dm_run_result* result) {
  return result ? result->record.p_window : 0.0;
}

dm_status dm_run_result_psi_true(const dm_run_result* result, double* re,
                                 double* im, size_t len) {
  if (dm_status s =
          require(result != nullptr, "dm_run_result_psi_true: null result"))
    return s;
  return copy_complex(result->record.psi_true.amplitudes, re, im, len);
}

dm_status dm_run_result_psi_hat(const dm_run_result* result, double* re,
                                double* im, size_t len) {
  if (dm_status s =
          require(result != nullptr, "dm_run_result_psi_hat: null result"))
    return s;
  return copy_complex(result->record.psi_hat.amplitudes, re, im, len);
}

dm_status dm_run_result_readout(const dm_run_result* result, double* re,
                                double* im, size_t len) {
  if (dm_status s =
          require(result != nullptr, "dm_run_result_readout: null result"))
    return s;
  return copy_complex(result->record.readout, re, im, len);
}

dm_status dm_run_result_signal_transmission(const dm_run_result* result,
                                            double* out, size_t len) {
  if (dm_status s = require(result != nullptr,
                            "dm_run_result_signal_transmission: null result"))
    return s;
  return copy_real(result->record.signal_transmission, out, len);
}

dm_status dm_run_result_success_prob(const dm_run_result* result, double* out,
                                     size_t len) {
  if (dm_status s = require(result != nullptr,
                            "dm_run_result_success_prob: null result"))
    return s;
  return copy_real(result->record.success_prob, out, len);
}

dm_status dm_run_result_pointer_probs(const dm_run_result* result,
                                      double* p_plus, double* p_minus,
                                      double* p_l, double* p_r, double* p_one,
                                      size_t len) {
  if (dm_status s = require(result != nullptr,
                            "dm_run_result_pointer_probs: null result"))
    return s;
  if (len != result->record.probs.size()) {
    return fail(DM_ERR_INVALID_ARGUMENT, "buffer length mismatch");
  }
  for (size_t k = 0; k < len; ++k) {
    const dirmeas::PointerProbs& p = result->record.probs[k];
    if (p_plus) p_plus[k] = p.p_plus;
    if (p_minus) p_minus[k] = p.p_minus;
    if (p_l) p_l[k] = p.p_l;
    if (p_r) p_r[k] = p.p_r;
    if (p_one) p_one[k] = p.p_one;
  }
  return DM_OK;
}

dm_status dm_run_result_sample_shots(const dm_run_result* result,
                                     long long photons_per_bin, uint64_t seed,
                                     double* out_re, double* out_im,
                                     double* out_se_re, double* out_se_im,
                                     int* out_missing, size_t len) {
  if (dm_status s = require(result && out_re && out_im,
                            "dm_run_result_sample_shots: null argument"))
    return s;
  return guarded([&] {
    if (len != result->record.readout.size()) {
      throw std::invalid_argument(
          "dm_run_result_sample_shots: buffer length mismatch");
    }
    dirmeas::ShotPlan plan{photons_per_bin, seed};
    const auto recon = dirmeas::sample_and_reconstruct(result->record, plan);
    for (size_t k = 0; k < recon.size(); ++k) {
      out_re[k] = recon[k].readout.real();
      out_im[k] = recon[k].readout.imag();
      if (out_se_re) out_se_re[k] = recon[k].se_real;
      if (out_se_im) out_se_im[k] = recon[k].se_imag;
      if (out_missing) out_missing[k] = recon[k].missing ? 1 : 0;
    }
  });
}

}  // extern "C"
