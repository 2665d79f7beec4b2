/*
 * Copyright (c) 2026 dirmeas developers.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the dirmeas library: simulation and analysis of direct
 * wave-function measurement through a two-level pointer, in the standard
 * post-selected layout and in the modified layout with a polarization-
 * selective Fourier-transform plate.
 *
 * Conventions: hbar = 1 and every length is expressed in units of the
 * measuring half-range L, so the transverse coordinate spans [-1, 1] and
 * momenta are naturally quoted in multiples of pi/L. Functions return
 * DM_OK on success; on failure dm_last_error() describes the problem for
 * the calling thread. Objects returned through **out parameters are owned
 * by the caller and released with the matching _destroy function.
 */
#ifndef DIRMEAS_DIRMEAS_H
#define DIRMEAS_DIRMEAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dm_status {
  DM_OK = 0,
  DM_ERR_INVALID_ARGUMENT = 1,
  DM_ERR_RUNTIME = 2,
  DM_ERR_NULL_POINTER = 3
} dm_status;

/* Message for the most recent failure on this thread. */
const char* dm_last_error(void);

typedef struct dm_grid dm_grid;
typedef struct dm_wavefunction dm_wavefunction;
typedef struct dm_run_result dm_run_result;

/* ---- grids and states ---------------------------------------------- */

dm_status dm_grid_create(int n_points, double half_range, dm_grid** out);
void dm_grid_destroy(dm_grid* grid);
int dm_grid_n_points(const dm_grid* grid);
double dm_grid_spacing(const dm_grid* grid);
double dm_grid_x(const dm_grid* grid, int k);

/* Normalized Gaussian packet with waist a; tau is the free-propagation
 * parameter t/m (0 puts the source plane at the coupling plane). */
dm_status dm_gaussian_source(const dm_grid* grid, double waist, double tau,
                             dm_wavefunction** out);
dm_status dm_wavefunction_create(const dm_grid* grid, const double* re,
                                 const double* im, dm_wavefunction** out);
void dm_wavefunction_destroy(dm_wavefunction* psi);
dm_status dm_wavefunction_amplitudes(const dm_wavefunction* psi, double* re,
                                     double* im, size_t len);
dm_status dm_fidelity(const dm_wavefunction* psi_m,
                      const dm_wavefunction* psi_g, double* out);

/* ---- analytic beta models ------------------------------------------ */

typedef enum dm_beta_mode {
  DM_BETA_POINT = 0,
  DM_BETA_MOMENTUM_WINDOW = 1,
  DM_BETA_DOUBLE_WINDOW = 2,
  DM_BETA_MUB = 3
} dm_beta_mode;

/* delta_p and delta_x are window half-widths in internal units; dimension
 * is the Hilbert-space dimension for DM_BETA_MUB; p0 the evaluation
 * momentum for DM_BETA_POINT. */
dm_status dm_beta_value(dm_beta_mode mode, double delta_p, double delta_x,
                        int dimension, double p0, double x, double* out_re,
                        double* out_im);
dm_status dm_magnification(double beta_re, double beta_im, double* out);
dm_status dm_delta_p_from_slit(double l_slit, double focal_length,
                               double wavelength, double* out);

/* ---- sweeps --------------------------------------------------------- */

typedef enum dm_beta_normalization {
  DM_NORM_NONE = 0,
  DM_NORM_UNIT_SUM = 1,
  DM_NORM_STATE_OVERLAP = 2
} dm_beta_normalization;

/* Fills n_delta_p * n_bins rows ordered by (delta_p, x). */
dm_status dm_beta_profile(const double* delta_p, size_t n_delta_p, int n_bins,
                          double half_range, dm_beta_normalization norm,
                          double* out_delta_p, double* out_x,
                          double* out_value);

/* Fills n_delta_p * n_waist rows ordered by (delta_p, waist). */
dm_status dm_fidelity_sweep(const double* delta_p, size_t n_delta_p,
                            const double* waist, size_t n_waist,
                            double half_range, double* out_delta_p,
                            double* out_waist, double* out_fidelity);

/* M(N); use_double_window = 0 gives the ideal discrete model M = sqrt(N). */
dm_status dm_magnification_sweep(const int* n_values, size_t n_count,
                                 int use_double_window, double delta_p,
                                 double half_range, double* out_m);

/* Reference-setup summary; lengths in one consistent unit (the defaults
 * are in mm). step is the full measuring step. */
dm_status dm_paper_estimate(double range_half, double step,
                            double focal_length, double slit_width,
                            double wavelength, double* out_dx_over_l,
                            double* out_dp_over_pil, double* out_beta,
                            double* out_m);

/* ---- end-to-end scheme simulation ----------------------------------- */

typedef enum dm_scheme {
  DM_SCHEME_STANDARD = 0,
  DM_SCHEME_MODIFIED = 1
} dm_scheme;

typedef struct dm_optical_config {
  /* Internal units of L. Non-positive wavelength/focal_length select the
   * resonant default geometry for the wave's grid, where the discrete
   * propagation model is exact. */
  double wavelength;
  double focal_length;
  /* Slit full width; non-positive selects the width whose momentum window
   * is 0.563 pi/L, the reference-experiment value. */
  double slit_width;
  /* Coupling angle; non-positive selects the strong case pi/2. */
  double theta;
  /* Modified-scheme slit full width; 0 = matched to the relayed image. */
  double modified_slit_width;
  /* Lobe count for the matched slit; 0 = default 8. */
  double match_factor;
  int threads;
} dm_optical_config;

dm_status dm_run_scheme(const dm_wavefunction* psi, dm_scheme scheme,
                        const dm_optical_config* config, dm_run_result** out);
void dm_run_result_destroy(dm_run_result* result);
int dm_run_result_n_bins(const dm_run_result* result);
double dm_run_result_p_window(const dm_run_result* result);
dm_status dm_run_result_psi_true(const dm_run_result* result, double* re,
                                 double* im, size_t len);
dm_status dm_run_result_psi_hat(const dm_run_result* result, double* re,
                                double* im, size_t len);
dm_status dm_run_result_readout(const dm_run_result* result, double* re,
                                double* im, size_t len);
dm_status dm_run_result_signal_transmission(const dm_run_result* result,
                                            double* out, size_t len);
dm_status dm_run_result_success_prob(const dm_run_result* result, double* out,
                                     size_t len);

/* Per-bin projection probabilities onto |+>, |->, |L>, |R>, |1>. Any output
 * pointer may be NULL to skip that detector. */
dm_status dm_run_result_pointer_probs(const dm_run_result* result,
                                      double* p_plus, double* p_minus,
                                      double* p_l, double* p_r, double* p_one,
                                      size_t len);

/* ---- photon counting ------------------------------------------------ */

/* Splits photons_per_bin photons over the analyzer settings of every bin,
 * samples counts with the library's deterministic generator and plugs the
 * empirical frequencies back into the readout. out_missing[k] is set when
 * a bin recorded no post-selected photons in some setting. */
dm_status dm_run_result_sample_shots(const dm_run_result* result,
                                     long long photons_per_bin, uint64_t seed,
                                     double* out_re, double* out_im,
                                     double* out_se_re, double* out_se_im,
                                     int* out_missing, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* DIRMEAS_DIRMEAS_H */
