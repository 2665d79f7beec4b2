// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coupling.hpp"
#include "wavefield.hpp"

namespace dirmeas {

// Geometry of one measuring run, all lengths in internal units of L (so the
// reference experiment L = 30 mm, f = 1000 mm, l_slit = 15 um, lambda =
// 800 nm becomes f = 33.33, l_slit = 5e-4, lambda = 2.667e-5). The derived
// effective photon mass is 2*pi/(lambda*c); free evolution over a distance z
// multiplies the spectrum by exp(-i lambda z p^2 / (4 pi)).
struct OpticalConfig {
  double wavelength = 0.0;
  double focal_length = 0.0;
  double slit_width = 0.0;
  int sliver_bin = 0;
  CouplingAngle theta{};
  double lcp_center = 0.0;
};

// Chooses wavelength * focal_length = N_pad * dx^2 for the given grid. At
// this value the discrete transfer function is an exact cyclic chirp, so a
// single-bin source maps to a perfectly flat field after one focal length
// and the LCP cancellation is exact to round-off.
double resonant_lambda_f(const Grid& grid);

struct RunOptions {
  int threads = 1;
  // Slit full width used by the modified scheme. 0 selects the matched
  // width match_factor * 2 * lambda f / E, where E is the extent of the
  // diffracted single-bin field at the lens plane (the 4f image plus its
  // diffraction fringes then fall inside the slit).
  double modified_slit_width = 0.0;
  double match_factor = 8.0;
};

// Per-bin outcome of scanning the sliver across the grid.
struct MeasurementRecord {
  std::string scheme;
  OpticalConfig config;
  double p_window = 0.0;        // momentum half-width the slit maps to
  cplx correction_coefficient;  // weight of the p_one readout correction
  WaveFunction psi_true;
  std::vector<PointerProbs> probs;          // per bin
  std::vector<cplx> readout;                // per bin, k(x)
  WaveFunction psi_hat;                     // normalized reconstruction
  std::vector<double> signal_transmission;  // |1>-part through the slit
  std::vector<double> success_prob;         // total post-selection success
};

// Free-space Fresnel step over distance z (transfer-function method). With
// guard_band the field is zero-padded to at least twice its size before the
// step and cropped back, suppressing periodic wrap-around. Fails if the
// quadratic spectral phase would alias on the transform grid.
JointState fresnel_propagate(const JointState& field, double z,
                             const OpticalConfig& config,
                             bool guard_band = true);

// Thin-lens phase exp(-i pi (x - center)^2 / (lambda f)) on both
// polarization components.
JointState apply_lens_phase(const JointState& field, double focal_length,
                            double center, const OpticalConfig& config);

// Same phase, applied to the |1> component only.
JointState apply_lcp(const JointState& field, double focal_length,
                     double center, const OpticalConfig& config);

// Half-wave-plate sliver: the pointer coupling restricted to one bin.
JointState apply_hwp_sliver(const JointState& field, int bin,
                            CouplingAngle theta);

// Top-hat aperture |x| <= l_slit/2 on both components; returns the
// transmitted fraction of the total norm.
std::pair<JointState, double> apply_slit(const JointState& field,
                                         double l_slit);

// Exact integrals of products of two fields' momentum spectra over
// [-p_window, p_window]. The spectra are trigonometric polynomials, so the
// window integral reduces to a Toeplitz quadratic form with the kernel
// dx^2 sin(p_window u) / (pi u); the matvec runs through a circulant FFT
// embedding. p_window is clamped to the Nyquist band edge pi/dx, where the
// window covers the whole representable spectrum.
class SlitWindow {
 public:
  SlitWindow(const Grid& grid, double p_window);

  double p_window() const { return p_window_; }

  // integral over the window of conj(phi_a) phi_b dp
  cplx product(const std::vector<cplx>& a, const std::vector<cplx>& b) const;
  // the three pairings needed for pointer probabilities, computed with a
  // single pass: {S00, S11, S01}
  struct Products {
    double s00;
    double s11;
    cplx s01;
  };
  Products pointer_products(const std::vector<cplx>& amp0,
                            const std::vector<cplx>& amp1) const;

  std::vector<cplx> apply(const std::vector<cplx>& b) const;

 private:
  int n_;
  double p_window_;
  std::vector<cplx> kernel_fft_;  // circulant spectrum of the sinc kernel
};

PointerProbs probs_from_window(const SlitWindow::Products& s);

// Scans the sliver over every bin of psi's grid, post-selecting at the
// focal plane of the FT-lens (layout: sliver, f, lens, f, slit).
MeasurementRecord run_standard_scheme(const WaveFunction& psi,
                                      const OpticalConfig& config,
                                      const RunOptions& options = {});

// Layout: sliver, f, LCP centered on the sliver, 2f, lens, f, slit.
MeasurementRecord run_modified_scheme(const WaveFunction& psi,
                                      const OpticalConfig& config,
                                      const RunOptions& options = {});

}  // namespace dirmeas
