// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "optics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "fft.hpp"

namespace dirmeas {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_config(const OpticalConfig& config) {
  if (!(config.wavelength > 0.0) || !(config.focal_length > 0.0) ||
      !(config.slit_width > 0.0)) {
    throw std::invalid_argument(
        "optics: wavelength, focal_length and slit_width must be > 0");
  }
}

// Transfer-function sampling bound: the spectral chirp phase must change by
// less than pi between adjacent momentum samples, lambda*|z| <= N*dx^2.
void check_sampling(double lambda, double z, int n_transform, double dx) {
  const double need = lambda * std::abs(z);
  const double have = double(n_transform) * dx * dx;
  if (need > have * (1.0 + 1e-12)) {
    const long min_n = static_cast<long>(std::ceil(need / (dx * dx)));
    throw std::invalid_argument(
        "fresnel_propagate: spectral chirp aliases at this sampling; the "
        "step needs at least " +
        std::to_string(min_n) + " transform samples (have " +
        std::to_string(n_transform) + "); use a finer grid");
  }
}

// Cyclic free-space step on a field of n samples with spacing dx.
void fresnel_cyclic(std::vector<cplx>& field, double lambda, double z,
                    double dx) {
  const std::size_t n = field.size();
  fft_forward(field);
  const double dp = 2.0 * kPi / (double(n) * dx);
  const double coeff = -lambda * z / (4.0 * kPi);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = (k <= n / 2) ? double(k) : double(k) - double(n);
    const double p = f * dp;
    field[k] *= std::polar(1.0, coeff * p * p);
  }
  fft_inverse(field);
}

struct PaddedAxis {
  int n_pad = 0;
  int offset = 0;  // index of the first original sample inside the pad
  double dx = 0.0;
  double x0 = 0.0;  // coordinate of padded sample 0

  double x(int j) const { return x0 + j * dx; }
};

PaddedAxis make_padded_axis(const Grid& grid) {
  PaddedAxis ax;
  ax.n_pad = static_cast<int>(next_pow2(2 * std::size_t(grid.n_points)));
  ax.offset = (ax.n_pad - grid.n_points) / 2;
  ax.dx = grid.spacing();
  ax.x0 = grid.x(0) - ax.offset * ax.dx;
  return ax;
}

std::vector<cplx> pad_field(const std::vector<cplx>& f, const PaddedAxis& ax) {
  std::vector<cplx> out(ax.n_pad, cplx{});
  std::copy(f.begin(), f.end(), out.begin() + ax.offset);
  return out;
}

std::vector<cplx> crop_field(const std::vector<cplx>& f, const PaddedAxis& ax,
                             int n) {
  return {f.begin() + ax.offset, f.begin() + ax.offset + n};
}

std::vector<cplx> cyclic_shift(const std::vector<cplx>& f, int shift) {
  const int n = static_cast<int>(f.size());
  std::vector<cplx> out(n);
  for (int j = 0; j < n; ++j) {
    int src = (j - shift) % n;
    if (src < 0) src += n;
    out[j] = f[src];
  }
  return out;
}

double grid_norm(const std::vector<cplx>& f, double dx) {
  double s = 0.0;
  for (const cplx& v : f) s += std::norm(v);
  return s * dx;
}

void run_bins_threaded(int n_bins, int threads,
                       const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int b = 0; b < n_bins; ++b) body(b);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n_bins + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n_bins, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int b = lo; b < hi; ++b) body(b);
    });
  }
  for (auto& th : pool) th.join();
}

WaveFunction phase_fixed_psi_hat(const Grid& grid,
                                 const std::vector<cplx>& readout) {
  double best = 0.0;
  int best_k = 0;
  for (int k = 0; k < grid.n_points; ++k) {
    if (std::abs(readout[k]) > best) {
      best = std::abs(readout[k]);
      best_k = k;
    }
  }
  WaveFunction hat{grid, readout};
  if (best > 0.0) {
    const cplx rot = std::polar(1.0, -std::arg(readout[best_k]));
    for (cplx& v : hat.amplitudes) v *= rot;
    hat = normalize(hat);
  }
  return hat;
}

}  // namespace

double resonant_lambda_f(const Grid& grid) {
  const PaddedAxis ax = make_padded_axis(grid);
  return double(ax.n_pad) * ax.dx * ax.dx;
}

JointState fresnel_propagate(const JointState& field, double z,
                             const OpticalConfig& config, bool guard_band) {
  if (!(config.wavelength > 0.0)) {
    throw std::invalid_argument("fresnel_propagate: wavelength must be > 0");
  }
  const Grid& g = field.grid;
  if (z == 0.0) return field;
  if (!guard_band) {
    check_sampling(config.wavelength, z, g.n_points, g.spacing());
    JointState out = field;
    fresnel_cyclic(out.amp0, config.wavelength, z, g.spacing());
    fresnel_cyclic(out.amp1, config.wavelength, z, g.spacing());
    return out;
  }
  const PaddedAxis ax = make_padded_axis(g);
  check_sampling(config.wavelength, z, ax.n_pad, ax.dx);
  JointState out = field;
  for (std::vector<cplx>* comp : {&out.amp0, &out.amp1}) {
    std::vector<cplx> padded = pad_field(*comp, ax);
    fresnel_cyclic(padded, config.wavelength, z, ax.dx);
    *comp = crop_field(padded, ax, g.n_points);
  }
  return out;
}

namespace {
void multiply_lens_chirp(std::vector<cplx>& comp, const Grid& g,
                         double lambda, double focal_length, double center) {
  const double coeff = -kPi / (lambda * focal_length);
  for (int k = 0; k < g.n_points; ++k) {
    const double u = g.x(k) - center;
    comp[k] *= std::polar(1.0, coeff * u * u);
  }
}
}  // namespace

JointState apply_lens_phase(const JointState& field, double focal_length,
                            double center, const OpticalConfig& config) {
  if (!(focal_length > 0.0) || !(config.wavelength > 0.0)) {
    throw std::invalid_argument(
        "apply_lens_phase: focal length and wavelength must be > 0");
  }
  JointState out = field;
  multiply_lens_chirp(out.amp0, out.grid, config.wavelength, focal_length,
                      center);
  multiply_lens_chirp(out.amp1, out.grid, config.wavelength, focal_length,
                      center);
  return out;
}

JointState apply_lcp(const JointState& field, double focal_length,
                     double center, const OpticalConfig& config) {
  if (!(focal_length > 0.0) || !(config.wavelength > 0.0)) {
    throw std::invalid_argument(
        "apply_lcp: focal length and wavelength must be > 0");
  }
  JointState out = field;
  multiply_lens_chirp(out.amp1, out.grid, config.wavelength, focal_length,
                      center);
  return out;
}

JointState apply_hwp_sliver(const JointState& field, int bin,
                            CouplingAngle theta) {
  return apply_coupling(field, bin, theta);
}

std::pair<JointState, double> apply_slit(const JointState& field,
                                         double l_slit) {
  const Grid& g = field.grid;
  if (!(l_slit > 0.0)) {
    throw std::invalid_argument("apply_slit: slit width must be > 0");
  }
  if (l_slit < g.spacing()) {
    const long min_n =
        static_cast<long>(std::ceil(2.0 * g.half_range / l_slit));
    throw std::invalid_argument(
        "apply_slit: slit narrower than one grid sample; needs n_points >= " +
        std::to_string(min_n));
  }
  const double before = norm_squared(field);
  if (before <= 0.0) {
    throw std::invalid_argument("apply_slit: field has zero norm");
  }
  JointState out = field;
  for (int k = 0; k < g.n_points; ++k) {
    if (std::abs(g.x(k)) > 0.5 * l_slit) {
      out.amp0[k] = 0.0;
      out.amp1[k] = 0.0;
    }
  }
  return {out, norm_squared(out) / before};
}

SlitWindow::SlitWindow(const Grid& grid, double p_window) : n_(grid.n_points) {
  if (p_window < 0.0) {
    throw std::invalid_argument("SlitWindow: p_window must be >= 0");
  }
  const double dx = grid.spacing();
  p_window_ = std::min(p_window, kPi / dx);
  const std::size_t m = next_pow2(2 * std::size_t(n_));
  // First column of the circulant embedding of the Toeplitz kernel
  // K(u) = dx^2 sin(p_window u) / (pi u).
  std::vector<cplx> col(m, cplx{});
  const double k0 = dx * dx * p_window_ / kPi;
  col[0] = k0;
  for (int j = 1; j < n_; ++j) {
    const double u = j * dx;
    const double v = dx * dx * std::sin(p_window_ * u) / (kPi * u);
    col[j] = v;
    col[m - j] = v;
  }
  fft_forward(col);
  kernel_fft_ = std::move(col);
}

std::vector<cplx> SlitWindow::apply(const std::vector<cplx>& b) const {
  const std::size_t m = kernel_fft_.size();
  std::vector<cplx> work(m, cplx{});
  std::copy(b.begin(), b.end(), work.begin());
  fft_forward(work);
  for (std::size_t i = 0; i < m; ++i) work[i] *= kernel_fft_[i];
  fft_inverse(work);
  work.resize(n_);
  return work;
}

cplx SlitWindow::product(const std::vector<cplx>& a,
                         const std::vector<cplx>& b) const {
  const std::vector<cplx> tb = apply(b);
  cplx s = 0.0;
  for (int k = 0; k < n_; ++k) s += std::conj(a[k]) * tb[k];
  return s;
}

SlitWindow::Products SlitWindow::pointer_products(
    const std::vector<cplx>& amp0, const std::vector<cplx>& amp1) const {
  const std::vector<cplx> t0 = apply(amp0);
  const std::vector<cplx> t1 = apply(amp1);
  cplx s00 = 0.0, s11 = 0.0, s01 = 0.0;
  for (int k = 0; k < n_; ++k) {
    s00 += std::conj(amp0[k]) * t0[k];
    s11 += std::conj(amp1[k]) * t1[k];
    s01 += std::conj(amp0[k]) * t1[k];
  }
  return Products{std::max(0.0, s00.real()), std::max(0.0, s11.real()), s01};
}

PointerProbs probs_from_window(const SlitWindow::Products& s) {
  PointerProbs p;
  const double half = 0.5 * (s.s00 + s.s11);
  p.p_plus = half + s.s01.real();
  p.p_minus = half - s.s01.real();
  p.p_l = half - s.s01.imag();
  p.p_r = half + s.s01.imag();
  p.p_one = s.s11;
  return p;
}

MeasurementRecord run_standard_scheme(const WaveFunction& psi,
                                      const OpticalConfig& config,
                                      const RunOptions& options) {
  (void)options;  // the closed-form bin loop needs no worker threads
  validate_config(config);
  const WaveFunction psi_n = normalize(psi);
  const Grid& g = psi_n.grid;
  const int n = g.n_points;
  const double dx = g.spacing();
  const double theta = config.theta.theta;
  const double c0 = 1.0 - std::cos(theta);  // 2 sin^2(theta/2)
  const double s = std::sin(theta);

  const double dp_raw =
      delta_p_from_slit(config.slit_width, config.focal_length,
                        config.wavelength);
  const SlitWindow window(g, dp_raw);
  const double k0 = dx * dx * window.p_window() / kPi;

  // At the lens focal plane the field is the exact Fourier transform of the
  // post-sliver field, so the five probabilities reduce to window integrals
  // over the post-sliver spectra. With a one-bin sliver those integrals
  // expand in closed form around a single kernel pass over psi.
  const std::vector<cplx> tpsi = window.apply(psi_n.amplitudes);
  cplx s_psi_psi = 0.0;
  for (int k = 0; k < n; ++k) {
    s_psi_psi += std::conj(psi_n.amplitudes[k]) * tpsi[k];
  }

  MeasurementRecord rec;
  rec.scheme = "standard";
  rec.config = config;
  rec.p_window = window.p_window();
  rec.correction_coefficient = std::tan(0.5 * theta);
  rec.psi_true = psi_n;
  rec.probs.resize(n);
  rec.readout.resize(n);
  rec.signal_transmission.resize(n);
  rec.success_prob.resize(n);

  const Scheme scheme = StandardScheme{config.theta, cplx{0.0}};
  const double mode_transmission = k0 / dx;
  for (int b = 0; b < n; ++b) {
    const cplx psi_b = psi_n.amplitudes[b];
    const cplx gamma = c0 * psi_b;
    const cplx tpsi_b = tpsi[b];
    SlitWindow::Products prod;
    prod.s00 = std::max(
        0.0, s_psi_psi.real() - 2.0 * (gamma * std::conj(tpsi_b)).real() +
                 std::norm(gamma) * k0);
    prod.s11 = s * s * std::norm(psi_b) * k0;
    prod.s01 = -s * psi_b * (std::conj(tpsi_b) - std::conj(gamma) * k0);
    rec.probs[b] = probs_from_window(prod);
    rec.readout[b] = reconstruct_strong(rec.probs[b], scheme);
    rec.signal_transmission[b] = mode_transmission;
    rec.success_prob[b] = prod.s00 + prod.s11;
  }
  rec.psi_hat = phase_fixed_psi_hat(g, rec.readout);
  return rec;
}

MeasurementRecord run_modified_scheme(const WaveFunction& psi,
                                      const OpticalConfig& config,
                                      const RunOptions& options) {
  validate_config(config);
  const WaveFunction psi_n = normalize(psi);
  const Grid& g = psi_n.grid;
  const int n = g.n_points;
  const double dx = g.spacing();
  const double lambda = config.wavelength;
  const double f = config.focal_length;
  const double theta = config.theta.theta;
  const double c0 = 1.0 - std::cos(theta);
  const double s = std::sin(theta);

  const PaddedAxis ax = make_padded_axis(g);
  check_sampling(lambda, f, ax.n_pad, ax.dx);
  const Grid padded_grid{ax.n_pad, 0.5 * ax.n_pad * ax.dx};

  // Slit width: explicit override, or matched so the relayed 4f image of
  // one bin falls inside it together with its diffraction fringes.
  double dp_mod;
  if (options.modified_slit_width > 0.0) {
    dp_mod = delta_p_from_slit(options.modified_slit_width, f, lambda);
  } else {
    const double extent =
        std::min(lambda * f / (2.0 * dx), 0.5 * ax.n_pad * ax.dx);
    dp_mod = options.match_factor * 2.0 * kPi / extent;
  }
  const SlitWindow window(padded_grid, dp_mod);

  // Reference branch and the two single-bin responses; every other bin is a
  // cyclic translate of the centre one on the padded grid.
  std::vector<cplx> ref = pad_field(psi_n.amplitudes, ax);
  fresnel_cyclic(ref, lambda, f, ax.dx);

  const int center = n / 2;
  const int center_pad = center + ax.offset;
  std::vector<cplx> v_center(ax.n_pad, cplx{});
  v_center[center_pad] = 1.0;
  fresnel_cyclic(v_center, lambda, f, ax.dx);
  std::vector<cplx> u_center = v_center;
  {
    const double coeff = -kPi / (lambda * f);
    for (int j = 0; j < ax.n_pad; ++j) {
      const double u = ax.x(j) - ax.x(center_pad);
      u_center[j] *= std::polar(1.0, coeff * u * u);
    }
  }

  // Calibrated readout correction: the |0> branch carries a copy of the
  // diffracted bin that did not pass the LCP, so the exact correction
  // weight is tan(theta/2) times the window overlap of the uncorrected and
  // corrected bin responses. Translation invariance makes it bin-independent.
  const cplx w_vu = window.product(v_center, u_center);
  const double w_uu =
      std::max(0.0, window.product(u_center, u_center).real());
  const double u_norm = grid_norm(u_center, ax.dx);
  const cplx correction =
      (w_uu > 0.0) ? std::tan(0.5 * theta) * w_vu / w_uu : cplx{0.0};
  const cplx beta_cal = std::conj(correction);
  const double mode_transmission = (u_norm > 0.0) ? w_uu / u_norm : 0.0;

  MeasurementRecord rec;
  rec.scheme = "modified";
  rec.config = config;
  rec.p_window = window.p_window();
  rec.correction_coefficient = correction;
  rec.psi_true = psi_n;
  rec.probs.resize(n);
  rec.readout.resize(n);
  rec.signal_transmission.resize(n);
  rec.success_prob.resize(n);

  const Scheme scheme = ModifiedScheme{beta_cal};
  const auto body = [&](int b) {
    const cplx psi_b = psi_n.amplitudes[b];
    const std::vector<cplx> v_b = cyclic_shift(v_center, b - center);
    const std::vector<cplx> u_b = cyclic_shift(u_center, b - center);
    std::vector<cplx> amp0(ax.n_pad);
    std::vector<cplx> amp1(ax.n_pad);
    const cplx gamma = c0 * psi_b;
    const cplx sig = -s * psi_b;
    for (int j = 0; j < ax.n_pad; ++j) {
      amp0[j] = ref[j] - gamma * v_b[j];
      amp1[j] = sig * u_b[j];
    }
    const SlitWindow::Products prod = window.pointer_products(amp0, amp1);
    rec.probs[b] = probs_from_window(prod);
    rec.readout[b] = reconstruct_strong(rec.probs[b], scheme);
    rec.signal_transmission[b] = mode_transmission;
    rec.success_prob[b] = prod.s00 + prod.s11;
  };
  run_bins_threaded(n, options.threads, body);
  rec.psi_hat = phase_fixed_psi_hat(g, rec.readout);
  return rec;
}

}  // namespace dirmeas
