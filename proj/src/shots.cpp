// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#include "shots.hpp"

#include <cmath>
#include <stdexcept>

namespace dirmeas {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return double(next() >> 11) * 0x1.0p-53;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t lane) {
  SplitMix64 g(seed ^ (0xa0761d6478bd642fULL + stream));
  const std::uint64_t a = g.next();
  SplitMix64 h(a ^ (0xe7037ed1a0b428dbULL * (lane + 1)));
  return h.next();
}

namespace {

void validate_probs(const PointerProbs& p, double success_prob) {
  const double eps = 1e-9;
  if (p.p_plus < -eps || p.p_minus < -eps || p.p_l < -eps || p.p_r < -eps ||
      p.p_one < -eps) {
    throw std::invalid_argument("sample_counts: negative probability");
  }
  const double total_pm = p.p_plus + p.p_minus;
  const double total_lr = p.p_l + p.p_r;
  if (std::abs(total_pm - total_lr) > eps * (1.0 + total_pm)) {
    throw std::invalid_argument(
        "sample_counts: inconsistent analyzer totals");
  }
  if (p.p_one > total_pm * (1.0 + eps) + eps) {
    throw std::invalid_argument(
        "sample_counts: p_one exceeds the pointer norm");
  }
  if (success_prob < 0.0 || success_prob > 1.0 + eps) {
    throw std::invalid_argument(
        "sample_counts: success probability outside [0, 1]");
  }
}

}  // namespace

DetectorCounts sample_counts(const PointerProbs& probs, double success_prob,
                             const ShotPlan& plan, std::uint64_t stream) {
  if (plan.photons_per_bin < 1) {
    throw std::invalid_argument("sample_counts: photons_per_bin must be >= 1");
  }
  validate_probs(probs, success_prob);
  const double success = std::min(success_prob, 1.0);
  const double total = probs.total();
  const double q_plus = (total > 0.0) ? probs.p_plus / total : 0.5;
  const double q_l = (total > 0.0) ? probs.p_l / total : 0.5;
  const double q_one =
      (total > 0.0) ? std::min(probs.p_one / total, 1.0) : 0.0;

  DetectorCounts counts;
  counts.sent_pm = plan.photons_per_bin / 3;
  counts.sent_lr = plan.photons_per_bin / 3;
  counts.sent_one = plan.photons_per_bin - 2 * (plan.photons_per_bin / 3);

  SplitMix64 g_pm(split_seed(plan.seed, stream, 0));
  for (long long i = 0; i < counts.sent_pm; ++i) {
    if (g_pm.uniform() >= success) continue;
    if (g_pm.uniform() < q_plus) {
      ++counts.plus;
    } else {
      ++counts.minus;
    }
  }
  SplitMix64 g_lr(split_seed(plan.seed, stream, 1));
  for (long long i = 0; i < counts.sent_lr; ++i) {
    if (g_lr.uniform() >= success) continue;
    if (g_lr.uniform() < q_l) {
      ++counts.l;
    } else {
      ++counts.r;
    }
  }
  SplitMix64 g_one(split_seed(plan.seed, stream, 2));
  for (long long i = 0; i < counts.sent_one; ++i) {
    if (g_one.uniform() >= success) continue;
    if (g_one.uniform() < q_one) {
      ++counts.one;
    } else {
      ++counts.not_one;
    }
  }
  return counts;
}

CountReconstruction reconstruct_from_counts(const DetectorCounts& counts,
                                            const ShotPlan& plan,
                                            const Scheme& scheme) {
  (void)plan;
  CountReconstruction out;
  const long long n_pm = counts.plus + counts.minus;
  const long long n_lr = counts.l + counts.r;
  const long long n_one = counts.one + counts.not_one;
  if (n_pm == 0 || n_lr == 0 || n_one == 0 || counts.sent_total() == 0) {
    out.missing = true;
    return out;
  }
  const double s_hat =
      double(counts.survivors()) / double(counts.sent_total());

  PointerProbs p;
  p.p_plus = s_hat * double(counts.plus) / double(n_pm);
  p.p_minus = s_hat * double(counts.minus) / double(n_pm);
  p.p_l = s_hat * double(counts.l) / double(n_lr);
  p.p_r = s_hat * double(counts.r) / double(n_lr);
  p.p_one = s_hat * double(counts.one) / double(n_one);
  out.readout = reconstruct_strong(p, scheme);

  // Delta-method errors: the three analyzer settings are independent
  // binomials given the survivor totals.
  cplx c;
  if (const auto* std_scheme = std::get_if<StandardScheme>(&scheme)) {
    c = (std_scheme->p_one_convention == POneConvention::bare)
            ? cplx(std::norm(std_scheme->beta), 0.0)
            : cplx(std::tan(0.5 * std_scheme->theta.theta), 0.0);
  } else {
    c = std::conj(std::get<ModifiedScheme>(scheme).beta);
  }
  const double q_plus = double(counts.plus) / double(n_pm);
  const double q_l = double(counts.l) / double(n_lr);
  const double q_one = double(counts.one) / double(n_one);
  const double var_diff_pm =
      s_hat * s_hat * 4.0 * q_plus * (1.0 - q_plus) / double(n_pm);
  const double var_diff_lr =
      s_hat * s_hat * 4.0 * q_l * (1.0 - q_l) / double(n_lr);
  const double var_one =
      s_hat * s_hat * q_one * (1.0 - q_one) / double(n_one);
  out.se_real = std::sqrt(0.25 * var_diff_pm +
                          c.real() * c.real() * var_one);
  out.se_imag = std::sqrt(0.25 * var_diff_lr +
                          c.imag() * c.imag() * var_one);
  return out;
}

Scheme record_scheme(const MeasurementRecord& record) {
  if (record.scheme == "standard") {
    return StandardScheme{record.config.theta, cplx{0.0},
                          POneConvention::postselected};
  }
  if (record.scheme == "modified") {
    return ModifiedScheme{std::conj(record.correction_coefficient)};
  }
  throw std::invalid_argument("record_scheme: unknown scheme tag '" +
                              record.scheme + "'");
}

std::vector<CountReconstruction> sample_and_reconstruct(
    const MeasurementRecord& record, const ShotPlan& plan) {
  const Scheme scheme = record_scheme(record);
  const std::size_t n = record.probs.size();
  std::vector<CountReconstruction> out(n);
  for (std::size_t b = 0; b < n; ++b) {
    const DetectorCounts counts =
        sample_counts(record.probs[b], record.success_prob[b], plan,
                      std::uint64_t(b));
    out[b] = reconstruct_from_counts(counts, plan, scheme);
  }
  return out;
}

}  // namespace dirmeas
