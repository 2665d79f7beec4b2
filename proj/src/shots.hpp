// Copyright (c) 2026 dirmeas developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "coupling.hpp"
#include "optics.hpp"

namespace dirmeas {

// Deterministic splittable generator: splitmix64 streams keyed by
// (seed, stream, lane). The algorithm is fixed here rather than delegated
// to std:: distributions so identical plans give identical counts on every
// platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  // uniform in [0, 1) with 53 random bits
  double uniform();

 private:
  std::uint64_t state_;
};

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t lane);

struct ShotPlan {
  long long photons_per_bin = 0;
  std::uint64_t seed = 0;
};

// Raw detector clicks for one bin. The photon budget is shared equally
// between the three analyzer settings {+,-}, {L,R} and {1}, mirroring
// sequential waveplate configurations; each photon first has to survive
// post-selection.
struct DetectorCounts {
  long long sent_pm = 0;
  long long sent_lr = 0;
  long long sent_one = 0;
  long long plus = 0;
  long long minus = 0;
  long long l = 0;
  long long r = 0;
  long long one = 0;
  long long not_one = 0;

  long long survivors() const {
    return plus + minus + l + r + one + not_one;
  }
  long long sent_total() const { return sent_pm + sent_lr + sent_one; }
};

// stream labels the bin so per-bin substreams are independent and the whole
// run is reproducible regardless of evaluation order.
DetectorCounts sample_counts(const PointerProbs& probs, double success_prob,
                             const ShotPlan& plan, std::uint64_t stream);

struct CountReconstruction {
  cplx readout{};        // k estimate from empirical frequencies
  double se_real = 0.0;  // delta-method standard errors
  double se_imag = 0.0;
  bool missing = false;  // a setting recorded no post-selected photons
};

CountReconstruction reconstruct_from_counts(const DetectorCounts& counts,
                                            const ShotPlan& plan,
                                            const Scheme& scheme);

// Scheme a MeasurementRecord was produced with, reconstructed from its tag
// and calibrated correction coefficient.
Scheme record_scheme(const MeasurementRecord& record);

// Samples every bin of a run and reconstructs from the counts.
std::vector<CountReconstruction> sample_and_reconstruct(
    const MeasurementRecord& record, const ShotPlan& plan);

}  // namespace dirmeas
