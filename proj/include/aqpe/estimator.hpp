// Copyright 2026 The aqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aqpe/circuit.hpp"
#include "aqpe/simulator.hpp"

namespace aqpe {

enum class PostSelectMode { kRaw, kParity, kHfProjection };
std::string_view to_string(PostSelectMode m);
/// Accepts "raw", "parity", "hf" and "hf_projection".
PostSelectMode parse_post_select_mode(std::string_view text);
inline constexpr PostSelectMode kAllModes[] = {
    PostSelectMode::kRaw, PostSelectMode::kParity,
    PostSelectMode::kHfProjection};

/// Weighted sums of direction-adapted, attenuation-corrected ancilla values
/// for one circuit. Weights are shot counts or Born probabilities.
struct BranchTally {
  double sum = 0.0;
  double sum_sq = 0.0;
  double kept = 0.0;
  double total = 0.0;

  void add(double value, double weight, bool keep);
  BranchTally& operator+=(const BranchTally& o);
};

/// Tallies of the two circuits of one stitched pair.
struct PairTally {
  std::size_t index = 0;
  BranchTally plus;
  BranchTally minus;
};

/// Value of one record after post-selection; false if discarded.
bool select(const ShotRecord& r, PostSelectMode mode,
            const OccupationProfile& profile, double& value);

/// Groups records by circuit index. `meta` is indexed by pair index and
/// supplies the attenuation; branch and direction come from the records.
std::vector<PairTally> tally_shots(const std::vector<ShotRecord>& records,
                                   PostSelectMode mode,
                                   const OccupationProfile& profile,
                                   const std::vector<CircuitMetadata>& meta);

/// Infinite-shot tallies from exact outcome statistics of both branches.
PairTally tally_outcomes(const CircuitOutcome& plus,
                         const CircuitMetadata& plus_meta,
                         const CircuitOutcome& minus,
                         const CircuitMetadata& minus_meta,
                         PostSelectMode mode,
                         const OccupationProfile& profile);

struct RhoEstimate {
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  double se_plus = 0.0;
  double se_minus = 0.0;
  /// Covariance of the two estimates (shared draws make them correlated).
  double cov = 0.0;
  double kept = 0.0;
  double discarded = 0.0;
  PostSelectMode mode = PostSelectMode::kRaw;
  std::vector<PairTally> pairs;
};

/// Pools tallies. Errors are cluster-robust over pairs. Throws
/// kEmptyAfterSelection when a branch keeps nothing.
RhoEstimate pool(std::vector<PairTally> pairs, PostSelectMode mode);

RhoEstimate reduce_shots(const std::vector<ShotRecord>& records,
                         PostSelectMode mode, const OccupationProfile& profile,
                         const std::vector<CircuitMetadata>& meta);

struct EnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double se_delta = 0.0;
  double se_bootstrap = 0.0;
  PostSelectMode mode = PostSelectMode::kRaw;
  std::size_t n_estimates = 0;
  double f_plus = 1.0;
  double f_minus = 1.0;
  /// |value - e_guess| is within 5% of the pi / (2 s) limit.
  bool window_saturated = false;
};

/// The arctan combination of the two ancilla expectations.
double arctan_energy(double rho_plus, double rho_minus,
                     const TrialEnergies& trial);

struct EstimateOptions {
  std::size_t bootstrap_resamples = 10000;
  std::uint64_t bootstrap_seed = 0x626f6f74;
};

EnergyEstimate estimate_energy(const RhoEstimate& rho,
                               const TrialEnergies& trial,
                               const EstimateOptions& opts = {});

struct CurvePoint {
  std::size_t i = 0;
  double energy = 0.0;
  double se = 0.0;
};

/// E_i from the pooled tallies of pairs 1..i. Points where the ratio is
/// undefined carry NaN.
std::vector<CurvePoint> accumulate_curve(const std::vector<PairTally>& pairs,
                                         const TrialEnergies& trial);
/// CSV "i,energy_error,se" relative to `e_ref`.
std::string curve_csv(const std::vector<CurvePoint>& curve, double e_ref);

struct DampingFactors {
  double f_plus = 1.0;
  double f_minus = 1.0;
  double se_plus = 0.0;
  double se_minus = 0.0;
};

/// Ratios of noisy to noiseless expectations. Throws kDivisionByNearZero when
/// a noiseless value is below 1e-6 in magnitude.
DampingFactors damping_diagnostics(const RhoEstimate& noisy,
                                   const RhoEstimate& noiseless);

/// Per-qubit outcome counts. Index q < L is physical qubit q (leftmost 0);
/// index L is the ancilla readout bit.
struct MeasurementStats {
  std::size_t qubits = 0;
  std::size_t shots = 0;
  std::size_t repetitions = 1;
  std::vector<std::size_t> zeros;
  std::vector<std::size_t> ones;

  double mean_ones(std::size_t q) const;
  double mean_zeros(std::size_t q) const;
  /// Fraction of ones minus fraction of zeros.
  double imbalance(std::size_t q) const;
  /// Average imbalance over the physical qubits.
  double physical_imbalance() const;
  MeasurementStats& operator+=(const MeasurementStats& o);
};

MeasurementStats measurement_stats(const std::vector<ShotRecord>& records,
                                   std::size_t qubits,
                                   std::size_t repetitions = 1);
/// CSV "qubit,zeros,ones,mean_zeros,mean_ones"; the ancilla row is labelled
/// "ancilla".
std::string stats_csv(const MeasurementStats& s);

}  // namespace aqpe
