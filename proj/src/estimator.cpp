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

#include "aqpe/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "aqpe/error.hpp"
#include "aqpe/rng.hpp"

namespace aqpe {

std::string_view to_string(PostSelectMode m) {
  switch (m) {
    case PostSelectMode::kRaw:
      return "raw";
    case PostSelectMode::kParity:
      return "parity";
    case PostSelectMode::kHfProjection:
      return "hf";
  }
  return "raw";
}

PostSelectMode parse_post_select_mode(std::string_view text) {
  if (text == "raw") return PostSelectMode::kRaw;
  if (text == "parity") return PostSelectMode::kParity;
  if (text == "hf" || text == "hf_projection") {
    return PostSelectMode::kHfProjection;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown post-selection mode '" + std::string(text) + "'");
}

void BranchTally::add(double value, double weight, bool keep) {
  total += weight;
  if (!keep) return;
  kept += weight;
  sum += weight * value;
  sum_sq += weight * value * value;
}

BranchTally& BranchTally::operator+=(const BranchTally& o) {
  sum += o.sum;
  sum_sq += o.sum_sq;
  kept += o.kept;
  total += o.total;
  return *this;
}

namespace {

bool parity_ok(std::uint64_t bits, const OccupationProfile& profile) {
  const int eta = (std::popcount(bits) % 2 == 0) ? 1 : -1;
  return eta == profile.eta;
}

// Raw value and selection for a (bit, physical string) outcome.
bool select_outcome(int ancilla_y, int direction_sign, std::uint64_t bits,
                    PostSelectMode mode, const OccupationProfile& profile,
                    double& value) {
  value = static_cast<double>(direction_sign * ancilla_y);
  if (mode == PostSelectMode::kRaw) return true;
  if (!parity_ok(bits, profile)) return false;
  if (mode == PostSelectMode::kHfProjection && bits != profile.hf.bits) {
    value = 0.0;
  }
  return true;
}

BranchTally& branch_of(PairTally& p, TrialBranch b) {
  return b == TrialBranch::kPlus ? p.plus : p.minus;
}

void tally_outcome(const CircuitOutcome& o, const CircuitMetadata& meta,
                   PostSelectMode mode, const OccupationProfile& profile,
                   BranchTally& t) {
  const double scale = 1.0 / meta.attenuation();
  for (std::uint64_t b = 0; b < o.prob.size(); ++b) {
    const double p1 = std::clamp(o.p_one(b), 0.0, o.prob[b]);
    const double p0 = o.prob[b] - p1;
    for (int bit : {0, 1}) {
      const double w = bit ? p1 : p0;
      if (w <= 0.0) continue;
      double v = 0.0;
      const bool keep = select_outcome(o.basis_sign * (2 * bit - 1),
                                       meta.direction_sign, b, mode, profile, v);
      t.add(v * scale, w, keep);
    }
  }
}

}  // namespace

bool select(const ShotRecord& r, PostSelectMode mode,
            const OccupationProfile& profile, double& value) {
  return select_outcome(r.ancilla_y, r.direction_sign, r.physical_bits, mode,
                        profile, value);
}

std::vector<PairTally> tally_shots(const std::vector<ShotRecord>& records,
                                   PostSelectMode mode,
                                   const OccupationProfile& profile,
                                   const std::vector<CircuitMetadata>& meta) {
  std::map<std::size_t, PairTally> by_index;
  for (const auto& r : records) {
    if (r.circuit_index >= meta.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record refers to circuit " + std::to_string(r.circuit_index) +
                      " without metadata");
    }
    auto& pair = by_index[r.circuit_index];
    pair.index = r.circuit_index;
    double v = 0.0;
    const bool keep = select(r, mode, profile, v);
    branch_of(pair, r.branch).add(v / meta[r.circuit_index].attenuation(), 1.0,
                                  keep);
  }
  std::vector<PairTally> out;
  out.reserve(by_index.size());
  for (auto& [i, p] : by_index) out.push_back(p);
  return out;
}

PairTally tally_outcomes(const CircuitOutcome& plus,
                         const CircuitMetadata& plus_meta,
                         const CircuitOutcome& minus,
                         const CircuitMetadata& minus_meta,
                         PostSelectMode mode,
                         const OccupationProfile& profile) {
  PairTally p;
  p.index = plus_meta.index;
  tally_outcome(plus, plus_meta, mode, profile, p.plus);
  tally_outcome(minus, minus_meta, mode, profile, p.minus);
  return p;
}

RhoEstimate pool(std::vector<PairTally> pairs, PostSelectMode mode) {
  RhoEstimate r;
  r.mode = mode;
  BranchTally plus;
  BranchTally minus;
  for (const auto& p : pairs) {
    plus += p.plus;
    minus += p.minus;
  }
  if (plus.kept <= 0.0 || minus.kept <= 0.0) {
    throw Error(ErrorCode::kEmptyAfterSelection,
                std::string("post-selection (") + std::string(to_string(mode)) +
                    ") left a branch without records");
  }
  r.rho_plus = plus.sum / plus.kept;
  r.rho_minus = minus.sum / minus.kept;
  r.kept = plus.kept + minus.kept;
  r.discarded = plus.total + minus.total - r.kept;
  // Ratio-estimator variance with pairs as clusters.
  const double n = static_cast<double>(pairs.size());
  if (pairs.size() >= 2) {
    double vp = 0.0;
    double vm = 0.0;
    double c = 0.0;
    for (const auto& p : pairs) {
      const double dp = p.plus.sum - r.rho_plus * p.plus.kept;
      const double dm = p.minus.sum - r.rho_minus * p.minus.kept;
      vp += dp * dp;
      vm += dm * dm;
      c += dp * dm;
    }
    const double k = n / (n - 1.0);
    r.se_plus = std::sqrt(k * vp) / plus.kept;
    r.se_minus = std::sqrt(k * vm) / minus.kept;
    r.cov = k * c / (plus.kept * minus.kept);
  } else {
    // Single pair: per-record spread.
    auto se = [](const BranchTally& t, double mean) {
      if (t.kept <= 1.0) return 0.0;
      const double var = std::max(0.0, t.sum_sq / t.kept - mean * mean);
      return std::sqrt(var / t.kept);
    };
    r.se_plus = se(plus, r.rho_plus);
    r.se_minus = se(minus, r.rho_minus);
  }
  r.pairs = std::move(pairs);
  return r;
}

RhoEstimate reduce_shots(const std::vector<ShotRecord>& records,
                         PostSelectMode mode, const OccupationProfile& profile,
                         const std::vector<CircuitMetadata>& meta) {
  return pool(tally_shots(records, mode, profile, meta), mode);
}

double arctan_energy(double rho_plus, double rho_minus,
                     const TrialEnergies& trial) {
  const double den = rho_minus - rho_plus;
  if (std::abs(den) < 1e-15) {
    throw Error(ErrorCode::kDegenerateRatio,
                "rho_plus and rho_minus coincide; the energy ratio is undefined");
  }
  const double t = std::tan(trial.s * trial.epsilon);
  return trial.e_guess + std::atan(t * (rho_plus + rho_minus) / den) / trial.s;
}

namespace {

double delta_se(double rp, double rm, double vp, double vm, double cov,
                const TrialEnergies& trial) {
  const double den = rm - rp;
  const double t = std::tan(trial.s * trial.epsilon);
  const double g = t * (rp + rm) / den;
  const double dg = t / (trial.s * (1.0 + g * g) * den * den);
  const double dp = dg * 2.0 * rm;
  const double dm = -dg * 2.0 * rp;
  return std::sqrt(std::max(0.0, dp * dp * vp + dm * dm * vm + 2 * dp * dm * cov));
}

}  // namespace

EnergyEstimate estimate_energy(const RhoEstimate& rho,
                               const TrialEnergies& trial,
                               const EstimateOptions& opts) {
  EnergyEstimate e;
  e.mode = rho.mode;
  e.n_estimates = rho.pairs.size();
  e.value = arctan_energy(rho.rho_plus, rho.rho_minus, trial);
  e.se_delta = delta_se(rho.rho_plus, rho.rho_minus, rho.se_plus * rho.se_plus,
                        rho.se_minus * rho.se_minus, rho.cov, trial);
  const std::size_t n = rho.pairs.size();
  if (n >= 2 && opts.bootstrap_resamples > 1) {
    Rng rng(opts.bootstrap_seed);
    double s1 = 0.0;
    double s2 = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < opts.bootstrap_resamples; ++k) {
      BranchTally plus;
      BranchTally minus;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& p = rho.pairs[rng.below(n)];
        plus += p.plus;
        minus += p.minus;
      }
      if (plus.kept <= 0.0 || minus.kept <= 0.0) continue;
      const double rp = plus.sum / plus.kept;
      const double rm = minus.sum / minus.kept;
      if (std::abs(rm - rp) < 1e-15) continue;
      const double v = arctan_energy(rp, rm, trial);
      s1 += v;
      s2 += v * v;
      ++used;
    }
    if (used >= 2) {
      const double mean = s1 / static_cast<double>(used);
      const double var = (s2 - static_cast<double>(used) * mean * mean) /
                         static_cast<double>(used - 1);
      e.se_bootstrap = std::sqrt(std::max(0.0, var));
    }
  }
  e.std_error = std::max(e.se_delta, e.se_bootstrap);
  const double limit = std::numbers::pi / (2.0 * trial.s);
  e.window_saturated = std::abs(e.value - trial.e_guess) > 0.95 * limit;
  return e;
}

std::vector<CurvePoint> accumulate_curve(const std::vector<PairTally>& pairs,
                                         const TrialEnergies& trial) {
  std::vector<CurvePoint> out;
  out.reserve(pairs.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // Running cluster sums so each point costs O(1) beyond the first pass.
  BranchTally plus;
  BranchTally minus;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    plus += pairs[i].plus;
    minus += pairs[i].minus;
    CurvePoint pt{i + 1, nan, nan};
    if (plus.kept > 0.0 && minus.kept > 0.0) {
      const double rp = plus.sum / plus.kept;
      const double rm = minus.sum / minus.kept;
      if (std::abs(rm - rp) >= 1e-15) {
        pt.energy = arctan_energy(rp, rm, trial);
        if (i >= 1) {
          double vp = 0.0;
          double vm = 0.0;
          double c = 0.0;
          for (std::size_t j = 0; j <= i; ++j) {
            const double dp = pairs[j].plus.sum - rp * pairs[j].plus.kept;
            const double dm = pairs[j].minus.sum - rm * pairs[j].minus.kept;
            vp += dp * dp;
            vm += dm * dm;
            c += dp * dm;
          }
          const double k = static_cast<double>(i + 1) / static_cast<double>(i);
          pt.se = delta_se(rp, rm, k * vp / (plus.kept * plus.kept),
                           k * vm / (minus.kept * minus.kept),
                           k * c / (plus.kept * minus.kept), trial);
        } else {
          pt.se = 0.0;
        }
      }
    }
    out.push_back(pt);
  }
  return out;
}

std::string curve_csv(const std::vector<CurvePoint>& curve, double e_ref) {
  std::ostringstream os;
  os.precision(10);
  os << "i,energy_error,se\n";
  for (const auto& p : curve) {
    os << p.i << ',' << (p.energy - e_ref) << ',' << p.se << '\n';
  }
  return os.str();
}

DampingFactors damping_diagnostics(const RhoEstimate& noisy,
                                   const RhoEstimate& noiseless) {
  if (std::abs(noiseless.rho_plus) < 1e-6 ||
      std::abs(noiseless.rho_minus) < 1e-6) {
    throw Error(ErrorCode::kDivisionByNearZero,
                "noiseless reference expectation is too close to zero");
  }
  auto ratio_se = [](double a, double sa, double b, double sb) {
    const double r = a / b;
    return std::abs(r) * std::sqrt((a != 0 ? (sa / a) * (sa / a) : 0.0) +
                                   (sb / b) * (sb / b));
  };
  DampingFactors d;
  d.f_plus = noisy.rho_plus / noiseless.rho_plus;
  d.f_minus = noisy.rho_minus / noiseless.rho_minus;
  d.se_plus = ratio_se(noisy.rho_plus, noisy.se_plus, noiseless.rho_plus,
                       noiseless.se_plus);
  d.se_minus = ratio_se(noisy.rho_minus, noisy.se_minus, noiseless.rho_minus,
                        noiseless.se_minus);
  return d;
}

double MeasurementStats::mean_ones(std::size_t q) const {
  return static_cast<double>(ones[q]) / static_cast<double>(repetitions);
}

double MeasurementStats::mean_zeros(std::size_t q) const {
  return static_cast<double>(zeros[q]) / static_cast<double>(repetitions);
}

double MeasurementStats::imbalance(std::size_t q) const {
  const double n = static_cast<double>(ones[q] + zeros[q]);
  if (n == 0) return 0.0;
  return (static_cast<double>(ones[q]) - static_cast<double>(zeros[q])) / n;
}

double MeasurementStats::physical_imbalance() const {
  if (qubits == 0) return 0.0;
  double s = 0.0;
  for (std::size_t q = 0; q < qubits; ++q) s += imbalance(q);
  return s / static_cast<double>(qubits);
}

MeasurementStats& MeasurementStats::operator+=(const MeasurementStats& o) {
  if (zeros.empty()) {
    *this = o;
    return *this;
  }
  if (o.qubits != qubits) {
    throw Error(ErrorCode::kMismatchedQubitCount,
                "cannot combine statistics of different registers");
  }
  shots += o.shots;
  repetitions += o.repetitions;
  for (std::size_t q = 0; q <= qubits; ++q) {
    zeros[q] += o.zeros[q];
    ones[q] += o.ones[q];
  }
  return *this;
}

MeasurementStats measurement_stats(const std::vector<ShotRecord>& records,
                                   std::size_t qubits,
                                   std::size_t repetitions) {
  MeasurementStats s;
  s.qubits = qubits;
  s.repetitions = std::max<std::size_t>(1, repetitions);
  s.zeros.assign(qubits + 1, 0);
  s.ones.assign(qubits + 1, 0);
  s.shots = records.size();
  for (const auto& r : records) {
    for (std::size_t q = 0; q < qubits; ++q) {
      if ((r.physical_bits >> (qubits - 1 - q)) & 1) {
        ++s.ones[q];
      } else {
        ++s.zeros[q];
      }
    }
    if (r.ancilla_bit) {
      ++s.ones[qubits];
    } else {
      ++s.zeros[qubits];
    }
  }
  return s;
}

std::string stats_csv(const MeasurementStats& s) {
  std::ostringstream os;
  os.precision(10);
  os << "qubit,zeros,ones,mean_zeros,mean_ones\n";
  for (std::size_t q = 0; q <= s.qubits; ++q) {
    if (q == s.qubits) {
      os << "ancilla";
    } else {
      os << q + 1;
    }
    os << ',' << s.zeros[q] << ',' << s.ones[q] << ',' << s.mean_zeros(q)
       << ',' << s.mean_ones(q) << '\n';
  }
  return os.str();
}

}  // namespace aqpe
