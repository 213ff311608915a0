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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aqpe/error.hpp"
#include "aqpe/estimator.hpp"
#include "aqpe/pipeline.hpp"
#include "test_util.hpp"

namespace aqpe {
namespace {

const OccupationProfile& profile() {
  static const auto p = OccupationProfile::from(BasisState::parse("110000"));
  return p;
}

ShotRecord record(int y, std::uint64_t bits, std::size_t index,
                  TrialBranch branch, int direction = 1) {
  ShotRecord r;
  r.ancilla_y = y;
  r.ancilla_bit = y > 0 ? 1 : 0;
  r.physical_bits = bits;
  r.circuit_index = index;
  r.branch = branch;
  r.direction_sign = direction;
  return r;
}

std::vector<CircuitMetadata> unit_meta(std::size_t n) {
  std::vector<CircuitMetadata> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i].index = i;
  return m;
}

PairTally pair_with(double rp, double rm, std::size_t index = 0) {
  PairTally p;
  p.index = index;
  p.plus.add(rp, 1.0, true);
  p.minus.add(rm, 1.0, true);
  return p;
}

constexpr std::uint64_t kHf = 0b110000;

TEST(PostSelectMode, ParsesNames) {
  EXPECT_EQ(parse_post_select_mode("raw"), PostSelectMode::kRaw);
  EXPECT_EQ(parse_post_select_mode("parity"), PostSelectMode::kParity);
  EXPECT_EQ(parse_post_select_mode("hf_projection"), PostSelectMode::kHfProjection);
  EXPECT_EQ(parse_post_select_mode("hf"), PostSelectMode::kHfProjection);
  EXPECT_THROW(parse_post_select_mode("all"), Error);
}

TEST(Select, ModesActAsDocumented) {
  double v = 0;
  // HF string: kept unmodified by every mode.
  for (auto m : kAllModes) {
    EXPECT_TRUE(select(record(1, kHf, 0, TrialBranch::kPlus), m, profile(), v));
    EXPECT_EQ(v, 1.0);
  }
  // Same parity, different string: projected to zero under HF projection.
  const auto other = record(-1, 0b100100, 0, TrialBranch::kPlus);
  EXPECT_TRUE(select(other, PostSelectMode::kParity, profile(), v));
  EXPECT_EQ(v, -1.0);
  EXPECT_TRUE(select(other, PostSelectMode::kHfProjection, profile(), v));
  EXPECT_EQ(v, 0.0);
  // Odd parity: discarded by parity and HF projection, kept by raw.
  const auto odd = record(1, 0b100000, 0, TrialBranch::kPlus);
  EXPECT_TRUE(select(odd, PostSelectMode::kRaw, profile(), v));
  EXPECT_FALSE(select(odd, PostSelectMode::kParity, profile(), v));
  EXPECT_FALSE(select(odd, PostSelectMode::kHfProjection, profile(), v));
  // Direction sign multiplies the value.
  EXPECT_TRUE(select(record(1, kHf, 0, TrialBranch::kPlus, -1),
                     PostSelectMode::kRaw, profile(), v));
  EXPECT_EQ(v, -1.0);
}

TEST(ReduceShots, MeansCountsAndAttenuation) {
  std::vector<ShotRecord> r{
      record(1, kHf, 0, TrialBranch::kPlus),  record(1, kHf, 0, TrialBranch::kPlus),
      record(-1, kHf, 0, TrialBranch::kPlus), record(1, 0b100000, 0, TrialBranch::kPlus),
      record(-1, kHf, 0, TrialBranch::kMinus), record(-1, kHf, 0, TrialBranch::kMinus),
  };
  auto meta = unit_meta(1);
  meta[0].lambda_a = 0.5;
  const auto raw = reduce_shots(r, PostSelectMode::kRaw, profile(), meta);
  EXPECT_DOUBLE_EQ(raw.rho_plus, 0.5 / 0.5);
  EXPECT_DOUBLE_EQ(raw.rho_minus, -2.0);
  EXPECT_EQ(raw.kept, 6);
  EXPECT_EQ(raw.discarded, 0);
  const auto par = reduce_shots(r, PostSelectMode::kParity, profile(), meta);
  EXPECT_DOUBLE_EQ(par.rho_plus, (1.0 / 3.0) / 0.5);
  EXPECT_EQ(par.discarded, 1);
}

TEST(ReduceShots, EmptyAfterSelection) {
  std::vector<ShotRecord> r{record(1, 0b100000, 0, TrialBranch::kPlus),
                            record(1, kHf, 0, TrialBranch::kMinus)};
  try {
    reduce_shots(r, PostSelectMode::kParity, profile(), unit_meta(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAfterSelection);
  }
}

TEST(ReduceShots, ClusterErrorMatchesPairSpread) {
  // Equal-size clusters: the ratio estimator reduces to the standard error
  // of the per-pair means.
  Rng rng(3);
  std::vector<PairTally> pairs;
  std::vector<double> means;
  for (std::size_t i = 0; i < 50; ++i) {
    PairTally p;
    p.index = i;
    double m = 0;
    for (int k = 0; k < 4; ++k) {
      const double v = 2 * rng.uniform() - 1;
      p.plus.add(v, 1.0, true);
      p.minus.add(-v, 1.0, true);
      m += v / 4;
    }
    means.push_back(m);
    pairs.push_back(p);
  }
  const auto r = pool(pairs, PostSelectMode::kRaw);
  double mean = 0, var = 0;
  for (double m : means) mean += m / 50;
  for (double m : means) var += (m - mean) * (m - mean) / 49;
  EXPECT_NEAR(r.rho_plus, mean, 1e-12);
  EXPECT_NEAR(r.se_plus, std::sqrt(var / 50), 1e-12);
  EXPECT_NEAR(r.cov, -r.se_plus * r.se_plus, 1e-12);
}

TEST(ReduceShots, ShotsConvergeToExactTallies) {
  const auto& p = test::h3plus_problem();
  EnsembleSpec spec;
  spec.T = 2.0;
  const auto pair = build_pair(p.split, test::default_trial(), p.profile, spec, 0);
  const auto op = run_exact(pair.plus);
  const auto om = run_exact(pair.minus);
  Rng rng(5);
  const std::size_t shots = 40000;
  auto records = op.sample(rng, shots, pair.plus.meta);
  const auto more = om.sample(rng, shots, pair.minus.meta);
  records.insert(records.end(), more.begin(), more.end());
  std::vector<CircuitMetadata> meta{pair.plus.meta};
  for (auto mode : kAllModes) {
    const auto exact = pool({tally_outcomes(op, pair.plus.meta, om, pair.minus.meta,
                                            mode, p.profile)},
                            mode);
    const auto sampled = reduce_shots(records, mode, p.profile, meta);
    EXPECT_NEAR(sampled.rho_plus, exact.rho_plus, 4 * sampled.se_plus + 1e-9);
    EXPECT_NEAR(sampled.rho_minus, exact.rho_minus, 4 * sampled.se_minus + 1e-9);
  }
}

TEST(ArctanEnergy, EigenstateIdentity) {
  Rng rng(20);
  for (int k = 0; k < 20; ++k) {
    const double s = 1 + 19 * rng.uniform();
    const double eps = 0.01 + 0.05 * rng.uniform();
    const double guess = -1.3 + 0.1 * rng.uniform();
    // Keep |s (E - guess)| < pi / 2 so arctan recovers it.
    const double e = guess + (rng.uniform() - 0.5) * 0.9 * std::numbers::pi / s;
    const TrialEnergies t{guess, eps, s};
    const double rp = std::sin(s * (t.e_plus() - e));
    const double rm = std::sin(s * (t.e_minus() - e));
    EXPECT_NEAR(arctan_energy(rp, rm, t), e, 1e-12);
  }
}

TEST(ArctanEnergy, ScaleInvariantAndSymmetric) {
  const TrialEnergies t{-1.27, 0.04, 10};
  const double v = arctan_energy(0.44, -0.22, t);
  for (double g : {0.9, 0.5, 0.1}) {
    EXPECT_NEAR(arctan_energy(g * 0.44, g * -0.22, t), v, 1e-14);
  }
  EXPECT_DOUBLE_EQ(arctan_energy(0.3, -0.3, t), t.e_guess);
  try {
    arctan_energy(0.2, 0.2, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateRatio);
  }
}

TEST(EstimateEnergy, ErrorsFromPairs) {
  Rng rng(9);
  std::vector<PairTally> pairs;
  for (std::size_t i = 0; i < 200; ++i) {
    pairs.push_back(pair_with(0.44 + 0.3 * (rng.uniform() - 0.5),
                              -0.22 + 0.3 * (rng.uniform() - 0.5), i));
  }
  const auto rho = pool(pairs, PostSelectMode::kRaw);
  const TrialEnergies t{-1.27, 0.04, 10};
  const auto e = estimate_energy(rho, t, {2000, 1});
  EXPECT_DOUBLE_EQ(e.value, arctan_energy(rho.rho_plus, rho.rho_minus, t));
  EXPECT_GT(e.std_error, 0.0);
  EXPECT_EQ(e.n_estimates, 200u);
  // Delta method and bootstrap agree for a smooth estimator at this size.
  EXPECT_NEAR(e.se_bootstrap / e.se_delta, 1.0, 0.15);
  EXPECT_EQ(e.std_error, std::max(e.se_delta, e.se_bootstrap));
  EXPECT_FALSE(e.window_saturated);
}

TEST(AccumulateCurve, SingleCircuitAndOrderFreeFinalPoint) {
  const TrialEnergies t{-1.27, 0.04, 10};
  const auto one = accumulate_curve({pair_with(0.4, -0.2)}, t);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0].energy, arctan_energy(0.4, -0.2, t));

  Rng rng(2);
  std::vector<PairTally> pairs;
  for (std::size_t i = 0; i < 30; ++i) {
    pairs.push_back(pair_with(2 * rng.uniform() - 0.5, 2 * rng.uniform() - 1.5, i));
  }
  const auto a = accumulate_curve(pairs, t);
  for (std::size_t i = pairs.size() - 1; i > 0; --i) {
    std::swap(pairs[i], pairs[rng.below(i + 1)]);
  }
  const auto b = accumulate_curve(pairs, t);
  EXPECT_NEAR(a.back().energy, b.back().energy, 1e-12);
  EXPECT_NEAR(a.back().se, b.back().se, 1e-12);
  bool differs = false;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    differs |= std::abs(a[i].energy - b[i].energy) > 1e-9;
  }
  EXPECT_TRUE(differs);
  // The last point equals the pooled estimate.
  const auto rho = pool(pairs, PostSelectMode::kRaw);
  EXPECT_NEAR(a.back().energy, arctan_energy(rho.rho_plus, rho.rho_minus, t), 1e-12);
  EXPECT_NEAR(a.back().se, estimate_energy(rho, t, {0, 0}).se_delta, 1e-12);
}

TEST(AccumulateCurve, CsvFormat) {
  const TrialEnergies t{-1.0, 0.04, 10};
  const auto csv = curve_csv(accumulate_curve({pair_with(0.3, -0.3)}, t), -1.0);
  EXPECT_EQ(csv, "i,energy_error,se\n1,0,0\n");
}

TEST(Damping, IdentityAndHardwareValues) {
  RhoEstimate ref;
  ref.rho_plus = 0.441;
  ref.rho_minus = -0.220;
  ref.se_plus = ref.se_minus = 0.019;
  const auto same = damping_diagnostics(ref, ref);
  EXPECT_DOUBLE_EQ(same.f_plus, 1.0);
  EXPECT_DOUBLE_EQ(same.f_minus, 1.0);
  RhoEstimate hw;
  hw.rho_plus = 0.302;
  hw.rho_minus = -0.007;
  hw.se_plus = 0.022;
  hw.se_minus = 0.023;
  const auto d = damping_diagnostics(hw, ref);
  EXPECT_NEAR(d.f_plus, 0.68, 0.01);
  EXPECT_NEAR(d.f_minus, 0.03, 0.005);
  EXPECT_GT(d.se_plus, 0.0);
  ref.rho_minus = 1e-7;
  try {
    damping_diagnostics(hw, ref);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisionByNearZero);
  }
}

TEST(MeasurementStats, EmptyAndCounts) {
  const auto empty = measurement_stats({}, 3);
  EXPECT_EQ(empty.shots, 0u);
  for (std::size_t q = 0; q <= 3; ++q) {
    EXPECT_EQ(empty.ones[q], 0u);
    EXPECT_EQ(empty.zeros[q], 0u);
  }
  std::vector<ShotRecord> r{record(1, 0b100, 0, TrialBranch::kPlus),
                            record(-1, 0b101, 0, TrialBranch::kPlus)};
  const auto s = measurement_stats(r, 3, 2);
  EXPECT_EQ(s.ones[0], 2u);
  EXPECT_EQ(s.ones[1], 0u);
  EXPECT_EQ(s.ones[2], 1u);
  EXPECT_EQ(s.ones[3], 1u);
  EXPECT_DOUBLE_EQ(s.mean_ones(0), 1.0);
  EXPECT_DOUBLE_EQ(s.imbalance(0), 1.0);
  EXPECT_DOUBLE_EQ(s.imbalance(2), 0.0);
  EXPECT_DOUBLE_EQ(s.physical_imbalance(), 0.0);
  EXPECT_EQ(stats_csv(s),
            "qubit,zeros,ones,mean_zeros,mean_ones\n"
            "1,0,2,0,1\n2,2,0,1,0\n3,1,1,0.5,0.5\nancilla,1,1,0.5,0.5\n");
  auto sum = s;
  sum += s;
  EXPECT_EQ(sum.shots, 4u);
  EXPECT_EQ(sum.repetitions, 4u);
  EXPECT_THROW(sum += measurement_stats({}, 2), Error);
}

}  // namespace
}  // namespace aqpe
