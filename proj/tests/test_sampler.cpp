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

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>

#include "aqpe/dense.hpp"
#include "aqpe/error.hpp"
#include "aqpe/sampler.hpp"
#include "aqpe/shift.hpp"
#include "aqpe/simulator.hpp"
#include "test_util.hpp"

namespace aqpe {
namespace {

double op_norm(const CMatrix& m) {
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

TEST(Schedule, LinearAndConstant) {
  const auto lin = SweepSchedule::linear();
  EXPECT_EQ(lin.w(0.0), 0.0);
  EXPECT_EQ(lin.w(1.0), 1.0);
  EXPECT_EQ(lin.zeta(), 0.5);
  const auto con = SweepSchedule::constant();
  EXPECT_EQ(con.w(0.3), 1.0);
  EXPECT_EQ(con.zeta(), 1.0);
  for (int i = 0; i <= 1000; ++i) {
    const double u = i / 1000.0;
    EXPECT_NEAR(lin.z(u), 0.5 * u * u, 1e-15);
    EXPECT_NEAR(lin.z_inverse(lin.z(u)), u, 1e-12);
    EXPECT_NEAR(con.z_inverse(con.z(u)), u, 1e-12);
  }
}

TEST(SamplerConfig, RejectsBadAngle) {
  SamplerConfig c;
  c.tau = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c.tau = 1.6;
  EXPECT_THROW(c.validate(), Error);
  c.tau = 0.1;
  c.duration = -1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Attenuation, Values) {
  EXPECT_NEAR(attenuation_factor(0.9337, 0.5, 8.0, 1e-12), 1.0, 1e-10);
  EXPECT_NEAR(attenuation_factor(0.9337, 0.5, 8.0, 0.1), 0.830, 0.001);
  EXPECT_NEAR(attenuation_factor(0.9337, 1.0, 10.0, 0.1), 0.628, 0.002);
  EXPECT_DOUBLE_EQ(attenuation_factor(0.7, 0.5, 3.0, 0.2),
                   std::exp(-std::tan(0.1) * 0.5 * 3.0 * 0.7));
}

TEST(ExpectedTqg, FormulaAndReferenceValue) {
  // Weight-3 term costs 2 * 2 = 4 uncontrolled.
  const auto single = split(parse_hamiltonian("1.0 XXX"));
  const double tau = 0.3;
  EXPECT_NEAR(expected_tqg(single, SweepSchedule::constant(), 10 * std::sin(tau),
                           tau, {}, false),
              40.0, 1e-12);
  const auto s = split(test::h3plus());
  const double n1 = expected_tqg(s, SweepSchedule::linear(), 8, 0.1, {}, false);
  EXPECT_NEAR(n1, 198.3, 10.0);
  const double n2 = expected_tqg(s, SweepSchedule::linear(), 8, 0.05, {}, false);
  EXPECT_NEAR(n2 / n1, std::sin(0.1) / std::sin(0.05), 1e-12);
  EXPECT_NEAR(n2 / n1, 2.0, 0.01);
}

TEST(SampleEvolution, MeanEventCount) {
  const auto s = split(test::h3plus());
  SamplerConfig c;
  c.duration = 8;
  c.tau = 0.1;
  const double expected = 0.5 * 8 * s.mu_i / std::sin(0.1);
  EXPECT_NEAR(expected, 37.4, 0.1);
  double sum = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    c.seed = 99;
    c.stream = i;
    sum += sample_evolution(s, SweepSchedule::linear(), c).event_count();
  }
  const double se = std::sqrt(expected / draws);
  EXPECT_NEAR(sum / draws, expected, 3 * se);
}

TEST(SampleEvolution, InvariantsAndDeterminism) {
  const auto s = split(test::h3plus());
  SamplerConfig c;
  c.duration = 8;
  c.seed = 5;
  c.stream = 17;
  c.direction = Direction::kReverse;
  const auto a = sample_evolution(s, SweepSchedule::linear(), c);
  const auto b = sample_evolution(s, SweepSchedule::linear(), c);
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.attenuation, attenuation_factor(s.mu_i, 0.5, 8, 0.1));
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const auto& e = a.events[i];
    EXPECT_GT(e.time, 0.0);
    EXPECT_LT(e.time, 8.0);
    if (i > 0) {
      EXPECT_GT(e.time, a.events[i - 1].time);
    }
    const double coeff = s.h_i.terms()[e.term].coefficient;
    EXPECT_EQ(e.sign, (coeff < 0 ? -1 : 1) * -1);
  }
  c.stream = 18;
  EXPECT_NE(sample_evolution(s, SweepSchedule::linear(), c).events, a.events);
}

TEST(SampleEvolution, EmptyInteractionIsPureDiagonal) {
  const auto s = split(parse_hamiltonian("0.3\n0.5 ZI\n-0.25 IZ"));
  SamplerConfig c;
  c.duration = 1.7;
  const auto ev = sample_evolution(s, SweepSchedule::linear(), c);
  EXPECT_EQ(ev.event_count(), 0u);
  EXPECT_EQ(ev.attenuation, 1.0);
  const CMatrix u = evolution_unitary(ev, s);
  const CMatrix expected = hermitian_exp(to_dense(s.h_z), 1.7);
  EXPECT_LE((u - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SampleEvolution, PerTermCountsArePoisson) {
  const auto s = split(test::h3plus());
  SamplerConfig c;
  c.duration = 8;
  const int draws = 10000;
  const auto& terms = s.h_i.terms();
  std::vector<std::vector<int>> hist(terms.size());
  for (int i = 0; i < draws; ++i) {
    c.seed = 3;
    c.stream = i;
    const auto ev = sample_evolution(s, SweepSchedule::linear(), c);
    std::vector<int> counts(terms.size(), 0);
    for (const auto& e : ev.events) ++counts[e.term];
    for (std::size_t n = 0; n < terms.size(); ++n) {
      if (hist[n].size() <= static_cast<std::size_t>(counts[n])) {
        hist[n].resize(counts[n] + 1, 0);
      }
      ++hist[n][counts[n]];
    }
  }
  // Pool all terms into one chi-square statistic over bins with expected >= 5.
  double chi2 = 0;
  int dof = 0;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const double mean = std::abs(terms[n].coefficient) * 4 / std::sin(0.1);
    boost::math::poisson_distribution<> pois(mean);
    double tail_expected = draws;
    int tail_observed = draws;
    for (int k = 0;; ++k) {
      const double e = draws * boost::math::pdf(pois, k);
      if (e < 5 || tail_expected - e < 5) break;
      const int o = k < static_cast<int>(hist[n].size()) ? hist[n][k] : 0;
      chi2 += (o - e) * (o - e) / e;
      tail_expected -= e;
      tail_observed -= o;
      ++dof;
    }
    chi2 += (tail_observed - tail_expected) * (tail_observed - tail_expected) /
            tail_expected;
  }
  boost::math::chi_squared_distribution<> dist(dof);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 1e-3);
}

// Mean sampled unitary against lambda * A(T) from the ODE oracle.
struct Unbiasedness {
  double error;
  double lambda;
};

Unbiasedness mean_unitary_error(const SplitHamiltonian& s, Direction d,
                                int samples, std::uint64_t seed) {
  const double T = 1.0;
  SamplerConfig c;
  c.duration = T;
  c.tau = 0.3;
  c.seed = seed;
  c.direction = d;
  const auto dim = Eigen::Index{1} << s.qubit_count();
  CMatrix sum = CMatrix::Zero(dim, dim);
  double lambda = 1;
  for (int i = 0; i < samples; ++i) {
    c.stream = i;
    const auto ev = sample_evolution(s, SweepSchedule::linear(), c);
    lambda = ev.attenuation;
    sum += evolution_unitary(ev, s);
  }
  CMatrix a = exact_adiabatic_unitary(s, SweepSchedule::linear(), T, 1e-10);
  if (d == Direction::kReverse) a.adjointInPlace();
  return {op_norm(sum / samples - lambda * a), lambda};
}

TEST(SampleEvolution, UnbiasedOnTwoQubitToy) {
  Rng rng(13);
  const auto s = split(test::random_hamiltonian(2, rng, 0.7, 0.8));
  ASSERT_GT(s.mu_i, 0.0);
  const auto fwd = mean_unitary_error(s, Direction::kForward, 100000, 1);
  EXPECT_LT(fwd.lambda, 1.0);
  EXPECT_LE(fwd.error, 5e-3);
  const auto rev = mean_unitary_error(s, Direction::kReverse, 100000, 2);
  EXPECT_LE(rev.error, 5e-3);
}

TEST(Lower, ReverseIsAdjointOfForwardDraw) {
  const auto s = split(test::h3plus());
  SamplerConfig c;
  c.duration = 2;
  c.seed = 4;
  auto fwd = sample_evolution(s, SweepSchedule::linear(), c);
  auto rev = fwd;
  rev.config.direction = Direction::kReverse;
  for (auto& e : rev.events) e.sign = -e.sign;
  const CMatrix u = evolution_unitary(fwd, s);
  const CMatrix v = evolution_unitary(rev, s);
  EXPECT_LE((u.adjoint() - v).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace aqpe
