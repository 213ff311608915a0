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

#include <Eigen/Eigenvalues>

#include "aqpe/dense.hpp"
#include "aqpe/error.hpp"
#include "aqpe/jordan_wigner.hpp"
#include "aqpe/shift.hpp"
#include "aqpe/symmetry.hpp"
#include "test_util.hpp"

namespace aqpe {
namespace {

double mu_after(const PauliHamiltonian& h, const ShiftParams& p) {
  return split(apply_shift(h, p)).mu_i;
}

PauliHamiltonian random_number_conserving(Rng& rng) {
  IntegralTable t(2, SpinOrdering::kBlocked);
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = 2 * rng.uniform() - 1;
        t.one_body(s, i, j) = v;
        t.one_body(s, j, i) = v;
      }
    }
  }
  for (int s = 0; s < 2; ++s)
    for (int sp = 0; sp < 2; ++sp)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t l = 0; l < 2; ++l) {
              const double v = 0.3 * (2 * rng.uniform() - 1);
              t.two_body(s, sp, i, j, k, l) += v;
              t.two_body(sp, s, l, k, j, i) += v;
            }
  return jordan_wigner(t);
}

Eigen::VectorXd sector_spectrum(const PauliHamiltonian& h,
                                const std::vector<std::uint64_t>& basis) {
  const CMatrix m = to_dense(h);
  CMatrix sub(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) sub(i, j) = m(basis[i], basis[j]);
  return Eigen::SelfAdjointEigenSolver<CMatrix>(sub).eigenvalues();
}

TEST(Split, Definition) {
  const auto s = split(parse_hamiltonian("0.3 XX\n0.2 IZ"));
  ASSERT_EQ(s.h_z.size(), 1u);
  EXPECT_EQ(s.h_z.terms()[0].string.str(), "IZ");
  EXPECT_DOUBLE_EQ(s.mu_i, 0.3);
  const auto z = split(parse_hamiltonian("1.0\n0.5 ZI\n-0.2 IZ"));
  EXPECT_EQ(z.h_i.size(), 0u);
  EXPECT_EQ(z.mu_i, 0.0);
  EXPECT_EQ(z.h_z.identity_offset(), 1.0);
}

TEST(Split, ReproducesInputAndMuI) {
  const auto& h = test::h3plus();
  const auto s = split(h);
  EXPECT_NEAR(s.mu_i, 0.9337, 0.0010);
  EXPECT_EQ(s.full().canonicalized(), h.canonicalized());
  for (const auto& t : s.h_z.terms()) EXPECT_TRUE(is_single_z(t.string));
  for (const auto& t : s.h_i.terms()) EXPECT_FALSE(is_single_z(t.string));
}

TEST(ApplyShift, ZeroAlphaIsIdentity) {
  const auto& h = test::h3plus();
  ShiftParams p;
  p.sector = {1, 1};
  EXPECT_EQ(apply_shift(h, p).canonicalized(), h.canonicalized());
}

TEST(ApplyShift, PreservesSectorSpectrum) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_number_conserving(rng);
    const BasisState ref{0b1010, 4};  // one up, one down under blocked
    ShiftParams p;
    p.ordering = SpinOrdering::kBlocked;
    p.sector = sector_of(ref, p.ordering);
    for (auto& a : p.alpha) a = 2 * rng.uniform() - 1;
    const auto basis = particle_sector(4, SpinOrdering::kBlocked, ref);
    const auto before = sector_spectrum(h, basis);
    const auto after = sector_spectrum(apply_shift(h, p), basis);
    EXPECT_LE((before - after).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ApplyShift, CancelsZZWithTotalNumber) {
  const double c = 0.37;
  const auto h = parse_hamiltonian("0.37 ZZ");
  ShiftParams p;
  p.ordering = SpinOrdering::kBlocked;
  p.sector = {1, 0};
  p.alpha = {0.0, 0.0, -2 * c};
  const auto shifted = apply_shift(h, p);
  for (const auto& t : shifted.terms()) EXPECT_NE(t.string.str(), "ZZ");
  EXPECT_NEAR(split(shifted).mu_i, 0.0, 1e-12);
}

TEST(OptimizeShift, ToyReachesZero) {
  const auto h = parse_hamiltonian("0.37 ZZ\n0.1 ZI");
  const auto r = optimize_shift(h, {1, 0}, SpinOrdering::kBlocked);
  EXPECT_NEAR(r.split.mu_i, 0.0, 1e-6);
  EXPECT_NEAR(r.mu_i_before, 0.37, 1e-12);
}

TEST(OptimizeShift, NoDoubleZMeansZeroAlpha) {
  const auto h = parse_hamiltonian("0.5 XXII\n0.5 YYII\n0.2 ZIII\n0.3 IIXX\n0.3 IIYY");
  const auto r = optimize_shift(h, {1, 1}, SpinOrdering::kBlocked);
  EXPECT_NEAR(r.split.mu_i, r.mu_i_before, 1e-12);
  for (double a : r.params.alpha) EXPECT_NEAR(a, 0.0, 1e-9);
}

TEST(OptimizeShift, BundledIsAlreadyOptimal) {
  const auto& h = test::h3plus();
  const auto r = optimize_shift(h, {1, 1}, SpinOrdering::kInterleaved);
  EXPECT_NEAR(r.split.mu_i, 0.9337, 1e-3);
  EXPECT_LE(r.split.mu_i, r.mu_i_before + 1e-12);
  // Grid over [-0.2, 0.2]^3 finds nothing better.
  ShiftParams p;
  p.sector = {1, 1};
  p.ordering = SpinOrdering::kInterleaved;
  double best = 1e9;
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      for (int k = -4; k <= 4; ++k) {
        p.alpha = {0.05 * i, 0.05 * j, 0.05 * k};
        best = std::min(best, mu_after(h, p));
      }
  EXPECT_LE(r.split.mu_i, best + 1e-6);
}

TEST(OptimizeShift, MatchesGridOnRandomHamiltonians) {
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random_number_conserving(rng);
    const Sector sector{1, 1};
    const auto r = optimize_shift(h, sector, SpinOrdering::kBlocked);
    EXPECT_LE(r.split.mu_i, r.mu_i_before + 1e-12);
    ShiftParams p;
    p.sector = sector;
    p.ordering = SpinOrdering::kBlocked;
    double best = 1e9;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j)
        for (int k = -10; k <= 10; ++k) {
          p.alpha = {0.1 * i, 0.1 * j, 0.1 * k};
          best = std::min(best, mu_after(h, p));
        }
    EXPECT_LE(r.split.mu_i, best + 1e-6);
  }
}

TEST(OptimizeShift, ConvexAlongLines) {
  const auto& h = test::h3plus();
  Rng rng(8);
  ShiftParams a, b, m;
  a.sector = b.sector = m.sector = {1, 1};
  for (int trial = 0; trial < 20; ++trial) {
    for (int i = 0; i < 3; ++i) {
      a.alpha[i] = 0.4 * rng.uniform() - 0.2;
      b.alpha[i] = 0.4 * rng.uniform() - 0.2;
      m.alpha[i] = 0.5 * (a.alpha[i] + b.alpha[i]);
    }
    EXPECT_LE(mu_after(h, m), 0.5 * (mu_after(h, a) + mu_after(h, b)) + 1e-9);
  }
}

TEST(OptimizeShift, RejectsNonConservingInput) {
  try {
    optimize_shift(parse_hamiltonian("0.3 XIII"), {1, 1}, SpinOrdering::kBlocked);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSymmetryViolation);
  }
}

}  // namespace
}  // namespace aqpe
