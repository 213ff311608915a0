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

#include "aqpe/dense.hpp"
#include "aqpe/error.hpp"
#include "aqpe/jordan_wigner.hpp"
#include "aqpe/pauli_sum.hpp"
#include "aqpe/symmetry.hpp"
#include "test_util.hpp"

namespace aqpe {
namespace {

TEST(Symmetry, OperatorsHaveDocumentedForm) {
  const auto pi = parity_operator(3);
  ASSERT_EQ(pi.size(), 1u);
  EXPECT_EQ(pi.terms()[0].string.str(), "ZZZ");
  EXPECT_EQ(pi.terms()[0].coefficient, 1.0);
  const auto n = number_operator(3, {0, 2});
  EXPECT_DOUBLE_EQ(n.identity_offset(), 1.0);
  const CMatrix m = to_dense(n);
  for (std::uint64_t b = 0; b < 8; ++b) {
    const double expected = ((b >> 2) & 1) + (b & 1);
    EXPECT_NEAR(m(b, b).real(), expected, 1e-15);
  }
}

TEST(Symmetry, SpinQubits) {
  EXPECT_EQ(spin_qubits(6, SpinOrdering::kBlocked, 0),
            (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(spin_qubits(6, SpinOrdering::kInterleaved, 1),
            (std::vector<std::size_t>{1, 3, 5}));
}

TEST(Symmetry, AnticommutingToy) {
  EXPECT_FALSE(commutes_with(parse_hamiltonian("1 X"), parity_operator(1)));
  EXPECT_TRUE(commutes_with(parse_hamiltonian("1 Z"), parity_operator(1)));
}

TEST(Symmetry, BundledHamiltonianConservesParity) {
  const auto& h = test::h3plus();
  EXPECT_TRUE(commutes_with(h, parity_operator(6)));
  EXPECT_LE(dense_commutator_norm(h, parity_operator(6)), 1e-10);
}

TEST(Symmetry, SpinOrderingIsPinnedByCommutation) {
  const auto& h = test::h3plus();
  auto conserves = [&](SpinOrdering o) {
    return commutes_with(h, number_operator(6, spin_qubits(6, o, 0))) &&
           commutes_with(h, number_operator(6, spin_qubits(6, o, 1)));
  };
  const bool blocked = conserves(SpinOrdering::kBlocked);
  const bool interleaved = conserves(SpinOrdering::kInterleaved);
  EXPECT_NE(blocked, interleaved);
  const auto detected = detect_spin_ordering(h);
  ASSERT_TRUE(detected.has_value());
  EXPECT_EQ(*detected, interleaved ? SpinOrdering::kInterleaved
                                   : SpinOrdering::kBlocked);
  const auto ntot = number_operator(6, {0, 1, 2, 3, 4, 5});
  EXPECT_LE(dense_commutator_norm(h, ntot), 1e-10);
}

TEST(Symmetry, SectorMembershipOfReference) {
  const auto ref = BasisState::parse("110000");
  const auto sym = make_symmetry(SymmetryKind::kParity, 6,
                                 SpinOrdering::kInterleaved, ref);
  EXPECT_EQ(sym.sector_value, 1.0);
  const auto sector = particle_sector(6, SpinOrdering::kInterleaved, ref);
  EXPECT_EQ(sector.size(), 9u);  // 3 up orbitals choose 1, times 3 down
}

TEST(JordanWigner, SingleModeNumberOperator) {
  IntegralTable t(1, SpinOrdering::kBlocked);
  t.one_body(0, 0, 0) = 1.0;
  const auto h = jordan_wigner(t).canonicalized();
  EXPECT_NEAR(h.identity_offset(), 0.5, 1e-15);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms()[0].string.str(), "ZI");
  EXPECT_NEAR(h.terms()[0].coefficient, -0.5, 1e-15);
}

TEST(JordanWigner, HoppingIsXXPlusYY) {
  IntegralTable t(2, SpinOrdering::kBlocked);
  const double hop = 0.7;
  t.one_body(0, 0, 1) = hop;
  t.one_body(0, 1, 0) = hop;
  const auto h = jordan_wigner(t).canonicalized();
  // Up-spin modes are qubits 0 and 1 under the blocked ordering.
  ASSERT_EQ(h.size(), 2u);
  for (const auto& term : h.terms()) {
    EXPECT_TRUE(term.string.str() == "XXII" || term.string.str() == "YYII");
    EXPECT_NEAR(term.coefficient, hop / 2, 1e-15);
  }
}

TEST(JordanWigner, CanonicalAnticommutation) {
  const std::size_t L = 4;
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      const PauliSum ai = jw_annihilation(L, i);
      const PauliSum aj = jw_annihilation(L, j);
      const PauliSum adj = jw_creation(L, j);
      const PauliSum acomm = (ai * adj + adj * ai).pruned();
      const PauliSum aa = (ai * aj + aj * ai).pruned();
      EXPECT_EQ(aa.size(), 0u);
      if (i == j) {
        ASSERT_EQ(acomm.size(), 1u);
        EXPECT_NEAR(std::abs(acomm.coefficient(PauliString(L)) - 1.0), 0.0, 1e-15);
      } else {
        EXPECT_EQ(acomm.size(), 0u);
      }
    }
  }
}

// Brute-force fermionic matrix in the occupation basis. Mode m is bit L-1-m.
CMatrix ladder(std::size_t L, std::size_t m) {
  const Eigen::Index dim = Eigen::Index{1} << L;
  CMatrix a = CMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const std::uint64_t bit = std::uint64_t{1} << (L - 1 - m);
    if (!(b & bit)) continue;
    const std::uint64_t before = static_cast<std::uint64_t>(b) >> (L - m);
    const double sign = (std::popcount(before) & 1) ? -1.0 : 1.0;
    a(b ^ static_cast<Eigen::Index>(bit), b) = sign;
  }
  return a;
}

IntegralTable random_table(std::size_t orbitals, SpinOrdering o, Rng& rng) {
  IntegralTable t(orbitals, o);
  t.constant() = rng.uniform();
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < orbitals; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = 2 * rng.uniform() - 1;
        t.one_body(s, i, j) = v;
        t.one_body(s, j, i) = v;
      }
    }
  }
  // Hermitian two-body part: t2[s][s'](i,j,k,l) = t2[s'][s](l,k,j,i).
  for (int s = 0; s < 2; ++s) {
    for (int sp = 0; sp < 2; ++sp) {
      for (std::size_t i = 0; i < orbitals; ++i)
        for (std::size_t j = 0; j < orbitals; ++j)
          for (std::size_t k = 0; k < orbitals; ++k)
            for (std::size_t l = 0; l < orbitals; ++l) {
              const double v = 0.5 * (2 * rng.uniform() - 1);
              t.two_body(s, sp, i, j, k, l) += v;
              t.two_body(sp, s, l, k, j, i) += v;
            }
    }
  }
  return t;
}

CMatrix brute_force(const IntegralTable& t) {
  const std::size_t L = t.qubits();
  const std::size_t n = t.orbitals();
  const Eigen::Index dim = Eigen::Index{1} << L;
  CMatrix h = t.constant() * CMatrix::Identity(dim, dim);
  std::vector<CMatrix> a;
  for (std::size_t m = 0; m < L; ++m) a.push_back(ladder(L, m));
  for (int s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        h += t.one_body(s, i, j) * a[t.mode(i, s)].adjoint() * a[t.mode(j, s)];
  for (int s = 0; s < 2; ++s)
    for (int sp = 0; sp < 2; ++sp)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
              h += 0.5 * t.two_body(s, sp, i, j, k, l) *
                   a[t.mode(i, s)].adjoint() * a[t.mode(j, sp)].adjoint() *
                   a[t.mode(k, s)] * a[t.mode(l, sp)];
  return h;
}

TEST(JordanWigner, MatchesOccupationBasisOracle) {
  Rng rng(21);
  for (auto o : {SpinOrdering::kBlocked, SpinOrdering::kInterleaved}) {
    for (std::size_t orbitals : {1u, 2u, 3u}) {
      const auto t = random_table(orbitals, o, rng);
      const auto h = jordan_wigner(t);
      const CMatrix dense = to_dense(h);
      EXPECT_LE((dense - dense.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((dense - brute_force(t)).cwiseAbs().maxCoeff(), 1e-12)
          << "orbitals " << orbitals;
      // Number conservation per spin.
      for (int s = 0; s < 2; ++s) {
        EXPECT_TRUE(commutes_with(h, number_operator(t.qubits(),
                                                     spin_qubits(t.qubits(), o, s))));
      }
    }
  }
}

TEST(JordanWigner, RejectsAsymmetricOneBody) {
  IntegralTable t(2, SpinOrdering::kBlocked);
  t.one_body(0, 0, 1) = 0.3;
  EXPECT_THROW(jordan_wigner(t), Error);
}

}  // namespace
}  // namespace aqpe
