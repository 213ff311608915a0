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
#include <cmath>
#include <map>
#include <set>
#include <numbers>

#include "aqpe/circuit.hpp"
#include "aqpe/dense.hpp"
#include "aqpe/error.hpp"
#include "aqpe/simulator.hpp"
#include "test_util.hpp"

namespace aqpe {
namespace {

Circuit bare_circuit(std::size_t qubits, const BasisState& initial,
                     std::vector<Gate> body) {
  Circuit c;
  c.qubits = qubits;
  c.z_coefficients.assign(qubits, 0.0);
  c.initial = initial;
  c.gates.emplace_back(AncillaPrepare{});
  for (auto& g : body) c.gates.push_back(std::move(g));
  c.gates.emplace_back(AncillaMeasureY{});
  c.gates.emplace_back(PhysicalMeasureZ{});
  return c;
}

std::vector<Circuit> default_circuits(std::size_t n, double T = 8.0,
                                    std::uint64_t seed = 1) {
  const auto& p = test::h3plus_problem();
  EnsembleSpec spec;
  spec.T = T;
  spec.master_seed = seed;
  std::vector<Circuit> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pair = build_pair(p.split, test::default_trial(), p.profile, spec, i);
    out.push_back(i % 2 ? pair.minus : pair.plus);
  }
  return out;
}

double chi2_pvalue(double chi2, int dof) {
  boost::math::chi_squared_distribution<> d(dof);
  return boost::math::cdf(boost::math::complement(d, chi2));
}

TEST(RunExact, RejectsOversizedCircuit) {
  const auto c = bare_circuit(14, BasisState{0, 14}, {});
  try {
    run_exact(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionTooLarge);
  }
}

TEST(RunExact, OutcomesAreNormalized) {
  for (const auto& c : default_circuits(10)) {
    const auto out = run_exact(c);
    double total = 0;
    for (std::size_t b = 0; b < out.prob.size(); ++b) {
      EXPECT_GE(out.prob[b], -1e-15);
      EXPECT_LE(std::abs(out.y[b]), out.prob[b] + 1e-12);
      total += out.prob[b];
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(RunExact, WithPhaseMatchesExplicitPhaseGate) {
  const auto c = default_circuits(1)[0];
  const auto [body, phase] = strip_final_phase(c);
  const auto direct = run_exact(c);
  const auto shifted = run_exact(body).with_phase(phase);
  EXPECT_NEAR(direct.ancilla_y(), shifted.ancilla_y(), 1e-12);
  EXPECT_NEAR(std::abs(direct.overlap - shifted.overlap), 0.0, 1e-12);
}

TEST(RunDensity, NoiselessMatchesExact) {
  for (const auto& c : default_circuits(40, 8.0, 9)) {
    const auto a = run_exact(c);
    const auto b = run_density(c, NoiseModel::none());
    ASSERT_EQ(a.prob.size(), b.prob.size());
    for (std::size_t i = 0; i < a.prob.size(); ++i) {
      ASSERT_NEAR(a.prob[i], b.prob[i], 1e-9);
      ASSERT_NEAR(a.y[i], b.y[i], 1e-9);
    }
  }
}

TEST(RunDensity, RejectsLeakage) {
  const auto c = default_circuits(1)[0];
  try {
    run_density(c, {0, 0, 1e-3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLeakageUnsupported);
  }
}

TEST(RunDensity, FullDepolarizationOfOnePair) {
  // One physical qubit: the ancilla-physical pair is the whole register.
  const double phi = 0.7, theta = 0.4;
  const auto c = bare_circuit(1, BasisState::parse("0"),
                              {AncillaPhase{phi},
                               ControlledPauliRotation{PauliString::parse("X"), theta}});
  ASSERT_EQ(count_tqg(c), 1);
  // Hand-built: index = (ancilla << 1) | physical.
  CVector psi(4);
  psi << 1, 0, std::polar(1.0, phi), 0;
  psi /= std::sqrt(2.0);
  CMatrix u = CMatrix::Identity(4, 4);
  u.block(2, 2, 2, 2) = hermitian_exp(pauli_matrix(PauliString::parse("X")), theta);
  const CMatrix ideal = (u * psi) * (u * psi).adjoint();
  CMatrix y_anc = CMatrix::Zero(4, 4);
  y_anc.block(0, 2, 2, 2) = Complex(0, -1) * CMatrix::Identity(2, 2);
  y_anc.block(2, 0, 2, 2) = Complex(0, 1) * CMatrix::Identity(2, 2);
  for (double lambda : {0.0, 0.3, 1.0}) {
    const CMatrix rho = (1 - lambda) * ideal + lambda * CMatrix::Identity(4, 4) / 4.0;
    const auto out = run_density(c, {lambda, 0, 0});
    EXPECT_NEAR(out.ancilla_y(), (rho * y_anc).trace().real(), 1e-12);
    EXPECT_NEAR(out.prob[1], (rho(1, 1) + rho(3, 3)).real(), 1e-12);
  }
  const auto full = run_density(c, {1.0, 0, 0});
  EXPECT_NEAR(full.ancilla_y(), 0.0, 1e-12);
  EXPECT_NEAR(full.prob[0], 0.5, 1e-12);
}

TEST(RunDensity, CoherentTickOnAncilla) {
  const double phi = 0.3, theta = 0.2, lambda = 0.25;
  // Controlled Z on |0> adds phase theta to the ancilla; one depth tick.
  const auto c = bare_circuit(1, BasisState::parse("0"),
                              {AncillaPhase{phi},
                               ControlledPauliRotation{PauliString::parse("Z"), theta}});
  ASSERT_EQ(depth_tqg(c), 1);
  const Complex rho10 = 0.5 * std::polar(1.0, phi + theta);
  const Complex damp = (1 - lambda) + lambda * std::polar(1.0, std::numbers::pi / 4);
  const auto out = run_density(c, {0, lambda, 0});
  EXPECT_NEAR(out.ancilla_y(), 2 * (rho10 * damp).imag(), 1e-12);
  EXPECT_NEAR(out.prob[0], 1.0, 1e-12);
}

TEST(RunDensity, StaysPhysicalUnderNoise) {
  for (const auto& c : default_circuits(5)) {
    const auto out = run_density(c, {2e-3, 4e-3, 0});
    double total = 0;
    for (std::size_t b = 0; b < out.prob.size(); ++b) {
      EXPECT_GE(out.prob[b], -1e-12);
      EXPECT_LE(std::abs(out.y[b]), out.prob[b] + 1e-9);
      total += out.prob[b];
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(RunDensity, NoiseDampsAncillaSignal) {
  const auto c = default_circuits(1)[0];
  const double clean = run_exact(c).ancilla_y();
  const double noisy = run_density(c, {2e-3, 0, 0}).ancilla_y();
  EXPECT_LT(std::abs(noisy), std::abs(clean));
  EXPECT_GT(noisy * clean, 0.0);
}

TEST(TqgPairs, LadderStructure) {
  const auto pairs = tqg_pairs(
      ControlledPauliRotation{PauliString::parse("XIYZ"), 0.1}, 4);
  EXPECT_EQ(static_cast<int>(pairs.size()),
            gate_cost(ControlledPauliRotation{PauliString::parse("XIYZ"), 0.1}, {}));
  for (const auto& [a, b] : pairs) EXPECT_EQ(b, 0);  // rightmost support qubit
}

// Joint (readout bit, physical string) histogram.
std::map<std::pair<int, std::uint64_t>, int> histogram(const std::vector<ShotRecord>& r) {
  std::map<std::pair<int, std::uint64_t>, int> h;
  for (const auto& s : r) ++h[{s.ancilla_bit, s.physical_bits}];
  return h;
}

TEST(RunLeakage, NoiselessMatchesBornDistribution) {
  const auto c = default_circuits(2)[1];
  const auto exact = run_exact(c);
  Rng rng(31);
  const std::size_t shots = 10000;
  const auto records = run_leakage(c, NoiseModel::none(), shots, rng);
  const auto h = histogram(records);
  double chi2 = 0;
  int dof = -1;
  double rest_e = 0;
  int rest_o = 0;
  for (std::size_t b = 0; b < exact.prob.size(); ++b) {
    const double p1 = exact.p_one(b);
    for (int bit : {0, 1}) {
      const double e = shots * (bit ? p1 : exact.prob[b] - p1);
      const auto it = h.find({bit, b});
      const int o = it == h.end() ? 0 : it->second;
      if (e < 5) {
        rest_e += e;
        rest_o += o;
        continue;
      }
      chi2 += (o - e) * (o - e) / e;
      ++dof;
    }
  }
  if (rest_e > 0) {
    chi2 += (rest_o - rest_e) * (rest_o - rest_e) / std::max(rest_e, 1.0);
    ++dof;
  }
  EXPECT_GT(chi2_pvalue(chi2, dof), 1e-3) << "chi2 " << chi2 << " dof " << dof;
  for (const auto& r : records) EXPECT_EQ(r.leaked_mask, 0u);
}

TEST(RunLeakage, TwoSampleAgreementWithExactSampler) {
  const auto c = default_circuits(3)[2];
  Rng a(5), b(6);
  const std::size_t shots = 10000;
  const auto ha = histogram(run_leakage(c, NoiseModel::none(), shots, a));
  const auto hb = histogram(run_exact(c).sample(b, shots, c.meta));
  std::map<std::pair<int, std::uint64_t>, std::pair<int, int>> joint;
  for (const auto& [k, v] : ha) joint[k].first = v;
  for (const auto& [k, v] : hb) joint[k].second = v;
  double chi2 = 0;
  int dof = -1;
  int ra = 0, rb = 0;
  for (const auto& [k, v] : joint) {
    if (v.first + v.second < 10) {
      ra += v.first;
      rb += v.second;
      continue;
    }
    const double d = v.first - v.second;
    chi2 += d * d / (v.first + v.second);
    ++dof;
  }
  if (ra + rb > 0) {
    chi2 += double(ra - rb) * (ra - rb) / (ra + rb);
    ++dof;
  }
  EXPECT_GT(chi2_pvalue(chi2, dof), 1e-3);
}

TEST(RunLeakage, CertainLeakageForcesOnes) {
  // One leak event per gate; the leaked operand is uniform over its wires
  // and reads 1. The gate itself is removed.
  const auto c = bare_circuit(4, BasisState::parse("1100"),
                              {ControlledPauliRotation{PauliString::parse("XYXY"), 0.3}});
  Rng rng(1);
  std::vector<int> hits(5, 0);
  const int shots = 5000;
  for (const auto& r : run_leakage(c, {0, 0, 1.0}, shots, rng)) {
    ASSERT_EQ(std::popcount(r.leaked_mask), 1);
    const int w = std::countr_zero(r.leaked_mask);
    ++hits[w];
    if (w == 4) {
      EXPECT_EQ(r.ancilla_bit, 1);
      EXPECT_EQ(r.physical_bits, 0b1100u);
    } else {
      EXPECT_EQ(r.physical_bits, 0b1100u | (1u << w));
    }
  }
  for (int h : hits) EXPECT_NEAR(h, shots / 5.0, 4 * std::sqrt(shots * 0.16));
}

TEST(RunLeakage, DisjointGatesEachLeakOneOperand) {
  const auto c = bare_circuit(4, BasisState::parse("0000"),
                              {PauliRotation{PauliString::parse("XXII"), 0.3},
                               PauliRotation{PauliString::parse("IIYY"), 0.3}});
  Rng rng(4);
  for (const auto& r : run_leakage(c, {0, 0, 1.0}, 500, rng)) {
    EXPECT_EQ(std::popcount(r.leaked_mask & 0b1100u), 1);
    EXPECT_EQ(std::popcount(r.leaked_mask & 0b0011u), 1);
    EXPECT_EQ(r.physical_bits, r.leaked_mask);
  }
}

TEST(RunLeakage, LaterGatesOnLeakedQubitAreRemoved) {
  const auto c = bare_circuit(4, BasisState::parse("0000"),
                              {PauliRotation{PauliString::parse("XXII"), 0.3},
                               PauliRotation{PauliString::parse("IXXI"), 0.3},
                               PauliRotation{PauliString::parse("IIXX"), 0.3}});
  Rng rng(8);
  const std::uint64_t q0 = 0b1000, q1 = 0b0100, q2 = 0b0010, q3 = 0b0001;
  std::map<std::uint64_t, int> seen;
  for (const auto& r : run_leakage(c, {0, 0, 1.0}, 2000, rng)) ++seen[r.leaked_mask];
  // Enumerate: gate 1 leaks q0 or q1; a gate sharing a leaked qubit is dropped.
  const std::set<std::uint64_t> allowed{q1 | q2, q1 | q3, q0 | q2, q0 | q1 | q2,
                                        q0 | q1 | q3};
  for (const auto& [mask, n] : seen) EXPECT_TRUE(allowed.contains(mask)) << mask;
  EXPECT_EQ(seen.size(), allowed.size());
  EXPECT_NEAR(seen[q0 | q2], 500, 100);
}

TEST(RunLeakage, StochasticChannelsConvergeToDensity) {
  const auto c = default_circuits(1, 2.0, 4)[0];
  const NoiseModel nm{0.02, 0.02, 0.0};
  const auto dens = run_density(c, nm);
  Rng rng(77);
  const std::size_t shots = 40000;
  const auto records = run_leakage(c, nm, shots, rng);
  double sum = 0;
  std::vector<double> ones(c.qubits, 0.0);
  for (const auto& r : records) {
    sum += r.ancilla_y;
    for (std::size_t q = 0; q < c.qubits; ++q) {
      ones[q] += (r.physical_bits >> (c.qubits - 1 - q)) & 1;
    }
  }
  const double mean = sum / shots;
  const double se = std::sqrt((1 - mean * mean) / shots);
  EXPECT_NEAR(mean, dens.ancilla_y() * dens.basis_sign, 4 * se);
  for (std::size_t q = 0; q < c.qubits; ++q) {
    double p = 0;
    for (std::size_t b = 0; b < dens.prob.size(); ++b) {
      if ((b >> (c.qubits - 1 - q)) & 1) p += dens.prob[b];
    }
    EXPECT_NEAR(ones[q] / shots, p, 4 * std::sqrt(p * (1 - p) / shots) + 1e-3);
  }
}

TEST(RunLeakage, ShotsAreReproducible) {
  const auto c = default_circuits(1)[0];
  Rng a(3), b(3);
  const auto ra = run_leakage(c, {1e-3, 2e-4, 1e-3}, 50, a);
  const auto rb = run_leakage(c, {1e-3, 2e-4, 1e-3}, 50, b);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].physical_bits, rb[i].physical_bits);
    EXPECT_EQ(ra[i].ancilla_bit, rb[i].ancilla_bit);
  }
}

TEST(GroundState, SingleQubit) {
  const auto gs = exact_ground_state(parse_hamiltonian("-1 Z"));
  EXPECT_NEAR(gs.energy, -1.0, 1e-14);
  // Z|0> = +|0>, so -Z is minimized by |0>.
  EXPECT_NEAR(std::abs(gs.state(0)), 1.0, 1e-12);
}

TEST(GroundState, ResidualAndAnchors) {
  const auto& p = test::h3plus_problem();
  const CMatrix h = to_dense(p.hamiltonian);
  EXPECT_LE((h * p.ground_state - p.e_gs * p.ground_state).norm(), 1e-10);
  EXPECT_NEAR((p.e_hf - p.e_gs) * 1e3, 52.8, 0.5);
}

TEST(ExactAdiabatic, ZeroDurationIsInitialState) {
  const auto& p = test::h3plus_problem();
  const CVector psi = exact_adiabatic(p.split, SweepSchedule::linear(), 0.0, p.profile.hf);
  EXPECT_NEAR(std::abs(psi(p.profile.hf.bits)), 1.0, 1e-15);
}

TEST(ExactAdiabatic, UnitaryAndConverged) {
  const auto& p = test::h3plus_problem();
  const CMatrix u = exact_adiabatic_unitary(p.split, SweepSchedule::linear(), 2.0);
  EXPECT_LE((u.adjoint() * u - CMatrix::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-10);
  const CVector a = exact_adiabatic(p.split, SweepSchedule::linear(), 8.0, p.profile.hf, 1e-12);
  const CVector b = exact_adiabatic(p.split, SweepSchedule::linear(), 8.0, p.profile.hf, 1e-13);
  EXPECT_LE((a - b).norm(), 1e-8);
}

TEST(ExactAdiabatic, ErrorNonIncreasingInT) {
  const auto& p = test::h3plus_problem();
  double previous = 1e9;
  for (double T : {1.0, 2.0, 4.0, 8.0}) {
    const CVector psi = exact_adiabatic(p.split, SweepSchedule::linear(), T, p.profile.hf);
    const double err =
        (psi.dot(apply_hamiltonian(p.hamiltonian, psi)).real() - p.e_gs) * 1e3;
    EXPECT_LE(err, previous + 0.2) << "T " << T;
    previous = err;
  }
}

TEST(NoiseModel, Validation) {
  EXPECT_THROW((NoiseModel{-1e-3, 0, 0}.validate()), Error);
  EXPECT_THROW((NoiseModel{0, 1.5, 0}.validate()), Error);
  EXPECT_NO_THROW(NoiseModel{}.validate());
  EXPECT_TRUE(NoiseModel::none().noiseless());
}

}  // namespace
}  // namespace aqpe
