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
#include <memory>
#include <utility>
#include <vector>

#include "aqpe/circuit.hpp"
#include "aqpe/dense.hpp"
#include "aqpe/rng.hpp"
#include "aqpe/shift.hpp"

namespace aqpe {

/// Dense bound for circuit simulation, ancilla included.
inline constexpr std::size_t kCircuitQubitLimit = 14;

struct NoiseModel {
  double incoherent = 9.7e-4;
  double coherent = 2.2e-4;
  double leakage = 0.0;

  static NoiseModel none() { return {0.0, 0.0, 0.0}; }
  bool noiseless() const {
    return incoherent == 0.0 && coherent == 0.0 && leakage == 0.0;
  }
  void validate() const;
};

struct ShotRecord {
  int ancilla_bit = 0;  // raw readout bit
  int ancilla_y = 1;    // eigenvalue of Y implied by the bit
  std::uint64_t physical_bits = 0;
  std::size_t circuit_index = 0;
  TrialBranch branch = TrialBranch::kPlus;
  int direction_sign = 1;
  std::uint64_t leaked_mask = 0;  // diagnostics; ancilla at bit L
};

/// Infinite-shot outcome statistics of one circuit: for each physical basis
/// string b, its probability and the joint expectation <Y_a (x) |b><b|>.
struct CircuitOutcome {
  std::size_t qubits = 0;
  int basis_sign = 1;
  std::vector<double> prob;
  std::vector<double> y;
  /// rho(1b, 0b): ancilla coherence between the branches; y = 2 Im coh.
  std::vector<Complex> coh;
  /// 2 <branch 0 | branch 1> on the reference string; its imaginary part is
  /// the Hadamard-test signal.
  Complex overlap{};

  double ancilla_y() const;
  /// Outcome after a further ancilla phase diag(1, exp(i angle)).
  CircuitOutcome with_phase(double angle) const;
  /// Probability of the readout bit being 1 jointly with b.
  double p_one(std::uint64_t b) const {
    return 0.5 * (prob[b] + basis_sign * y[b]);
  }
  /// Draws shots from the Born distribution.
  std::vector<ShotRecord> sample(Rng& rng, std::size_t shots,
                                 const CircuitMetadata& meta) const;
};

CircuitOutcome run_exact(const Circuit& c);
/// Exact noisy expectations from density-matrix evolution. Throws
/// kLeakageUnsupported when the model has leakage.
CircuitOutcome run_density(const Circuit& c, const NoiseModel& nm);

/// Trajectory sampler for leakage with stochastic Pauli and Z-rotation noise.
/// Reuses the noiseless prefix of each trajectory when only leakage is on.
class LeakageSimulator {
 public:
  LeakageSimulator(const Circuit& c, const NoiseModel& nm);
  ShotRecord shot(Rng& rng) const;
  /// Shot with an extra ancilla phase before readout, labelled with `meta`.
  ShotRecord shot(Rng& rng, double final_phase,
                  const CircuitMetadata& meta) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

std::vector<ShotRecord> run_leakage(const Circuit& c, const NoiseModel& nm,
                                    std::size_t shots, Rng& rng);

struct GroundState {
  double energy = 0.0;
  CVector state;  // full 2^L vector
};

GroundState exact_ground_state(const PauliHamiltonian& h);
/// Lowest eigenpair within the span of the given basis indices.
GroundState exact_ground_state(const PauliHamiltonian& h,
                               const std::vector<std::uint64_t>& basis);

/// Time-ordered evolution T exp(i int_0^T H(t/T) dt) |initial> with
/// H(u) = H_Z + w(u) H_I, by adaptive Dormand-Prince integration.
CVector exact_adiabatic(const SplitHamiltonian& split,
                        const SweepSchedule& schedule, double T,
                        const BasisState& initial, double tol = 1e-12);
/// Same propagation for the full unitary.
CMatrix exact_adiabatic_unitary(const SplitHamiltonian& split,
                                const SweepSchedule& schedule, double T,
                                double tol = 1e-12);

double fidelity(const CVector& a, const CVector& b);

}  // namespace aqpe
