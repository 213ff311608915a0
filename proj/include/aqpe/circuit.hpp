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
#include <utility>
#include <variant>
#include <vector>

#include "aqpe/cost.hpp"
#include "aqpe/pauli.hpp"
#include "aqpe/sampler.hpp"
#include "aqpe/shift.hpp"

namespace aqpe {

// Gate set. Angles are radians, durations inverse Hartree. Rotations are
// exp(i angle P); segments are exp(i duration sum_{q in mask} h_q Z_q) with h_q
// taken from the owning circuit. Masks use the Pauli-mask bit convention.
struct PauliRotation {
  PauliString string;
  double angle = 0.0;

  friend bool operator==(const PauliRotation&, const PauliRotation&) = default;
};
struct ControlledPauliRotation {
  PauliString string;
  double angle = 0.0;

  friend bool operator==(const ControlledPauliRotation&, const ControlledPauliRotation&) = default;
};
struct DiagonalSegment {
  double duration = 0.0;
  std::uint64_t mask = 0;

  friend bool operator==(const DiagonalSegment&, const DiagonalSegment&) = default;
};
struct ControlledDiagonalSegment {
  double duration = 0.0;
  std::uint64_t mask = 0;

  friend bool operator==(const ControlledDiagonalSegment&, const ControlledDiagonalSegment&) = default;
};
/// diag(1, exp(i angle)) on the ancilla.
struct AncillaPhase {
  double angle = 0.0;

  friend bool operator==(const AncillaPhase&, const AncillaPhase&) = default;
};
struct AncillaPrepare {
  friend bool operator==(const AncillaPrepare&, const AncillaPrepare&) = default;
};
/// basis_sign = +1 reads Y; -1 reads -Y. Outcome bit 1 is the +1 eigenvalue
/// of the measured operator.
struct AncillaMeasureY {
  int basis_sign = 1;

  friend bool operator==(const AncillaMeasureY&, const AncillaMeasureY&) = default;
};
struct PhysicalMeasureZ {
  friend bool operator==(const PhysicalMeasureZ&,
                         const PhysicalMeasureZ&) = default;
};

using Gate =
    std::variant<PauliRotation, ControlledPauliRotation, DiagonalSegment,
                 ControlledDiagonalSegment, AncillaPhase, AncillaPrepare,
                 AncillaMeasureY, PhysicalMeasureZ>;

enum class TrialBranch { kPlus, kMinus };
std::string_view to_string(TrialBranch b);

struct TrialEnergies {
  double e_guess = 0.0;
  double epsilon = 0.04;
  double s = 10.0;

  double e_plus() const { return e_guess + epsilon; }
  double e_minus() const { return e_guess - epsilon; }
  double energy(TrialBranch b) const {
    return b == TrialBranch::kPlus ? e_plus() : e_minus();
  }
  /// Trial energies (E_ref, E_ref - 2 epsilon).
  static TrialEnergies below(double e_ref, double epsilon, double s);
  /// Whether s stays inside the window 0 < s < pi / |E_trial - e_gs| for
  /// both branches.
  bool window_ok(double e_gs) const;
};

struct OccupationProfile {
  BasisState hf;
  int eta = 1;

  static OccupationProfile from(const BasisState& hf);
  bool occupied(std::size_t q) const { return hf[q]; }
};

struct CircuitMetadata {
  int direction_sign = 1;
  double lambda_a = 1.0;
  double lambda_ap = 1.0;
  double lambda_s = 1.0;
  TrialBranch branch = TrialBranch::kPlus;
  std::size_t index = 0;

  double attenuation() const { return lambda_a * lambda_ap * lambda_s; }
};

/// Hadamard-test circuit: one ancilla plus `qubits` physical qubits that
/// start in `initial`.
struct Circuit {
  std::size_t qubits = 0;
  std::vector<double> z_coefficients;
  BasisState initial;
  std::vector<Gate> gates;
  CircuitMetadata meta;

  std::uint64_t ancilla_bit() const { return std::uint64_t{1} << qubits; }
};

enum class DiagonalMode { kUncontrolled, kControlled };
std::string_view to_string(DiagonalMode m);
DiagonalMode parse_diagonal_mode(std::string_view text);

/// Circuit measuring Im<HF| U1' U2 U1 |HF> with U2 realizing
/// exp(i s (E_trial - H)). In uncontrolled mode diagonal segments act on both
/// ancilla branches; |HF> is their eigenstate, so a single ancilla phase
/// restores the controlled result exactly.
Circuit build_hadamard_test(const SplitHamiltonian& split,
                            const SampledEvolution& u1,
                            const SampledEvolution& u2,
                            const SampledEvolution& u1p,
                            const TrialEnergies& trial, TrialBranch branch,
                            const OccupationProfile& profile,
                            DiagonalMode mode = DiagonalMode::kUncontrolled);

/// Splits off the trailing ancilla phase (the only gate in which the two
/// branches of a stitched pair differ). Returns the remaining circuit and the
/// phase.
std::pair<Circuit, double> strip_final_phase(const Circuit& c);

/// Circuit of the adjoint unitary with the readout basis flipped.
Circuit reversed(const Circuit& c);

/// Rewrites exp(i t P) -> exp(i eta t P Pi) when P has more Z than I.
Circuit parity_reduce(const Circuit& c, const OccupationProfile& profile);
/// Replaces Z on still-unentangled qubits by their fixed eigenvalue.
Circuit occupation_reduce(const Circuit& c, const OccupationProfile& profile);
/// Collects all ancilla phases into one gate before the measurements.
Circuit merge_ancilla_phases(const Circuit& c);

/// Qubits touched by a gate, ancilla at bit `qubits`.
std::uint64_t gate_qubits(const Gate& g, std::size_t qubits);
int gate_cost(const Gate& g, const GateCostModel& costs);

/// ASAP layering of costed gates; each layer adds its largest cost.
/// Entangling pairs of the ladder decomposition; wires are mask bit
/// positions with the ancilla at bit `qubits`.
std::vector<std::pair<int, int>> tqg_pairs(const Gate& g, std::size_t qubits);

class DepthTracker {
 public:
  explicit DepthTracker(std::size_t wires) : ready_(wires, 0) {}
  /// Adds a gate and returns the increase in depth.
  int add(std::uint64_t wires, int cost);
  /// Adds each entangling pair of `g` as one layer-unit; pairs touching
  /// `skip` are ignored.
  int add_gate(const Gate& g, std::size_t qubits, std::uint64_t skip = 0);
  int depth() const { return depth_; }

 private:
  std::vector<std::size_t> ready_;  // next free layer per wire
  std::vector<int> layer_cost_;
  int depth_ = 0;
};

int count_tqg(const Circuit& c, const GateCostModel& costs = {});
int depth_tqg(const Circuit& c, const GateCostModel& costs = {});

struct StitchedPair {
  Circuit plus;
  Circuit minus;
  SampledEvolution u1;
  SampledEvolution u2;
  SampledEvolution u1p;
};

struct EnsembleSpec {
  double T = 8.0;
  double tau = 0.1;
  std::size_t n_circuits = 346;
  std::uint64_t master_seed = 1;
  DiagonalMode diagonal_mode = DiagonalMode::kUncontrolled;
  bool parity_reduction = true;
  bool occupation_reduction = true;
  bool alternate_direction = true;
};

/// Stream slots used for the three draws of each pair.
inline constexpr std::uint64_t kSlotU1 = 0;
inline constexpr std::uint64_t kSlotU2 = 1;
inline constexpr std::uint64_t kSlotU1p = 2;

/// Draw keyed by (master seed, pair index, slot).
SampledEvolution draw(const SplitHamiltonian& split, ScheduleKind kind,
                      double duration, double tau, Direction d,
                      std::uint64_t master, std::size_t index,
                      std::uint64_t slot);

StitchedPair build_pair(const SplitHamiltonian& split,
                        const TrialEnergies& trial,
                        const OccupationProfile& profile,
                        const EnsembleSpec& spec, std::size_t index);

std::vector<StitchedPair> build_ensemble(const SplitHamiltonian& split,
                                         const TrialEnergies& trial,
                                         const OccupationProfile& profile,
                                         const EnsembleSpec& spec);

/// CSV with one row per circuit: index,branch,direction,tqg,depth.
std::string ensemble_stats_csv(const std::vector<StitchedPair>& pairs,
                               const GateCostModel& costs = {});

}  // namespace aqpe
