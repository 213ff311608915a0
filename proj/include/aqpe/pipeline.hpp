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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aqpe/circuit.hpp"
#include "aqpe/estimator.hpp"
#include "aqpe/shift.hpp"
#include "aqpe/simulator.hpp"
#include "aqpe/symmetry.hpp"

namespace aqpe {

/// Hamiltonian plus everything derived from it once per run.
struct Problem {
  PauliHamiltonian hamiltonian;
  SplitHamiltonian split;
  std::optional<SpinOrdering> ordering;
  OccupationProfile profile;
  double e_hf = 0.0;
  /// Ground state within the reference's particle sector when the spin
  /// numbers are conserved, otherwise over the full space.
  double e_gs = 0.0;
  CVector ground_state;
};

Problem make_problem(const PauliHamiltonian& h, const BasisState& reference);

enum class Backend { kExact, kDensity, kLeakage };
std::string_view to_string(Backend b);
Backend parse_backend(std::string_view text);

struct RunOptions {
  Backend backend = Backend::kExact;
  NoiseModel noise = NoiseModel::none();
  /// Shots per circuit; 0 means exact expectations (exact and density only).
  std::size_t shots = 5;
  std::uint64_t shot_seed = 1;
  std::size_t repetitions = 1;
  std::size_t jobs = 1;
  bool keep_records = false;

  void validate() const;
};

struct RunOutput {
  /// tallies[rep][mode] lists one PairTally per pair, in pair order.
  std::vector<std::array<std::vector<PairTally>, 3>> tallies;
  std::vector<ShotRecord> records;
  MeasurementStats stats;
  std::vector<CircuitMetadata> meta;  // per pair, plus branch
};

/// Simulates every pair. The two circuits of a pair differ only in their
/// final ancilla phase, so the shared body is simulated once.
RunOutput run_ensemble(const Problem& problem,
                       const std::vector<StitchedPair>& pairs,
                       const RunOptions& opts);

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are
/// rethrown on the caller's thread.
void parallel_for(std::size_t n, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

/// Mean controlled-circuit two-qubit-gate count from the expected rotation
/// counts of U1, U2 and U1'.
double expected_circuit_tqg(const SplitHamiltonian& split, double T, double s,
                            double tau, const GateCostModel& costs = {});

struct SweepRow {
  double s = 0.0;
  double tau = 0.0;
  bool admissible = false;
  double mean_tqg = 0.0;
  double variance = 0.0;  // Ha^2, NaN if inadmissible
  double mean_energy = 0.0;
  std::size_t samples = 0;
};

struct SweepOptions {
  double T = 8.0;
  double epsilon = 0.04;
  double max_tqg = 1100.0;
  std::size_t n_circuits = 50;
  std::size_t seeds = 20;
  std::size_t shots = 5;
  std::uint64_t master_seed = 1;
  std::size_t jobs = 1;
  PostSelectMode mode = PostSelectMode::kHfProjection;
};

std::vector<SweepRow> sweep_s_tau(
    const Problem& problem,
    const std::vector<std::pair<double, double>>& grid,
    const SweepOptions& opts);
/// Index of the admissible row with the smallest variance.
std::optional<std::size_t> sweep_argmin(const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace aqpe
