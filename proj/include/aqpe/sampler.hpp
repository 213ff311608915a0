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
#include <string_view>
#include <vector>

#include "aqpe/cost.hpp"
#include "aqpe/dense.hpp"
#include "aqpe/shift.hpp"

namespace aqpe {

enum class ScheduleKind { kLinear, kConstant };

std::string_view to_string(ScheduleKind k);
ScheduleKind parse_schedule_kind(std::string_view text);

/// Sweep w(u) on [0, 1] with z(u) = int_0^u w and zeta = z(1).
struct SweepSchedule {
  ScheduleKind kind = ScheduleKind::kLinear;

  static SweepSchedule linear() { return {ScheduleKind::kLinear}; }
  static SweepSchedule constant() { return {ScheduleKind::kConstant}; }

  double w(double u) const;
  double z(double u) const;
  double z_inverse(double y) const;
  double zeta() const;
};

enum class Direction { kForward, kReverse };

inline int direction_sign(Direction d) {
  return d == Direction::kForward ? 1 : -1;
}

struct SamplerConfig {
  double duration = 1.0;  // T for sweeps, s for constant evolution
  double tau = 0.1;
  Direction direction = Direction::kForward;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Throws kInvalidArgument unless duration >= 0 and tau in (0, pi/2).
  void validate() const;
};

struct RotationEvent {
  double time = 0.0;
  std::size_t term = 0;  // index into SplitHamiltonian::h_i
  int sign = 1;          // sign(a_n) times the direction sign

  friend bool operator==(const RotationEvent&, const RotationEvent&) = default;
};

/// One draw of the randomized evolution. Events are stored in increasing
/// time; a reverse draw realizes the adjoint of the forward product.
struct SampledEvolution {
  SweepSchedule schedule;
  SamplerConfig config;
  double mu_i = 0.0;
  double attenuation = 1.0;
  std::vector<RotationEvent> events;

  std::size_t event_count() const noexcept { return events.size(); }
};

SampledEvolution sample_evolution(const SplitHamiltonian& split,
                                  const SweepSchedule& schedule,
                                  const SamplerConfig& config);

/// exp(-tan(tau/2) * zeta * duration * mu_i).
double attenuation_factor(double mu_i, double zeta, double duration,
                          double tau);

/// Mean two-qubit-gate count of one draw: zeta T mu_I g / sin(tau), with g
/// the |a_n|-weighted mean rotation cost.
double expected_tqg(const SplitHamiltonian& split,
                    const SweepSchedule& schedule, double duration, double tau,
                    const GateCostModel& costs, bool controlled);

/// A draw flattened into application order.
struct EvolutionStep {
  enum class Kind { kSegment, kRotation } kind;
  double value;          // segment duration or rotation angle
  std::size_t term = 0;  // rotations only
};

std::vector<EvolutionStep> lower(const SampledEvolution& ev);

/// psi <- U psi on the physical register.
void apply_evolution(const SampledEvolution& ev, const SplitHamiltonian& split,
                     CVector& psi);
/// Dense matrix of the realized unitary.
CMatrix evolution_unitary(const SampledEvolution& ev,
                          const SplitHamiltonian& split);

}  // namespace aqpe
