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

#include "aqpe/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aqpe/error.hpp"
#include "aqpe/rng.hpp"

namespace aqpe {

std::string_view to_string(ScheduleKind k) {
  return k == ScheduleKind::kLinear ? "linear" : "constant";
}

ScheduleKind parse_schedule_kind(std::string_view text) {
  if (text == "linear") return ScheduleKind::kLinear;
  if (text == "constant") return ScheduleKind::kConstant;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown schedule '" + std::string(text) + "'");
}

double SweepSchedule::w(double u) const {
  return kind == ScheduleKind::kLinear ? u : 1.0;
}

double SweepSchedule::z(double u) const {
  return kind == ScheduleKind::kLinear ? 0.5 * u * u : u;
}

double SweepSchedule::z_inverse(double y) const {
  return kind == ScheduleKind::kLinear ? std::sqrt(2.0 * y) : y;
}

double SweepSchedule::zeta() const {
  return kind == ScheduleKind::kLinear ? 0.5 : 1.0;
}

void SamplerConfig::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kInvalidArgument,
                "evolution duration must be finite and non-negative");
  }
  if (!(tau > 0.0 && tau < std::numbers::pi / 2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gate angle must lie strictly inside (0, pi/2)");
  }
}

double attenuation_factor(double mu_i, double zeta, double duration,
                          double tau) {
  return std::exp(-std::tan(tau / 2.0) * zeta * duration * mu_i);
}

SampledEvolution sample_evolution(const SplitHamiltonian& split,
                                  const SweepSchedule& schedule,
                                  const SamplerConfig& config) {
  config.validate();
  SampledEvolution ev;
  ev.schedule = schedule;
  ev.config = config;
  ev.mu_i = split.mu_i;
  const double zeta = schedule.zeta();
  const double T = config.duration;
  ev.attenuation = attenuation_factor(split.mu_i, zeta, T, config.tau);

  Rng rng = Rng::stream(config.seed, config.stream, 0);
  const int dir = direction_sign(config.direction);
  const auto& terms = split.h_i.terms();
  for (;;) {
    ev.events.clear();
    for (std::size_t n = 0; n < terms.size(); ++n) {
      const double a = terms[n].coefficient;
      const std::uint64_t m =
          rng.poisson(std::abs(a) * zeta * T / std::sin(config.tau));
      const int sign = (a < 0 ? -1 : 1) * dir;
      for (std::uint64_t i = 0; i < m; ++i) {
        const double t = T * schedule.z_inverse(rng.uniform() * zeta);
        ev.events.push_back({t, n, sign});
      }
    }
    std::stable_sort(ev.events.begin(), ev.events.end(),
                     [](const auto& x, const auto& y) { return x.time < y.time; });
    bool distinct = true;
    for (std::size_t i = 0; i < ev.events.size(); ++i) {
      if (ev.events[i].time <= 0.0 ||
          (i > 0 && ev.events[i].time == ev.events[i - 1].time)) {
        distinct = false;
      }
    }
    if (distinct) break;
  }
  return ev;
}

double expected_tqg(const SplitHamiltonian& split,
                    const SweepSchedule& schedule, double duration, double tau,
                    const GateCostModel& costs, bool controlled) {
  double weighted = 0.0;
  for (const auto& t : split.h_i.terms()) {
    weighted += std::abs(t.coefficient) *
                costs.rotation(t.string.weight(), controlled);
  }
  // zeta T mu_I g / sin(tau) with g = weighted / mu_I.
  return schedule.zeta() * duration * weighted / std::sin(tau);
}

std::vector<EvolutionStep> lower(const SampledEvolution& ev) {
  std::vector<EvolutionStep> steps;
  steps.reserve(2 * ev.events.size() + 1);
  double last = 0.0;
  for (const auto& e : ev.events) {
    steps.push_back({EvolutionStep::Kind::kSegment, e.time - last, 0});
    steps.push_back(
        {EvolutionStep::Kind::kRotation, e.sign * ev.config.tau, e.term});
    last = e.time;
  }
  steps.push_back(
      {EvolutionStep::Kind::kSegment, ev.config.duration - last, 0});
  if (ev.config.direction == Direction::kReverse) {
    // Adjoint: reverse the order and negate. Event signs already carry the
    // direction, so only segment durations flip here.
    std::reverse(steps.begin(), steps.end());
    for (auto& s : steps) {
      if (s.kind == EvolutionStep::Kind::kSegment) s.value = -s.value;
    }
  }
  std::erase_if(steps, [](const EvolutionStep& s) {
    return s.kind == EvolutionStep::Kind::kSegment && s.value == 0.0;
  });
  return steps;
}

namespace {

void apply_segment(const SplitHamiltonian& split, double dt, CVector& psi) {
  const std::vector<double> h = split.z_coefficients();
  const std::size_t L = h.size();
  for (Eigen::Index x = 0; x < psi.size(); ++x) {
    double e = split.h_z.identity_offset();
    for (std::size_t q = 0; q < L; ++q) {
      e += ((x >> (L - 1 - q)) & 1) ? -h[q] : h[q];
    }
    psi(x) *= std::polar(1.0, dt * e);
  }
}

}  // namespace

void apply_evolution(const SampledEvolution& ev, const SplitHamiltonian& split,
                     CVector& psi) {
  const auto& terms = split.h_i.terms();
  for (const auto& s : lower(ev)) {
    if (s.kind == EvolutionStep::Kind::kSegment) {
      apply_segment(split, s.value, psi);
    } else {
      apply_pauli_rotation(terms[s.term].string, s.value, psi);
    }
  }
}

CMatrix evolution_unitary(const SampledEvolution& ev,
                          const SplitHamiltonian& split) {
  const std::size_t L = split.qubit_count();
  require_dense(L);
  const Eigen::Index dim = Eigen::Index{1} << L;
  CMatrix u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    CVector col = basis_vector(L, static_cast<std::uint64_t>(c));
    apply_evolution(ev, split, col);
    u.col(c) = col;
  }
  return u;
}

}  // namespace aqpe
