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

#include "aqpe/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aqpe/error.hpp"

namespace aqpe {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::uint64_t all_qubits(std::size_t n) {
  return n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
}

}  // namespace

std::string_view to_string(TrialBranch b) {
  return b == TrialBranch::kPlus ? "plus" : "minus";
}

std::string_view to_string(DiagonalMode m) {
  return m == DiagonalMode::kUncontrolled ? "uncontrolled" : "controlled";
}

DiagonalMode parse_diagonal_mode(std::string_view text) {
  if (text == "uncontrolled") return DiagonalMode::kUncontrolled;
  if (text == "controlled") return DiagonalMode::kControlled;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown diagonal mode '" + std::string(text) + "'");
}

TrialEnergies TrialEnergies::below(double e_ref, double epsilon, double s) {
  return {e_ref - epsilon, epsilon, s};
}

bool TrialEnergies::window_ok(double e_gs) const {
  for (double e : {e_plus(), e_minus()}) {
    const double delta = std::abs(e - e_gs);
    if (delta > 0 && s >= std::numbers::pi / delta) return false;
  }
  return s > 0;
}

OccupationProfile OccupationProfile::from(const BasisState& hf) {
  return {hf, (hf.popcount() % 2 == 0) ? 1 : -1};
}

Circuit build_hadamard_test(const SplitHamiltonian& split,
                            const SampledEvolution& u1,
                            const SampledEvolution& u2,
                            const SampledEvolution& u1p,
                            const TrialEnergies& trial, TrialBranch branch,
                            const OccupationProfile& profile,
                            DiagonalMode mode) {
  const std::size_t L = split.qubit_count();
  if (profile.hf.n != L) {
    throw Error(ErrorCode::kMismatchedQubitCount,
                "reference state has " + std::to_string(profile.hf.n) +
                    " qubits, Hamiltonian has " + std::to_string(L));
  }
  Circuit c;
  c.qubits = L;
  c.z_coefficients = split.z_coefficients();
  c.initial = profile.hf;
  c.meta.branch = branch;
  c.meta.lambda_a = u1.attenuation;
  c.meta.lambda_s = u2.attenuation;
  c.meta.lambda_ap = u1p.attenuation;

  const double offset = split.h_z.identity_offset();
  const double e_hf_z = expectation_in_basis_state(split.h_z, profile.hf);
  const std::uint64_t full = all_qubits(L);
  double phase = trial.s * trial.energy(branch);

  c.gates.emplace_back(AncillaPrepare{});
  const auto& terms = split.h_i.terms();
  for (const SampledEvolution* ev : {&u1, &u2, &u1p}) {
    for (const auto& step : lower(*ev)) {
      if (step.kind == EvolutionStep::Kind::kRotation) {
        c.gates.emplace_back(
            ControlledPauliRotation{terms[step.term].string, step.value});
      } else if (mode == DiagonalMode::kUncontrolled) {
        c.gates.emplace_back(DiagonalSegment{step.value, full});
        phase += step.value * e_hf_z;
      } else {
        c.gates.emplace_back(ControlledDiagonalSegment{step.value, full});
        phase += step.value * offset;
      }
    }
  }
  c.gates.emplace_back(AncillaPhase{phase});
  c.gates.emplace_back(AncillaMeasureY{1});
  c.gates.emplace_back(PhysicalMeasureZ{});
  return c;
}

std::pair<Circuit, double> strip_final_phase(const Circuit& c) {
  Circuit body = c;
  double phase = 0.0;
  for (std::size_t i = body.gates.size(); i-- > 0;) {
    if (const auto* p = std::get_if<AncillaPhase>(&body.gates[i])) {
      phase = p->angle;
      body.gates.erase(body.gates.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
    if (!std::holds_alternative<AncillaMeasureY>(body.gates[i]) &&
        !std::holds_alternative<PhysicalMeasureZ>(body.gates[i])) {
      break;
    }
  }
  return {std::move(body), phase};
}

Circuit reversed(const Circuit& c) {
  Circuit out = c;
  out.meta.direction_sign = -c.meta.direction_sign;
  out.gates.clear();
  std::vector<Gate> body;
  std::vector<Gate> tail;
  for (const auto& g : c.gates) {
    if (std::holds_alternative<AncillaPrepare>(g)) continue;
    if (std::holds_alternative<AncillaMeasureY>(g) ||
        std::holds_alternative<PhysicalMeasureZ>(g)) {
      tail.push_back(g);
    } else {
      body.push_back(g);
    }
  }
  out.gates.emplace_back(AncillaPrepare{});
  for (auto it = body.rbegin(); it != body.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const PauliRotation& r) {
                     out.gates.emplace_back(PauliRotation{r.string, -r.angle});
                   },
                   [&](const ControlledPauliRotation& r) {
                     out.gates.emplace_back(
                         ControlledPauliRotation{r.string, -r.angle});
                   },
                   [&](const DiagonalSegment& s) {
                     out.gates.emplace_back(DiagonalSegment{-s.duration, s.mask});
                   },
                   [&](const ControlledDiagonalSegment& s) {
                     out.gates.emplace_back(
                         ControlledDiagonalSegment{-s.duration, s.mask});
                   },
                   [&](const AncillaPhase& p) {
                     out.gates.emplace_back(AncillaPhase{-p.angle});
                   },
                   [](const auto&) {},
               },
               *it);
  }
  for (auto& g : tail) {
    if (auto* m = std::get_if<AncillaMeasureY>(&g)) m->basis_sign = -m->basis_sign;
    out.gates.push_back(g);
  }
  return out;
}

Circuit parity_reduce(const Circuit& c, const OccupationProfile& profile) {
  PauliString pi(c.qubits);
  for (std::size_t q = 0; q < c.qubits; ++q) pi.set(q, Axis::Z);
  auto rewrite = [&](PauliString& p, double& angle) {
    if ((p.count(Axis::X) + p.count(Axis::Y)) % 2 != 0) {
      throw Error(ErrorCode::kParityViolation,
                  "rotation string " + p.str() + " anticommutes with parity");
    }
    if (p.count(Axis::Z) <= p.count(Axis::I)) return;
    const auto prod = pauli_product(p, pi);
    // P Pi is Hermitian, so its phase is +1 or -1.
    const double sign = prod.phase().real();
    p = prod.string;
    angle *= profile.eta * sign;
  };
  Circuit out = c;
  for (auto& g : out.gates) {
    if (auto* r = std::get_if<PauliRotation>(&g)) rewrite(r->string, r->angle);
    if (auto* r = std::get_if<ControlledPauliRotation>(&g)) {
      rewrite(r->string, r->angle);
    }
  }
  return out;
}

Circuit occupation_reduce(const Circuit& c, const OccupationProfile& profile) {
  Circuit out = c;
  out.gates.clear();
  std::uint64_t live = all_qubits(c.qubits);
  // Z on a live qubit evaluates to +1 or -1 on the reference state.
  auto z_sign = [&](std::uint64_t bit) {
    return (profile.hf.bits & bit) ? -1.0 : 1.0;
  };
  auto reduce_string = [&](PauliString& p, double& angle) {
    const std::uint64_t flips = p.x_mask() & live;
    const std::uint64_t fixed_z = p.z_mask() & ~p.x_mask() & live;
    for (std::uint64_t b = fixed_z; b != 0; b &= b - 1) {
      angle *= z_sign(b & -b);
    }
    p = PauliString(p.size(), p.x_mask(), p.z_mask() & ~fixed_z);
    live &= ~flips;
  };
  for (const auto& g : c.gates) {
    if (live == 0) {
      out.gates.push_back(g);
      continue;
    }
    std::visit(
        Overloaded{
            [&](const PauliRotation& r) {
              PauliRotation n = r;
              reduce_string(n.string, n.angle);
              if (!n.string.is_identity()) out.gates.emplace_back(n);
            },
            [&](const ControlledPauliRotation& r) {
              ControlledPauliRotation n = r;
              reduce_string(n.string, n.angle);
              if (n.string.is_identity()) {
                out.gates.emplace_back(AncillaPhase{n.angle});
              } else {
                out.gates.emplace_back(n);
              }
            },
            [&](const DiagonalSegment& s) {
              // Same phase on both ancilla branches: a global phase.
              DiagonalSegment n{s.duration, s.mask & ~live};
              if (n.mask != 0) out.gates.emplace_back(n);
            },
            [&](const ControlledDiagonalSegment& s) {
              double phase = 0.0;
              for (std::uint64_t b = s.mask & live; b != 0; b &= b - 1) {
                const std::uint64_t bit = b & -b;
                const std::size_t q = c.qubits - 1 - std::countr_zero(bit);
                phase += s.duration * c.z_coefficients[q] * z_sign(bit);
              }
              if (phase != 0.0) out.gates.emplace_back(AncillaPhase{phase});
              ControlledDiagonalSegment n{s.duration, s.mask & ~live};
              if (n.mask != 0) out.gates.emplace_back(n);
            },
            [&](const auto& other) { out.gates.emplace_back(other); },
        },
        g);
  }
  return out;
}

Circuit merge_ancilla_phases(const Circuit& c) {
  Circuit out = c;
  out.gates.clear();
  double phase = 0.0;
  bool any = false;
  for (const auto& g : c.gates) {
    if (const auto* p = std::get_if<AncillaPhase>(&g)) {
      phase += p->angle;
      any = true;
      continue;
    }
    if (std::holds_alternative<AncillaMeasureY>(g) && any) {
      out.gates.emplace_back(AncillaPhase{phase});
      any = false;
    }
    out.gates.push_back(g);
  }
  if (any) out.gates.emplace_back(AncillaPhase{phase});
  return out;
}

std::uint64_t gate_qubits(const Gate& g, std::size_t qubits) {
  const std::uint64_t anc = std::uint64_t{1} << qubits;
  return std::visit(
      Overloaded{
          [](const PauliRotation& r) { return r.string.support_mask(); },
          [&](const ControlledPauliRotation& r) {
            return r.string.support_mask() | anc;
          },
          [](const DiagonalSegment& s) { return s.mask; },
          [&](const ControlledDiagonalSegment& s) { return s.mask | anc; },
          [&](const AncillaPhase&) { return anc; },
          [&](const AncillaPrepare&) { return anc; },
          [&](const AncillaMeasureY&) { return anc; },
          [&](const PhysicalMeasureZ&) { return all_qubits(qubits); },
      },
      g);
}

int gate_cost(const Gate& g, const GateCostModel& costs) {
  return std::visit(
      Overloaded{
          [&](const PauliRotation& r) {
            return costs.rotation(r.string.weight(), false);
          },
          [&](const ControlledPauliRotation& r) {
            return costs.rotation(r.string.weight(), true);
          },
          [&](const ControlledDiagonalSegment& s) {
            return costs.controlled_z_phase * std::popcount(s.mask);
          },
          [](const auto&) { return 0; },
      },
      g);
}

int DepthTracker::add(std::uint64_t wires, int cost) {
  if (cost <= 0 || wires == 0) return 0;
  std::size_t layer = 0;
  for (std::uint64_t b = wires; b != 0; b &= b - 1) {
    layer = std::max(layer, ready_[std::countr_zero(b)]);
  }
  for (std::uint64_t b = wires; b != 0; b &= b - 1) {
    ready_[std::countr_zero(b)] = layer + 1;
  }
  if (layer >= layer_cost_.size()) layer_cost_.resize(layer + 1, 0);
  const int before = layer_cost_[layer];
  if (cost <= before) return 0;
  layer_cost_[layer] = cost;
  depth_ += cost - before;
  return cost - before;
}

std::vector<std::pair<int, int>> tqg_pairs(const Gate& g, std::size_t qubits) {
  std::vector<std::pair<int, int>> out;
  const int anc = static_cast<int>(qubits);
  auto ladder = [&](std::uint64_t support, bool controlled) {
    if (support == 0) return;
    std::vector<int> wires;
    for (std::uint64_t m = support; m != 0; m &= m - 1) {
      wires.push_back(std::countr_zero(m));
    }
    // Target: the lowest bit, i.e. the rightmost qubit of the support.
    const int t = wires.front();
    for (std::size_t i = 1; i < wires.size(); ++i) out.emplace_back(wires[i], t);
    if (controlled) out.emplace_back(anc, t);
    for (std::size_t i = wires.size(); i-- > 1;) out.emplace_back(wires[i], t);
  };
  std::visit(Overloaded{
                 [&](const PauliRotation& r) { ladder(r.string.support_mask(), false); },
                 [&](const ControlledPauliRotation& r) {
                   ladder(r.string.support_mask(), true);
                 },
                 [&](const ControlledDiagonalSegment& s) {
                   for (std::uint64_t m = s.mask; m != 0; m &= m - 1) {
                     out.emplace_back(anc, std::countr_zero(m));
                   }
                 },
                 [](const auto&) {},
             },
             g);
  return out;
}

int DepthTracker::add_gate(const Gate& g, std::size_t qubits,
                           std::uint64_t skip) {
  int ticks = 0;
  for (const auto& [a, b] : tqg_pairs(g, qubits)) {
    const std::uint64_t m = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    if (m & skip) continue;
    ticks += add(m, 1);
  }
  return ticks;
}

int count_tqg(const Circuit& c, const GateCostModel& costs) {
  int total = 0;
  for (const auto& g : c.gates) total += gate_cost(g, costs);
  return total;
}

int depth_tqg(const Circuit& c, const GateCostModel& costs) {
  DepthTracker t(c.qubits + 1);
  // The ladder layout is fixed by the default model; other models layer
  // whole gates.
  const bool ladder = costs == GateCostModel{};
  for (const auto& g : c.gates) {
    if (ladder) {
      t.add_gate(g, c.qubits);
    } else {
      t.add(gate_qubits(g, c.qubits), gate_cost(g, costs));
    }
  }
  return t.depth();
}

SampledEvolution draw(const SplitHamiltonian& split, ScheduleKind kind,
                      double duration, double tau, Direction d,
                      std::uint64_t master, std::size_t index,
                      std::uint64_t slot) {
  SamplerConfig cfg;
  cfg.duration = duration;
  cfg.tau = tau;
  cfg.direction = d;
  cfg.seed = master;
  cfg.stream = (static_cast<std::uint64_t>(index) << 2) | slot;
  return sample_evolution(split, SweepSchedule{kind}, cfg);
}

StitchedPair build_pair(const SplitHamiltonian& split,
                        const TrialEnergies& trial,
                        const OccupationProfile& profile,
                        const EnsembleSpec& spec, std::size_t index) {
  StitchedPair p;
  p.u1 = draw(split, ScheduleKind::kLinear, spec.T, spec.tau,
              Direction::kForward, spec.master_seed, index, kSlotU1);
  // exp(-i s H): the adjoint of a constant-schedule draw.
  p.u2 = draw(split, ScheduleKind::kConstant, trial.s, spec.tau,
              Direction::kReverse, spec.master_seed, index, kSlotU2);
  p.u1p = draw(split, ScheduleKind::kLinear, spec.T, spec.tau,
               Direction::kReverse, spec.master_seed, index, kSlotU1p);
  const bool reverse = spec.alternate_direction && (index % 2 == 1);
  auto make = [&](TrialBranch b) {
    Circuit c = build_hadamard_test(split, p.u1, p.u2, p.u1p, trial, b,
                                    profile, spec.diagonal_mode);
    if (reverse) c = reversed(c);
    if (spec.parity_reduction) c = parity_reduce(c, profile);
    if (spec.occupation_reduction) c = occupation_reduce(c, profile);
    c = merge_ancilla_phases(c);
    c.meta.index = index;
    return c;
  };
  p.plus = make(TrialBranch::kPlus);
  p.minus = make(TrialBranch::kMinus);
  return p;
}

std::vector<StitchedPair> build_ensemble(const SplitHamiltonian& split,
                                         const TrialEnergies& trial,
                                         const OccupationProfile& profile,
                                         const EnsembleSpec& spec) {
  if (spec.n_circuits == 0) {
    throw Error(ErrorCode::kInvalidArgument, "ensemble needs >= 1 circuit");
  }
  std::vector<StitchedPair> out;
  out.reserve(spec.n_circuits);
  for (std::size_t i = 0; i < spec.n_circuits; ++i) {
    out.push_back(build_pair(split, trial, profile, spec, i));
  }
  return out;
}

std::string ensemble_stats_csv(const std::vector<StitchedPair>& pairs,
                               const GateCostModel& costs) {
  std::ostringstream os;
  os << "index,branch,direction,tqg,depth\n";
  for (const auto& p : pairs) {
    for (const Circuit* c : {&p.plus, &p.minus}) {
      os << c->meta.index << ',' << to_string(c->meta.branch) << ','
         << c->meta.direction_sign << ',' << count_tqg(*c, costs) << ','
         << depth_tqg(*c, costs) << '\n';
    }
  }
  return os.str();
}

}  // namespace aqpe
