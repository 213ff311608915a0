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
#include <vector>

#include "aqpe/cost.hpp"
#include "aqpe/dense.hpp"
#include "aqpe/sampler.hpp"
#include "aqpe/shift.hpp"

namespace aqpe {

/// Reference data shared by the baseline calculations.
struct BaselineContext {
  SplitHamiltonian split;
  BasisState initial;
  double e_gs = 0.0;
  CVector ground_state;
};

/// Terms of H_Z + H_I in application order: H_Z terms then H_I terms, each in
/// stored order. Entry n of a TrotterPlan::term_order indexes this list.
std::vector<PauliTerm> trotter_terms(const SplitHamiltonian& split);

struct TrotterPlan {
  std::size_t k = 4;
  std::size_t m = 2;
  /// Permutation of trotter_terms(); empty keeps the stored order.
  std::vector<std::size_t> term_order;

  void validate(std::size_t n_terms) const;
};

/// prod_a exp(i H(aT/k) T/k) |initial> with exact exponentials; returns the
/// energy error against e_gs in mHa.
double trotter_path_error(const BaselineContext& ctx,
                          const SweepSchedule& schedule, double T,
                          std::size_t k);

struct TrotterResult {
  double error_mha = 0.0;
  long long tqg = 0;
};

/// Two-qubit-gate cost of exp(i t P) outside a Hadamard test. Z-only strings
/// use one native ZZ rotation at the center of the ladder.
int trotter_term_cost(const PauliString& p, const GateCostModel& costs);

/// Each path factor replaced by m first-order layers in the plan's order.
TrotterResult trotter_full_error(const BaselineContext& ctx,
                                 const SweepSchedule& schedule, double T,
                                 const TrotterPlan& plan,
                                 const GateCostModel& costs = {});

struct DirectSampling {
  double mu = 0.0;        // sum of |a_n| over non-identity terms
  double variance = 0.0;  // single-shot variance in Ha^2
  std::uint64_t shots = 0;
};

/// Shot count of the l1 importance-sampled energy estimator for a target
/// standard error (Hartree). At least one shot.
DirectSampling direct_sampling_shots(const PauliHamiltonian& h,
                                     const CVector& ground_state,
                                     double target_se);

struct MonteCarloVariance {
  double mean = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  std::size_t shots = 0;
};

/// Empirical single-shot statistics of the same estimator.
MonteCarloVariance direct_sampling_monte_carlo(const PauliHamiltonian& h,
                                               const CVector& ground_state,
                                               std::size_t shots,
                                               std::uint64_t seed);

struct IqpeConfig {
  double tau_step = 0.4;
  std::size_t l_max = 10;
  std::vector<std::size_t> term_order;  // as in TrotterPlan
};

struct IqpeReport {
  double energy = 0.0;
  double error_mha = 0.0;
  double overlap = 0.0;  // |<GS|v>|^2 of the selected eigenvector
  double precision_mha = 0.0;
  long long step_cost = 0;
  long long total_tqg = 0;
  long long max_tqg = 0;
  bool phase_wrap = false;
};

/// 2^-(l+1) / tau in Hartree.
double iqpe_precision(double tau_step, std::size_t l);

IqpeReport iqpe_analysis(const BaselineContext& ctx, const IqpeConfig& cfg,
                         const GateCostModel& costs = {});

}  // namespace aqpe
