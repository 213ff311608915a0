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

#include "aqpe/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "aqpe/error.hpp"
#include "aqpe/rng.hpp"

namespace aqpe {

namespace {

double energy_of(const PauliHamiltonian& h, const CVector& psi) {
  return psi.dot(apply_hamiltonian(h, psi)).real() / psi.squaredNorm();
}

std::vector<std::size_t> resolve_order(const std::vector<std::size_t>& order,
                                       std::size_t n) {
  if (order.empty()) {
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted.size() != n || sorted[i] != i) {
      throw Error(ErrorCode::kInvalidArgument,
                  "term order must be a permutation of " + std::to_string(n) +
                      " terms");
    }
  }
  return order;
}

}  // namespace

std::vector<PauliTerm> trotter_terms(const SplitHamiltonian& split) {
  std::vector<PauliTerm> out = split.h_z.terms();
  const auto& hi = split.h_i.terms();
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

void TrotterPlan::validate(std::size_t n_terms) const {
  if (k == 0 || m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "Trotter k and m must be >= 1");
  }
  resolve_order(term_order, n_terms);
}

double trotter_path_error(const BaselineContext& ctx,
                          const SweepSchedule& schedule, double T,
                          std::size_t k) {
  const std::size_t L = ctx.split.qubit_count();
  require_dense(L);
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  const CMatrix hz = to_dense(ctx.split.h_z);
  const CMatrix hi = to_dense(ctx.split.h_i);
  CVector psi = basis_vector(L, ctx.initial.bits);
  const double dt = T / static_cast<double>(k);
  for (std::size_t a = 1; a <= k; ++a) {
    const double u = static_cast<double>(a) / static_cast<double>(k);
    const CMatrix h = hz + schedule.w(u) * hi;
    psi = hermitian_exp(h, dt) * psi;
  }
  return (energy_of(ctx.split.full(), psi) - ctx.e_gs) * 1e3;
}

int trotter_term_cost(const PauliString& p, const GateCostModel& costs) {
  const std::size_t w = p.weight();
  if (w <= 1) return 0;
  const int ladder = costs.rotation(w, false);
  return p.is_diagonal() ? ladder - 1 : ladder;
}

TrotterResult trotter_full_error(const BaselineContext& ctx,
                                 const SweepSchedule& schedule, double T,
                                 const TrotterPlan& plan,
                                 const GateCostModel& costs) {
  const std::size_t L = ctx.split.qubit_count();
  require_dense(L);
  const auto terms = trotter_terms(ctx.split);
  plan.validate(terms.size());
  const auto order = resolve_order(plan.term_order, terms.size());
  const std::size_t n_z = ctx.split.h_z.terms().size();

  CVector psi = basis_vector(L, ctx.initial.bits);
  const double dt = T / static_cast<double>(plan.k * plan.m);
  for (std::size_t a = 1; a <= plan.k; ++a) {
    const double w =
        schedule.w(static_cast<double>(a) / static_cast<double>(plan.k));
    for (std::size_t r = 0; r < plan.m; ++r) {
      for (std::size_t n : order) {
        const double scale = n < n_z ? 1.0 : w;
        apply_pauli_rotation(terms[n].string, dt * scale * terms[n].coefficient,
                             psi);
      }
    }
  }
  TrotterResult out;
  out.error_mha = (energy_of(ctx.split.full(), psi) - ctx.e_gs) * 1e3;
  long long per_layer = 0;
  for (const auto& t : terms) per_layer += trotter_term_cost(t.string, costs);
  out.tqg = static_cast<long long>(plan.k * plan.m) * per_layer;
  return out;
}

DirectSampling direct_sampling_shots(const PauliHamiltonian& h,
                                     const CVector& ground_state,
                                     double target_se) {
  if (!(target_se > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target error must be positive");
  }
  DirectSampling d;
  d.mu = h.one_norm();
  const double e = energy_of(h, ground_state) - h.identity_offset();
  d.variance = std::max(0.0, d.mu * d.mu - e * e);
  d.shots = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(
             std::ceil(d.variance / (target_se * target_se) - 1e-9)));
  return d;
}

MonteCarloVariance direct_sampling_monte_carlo(const PauliHamiltonian& h,
                                               const CVector& ground_state,
                                               std::size_t shots,
                                               std::uint64_t seed) {
  const auto& terms = h.terms();
  std::vector<double> cumulative;
  std::vector<double> p_plus;
  double mu = 0.0;
  CVector tmp(ground_state.size());
  const double norm = ground_state.squaredNorm();
  for (const auto& t : terms) {
    mu += std::abs(t.coefficient);
    cumulative.push_back(mu);
    apply_pauli(t.string, ground_state, tmp);
    const double ev = ground_state.dot(tmp).real() / norm;
    p_plus.push_back(0.5 * (1.0 + ev));
  }
  Rng rng(seed);
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  for (std::size_t i = 0; i < shots; ++i) {
    const double u = rng.uniform() * mu;
    std::size_t n = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
    n = std::min(n, terms.size() - 1);
    const double outcome = rng.uniform() < p_plus[n] ? 1.0 : -1.0;
    const double x =
        mu * (terms[n].coefficient < 0 ? -1.0 : 1.0) * outcome;
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  MonteCarloVariance mc;
  mc.shots = shots;
  const double n = static_cast<double>(shots);
  mc.mean = s1 / n;
  mc.variance = (s2 - n * mc.mean * mc.mean) / (n - 1.0);
  // Var(s^2) ~ (m4 - sigma^4) / n with m4 the fourth central moment.
  const double m = mc.mean;
  const double m4 = s4 / n - 4 * m * s3 / n + 6 * m * m * s2 / n -
                    3 * std::pow(m, 4);
  mc.variance_se =
      std::sqrt(std::max(0.0, m4 - mc.variance * mc.variance) / n);
  return mc;
}

double iqpe_precision(double tau_step, std::size_t l) {
  return std::ldexp(1.0, -static_cast<int>(l + 1)) / tau_step;
}

IqpeReport iqpe_analysis(const BaselineContext& ctx, const IqpeConfig& cfg,
                         const GateCostModel& costs) {
  if (!(cfg.tau_step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "iQPE step must be positive");
  }
  const std::size_t L = ctx.split.qubit_count();
  require_dense(L);
  const auto terms = trotter_terms(ctx.split);
  const auto order = resolve_order(cfg.term_order, terms.size());
  const Eigen::Index dim = Eigen::Index{1} << L;

  CMatrix u(dim, dim);
  const Complex global = std::polar(1.0, cfg.tau_step * ctx.split.h_z.identity_offset());
  for (Eigen::Index c = 0; c < dim; ++c) {
    CVector col = basis_vector(L, static_cast<std::uint64_t>(c));
    for (std::size_t n : order) {
      apply_pauli_rotation(terms[n].string, cfg.tau_step * terms[n].coefficient,
                           col);
    }
    u.col(c) = global * col;
  }
  Eigen::ComplexEigenSolver<CMatrix> es(u);
  IqpeReport r;
  Eigen::Index best = 0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const CVector v = es.eigenvectors().col(j).normalized();
    const double ov = std::norm(ctx.ground_state.normalized().dot(v));
    if (ov > r.overlap) {
      r.overlap = ov;
      best = j;
    }
  }
  r.energy = std::arg(es.eigenvalues()(best)) / cfg.tau_step;
  r.error_mha = (r.energy - ctx.e_gs) * 1e3;
  r.precision_mha = iqpe_precision(cfg.tau_step, cfg.l_max) * 1e3;

  const Eigen::SelfAdjointEigenSolver<CMatrix> hs(to_dense(ctx.split.full()),
                                                  Eigen::EigenvaluesOnly);
  const double radius = hs.eigenvalues().cwiseAbs().maxCoeff();
  r.phase_wrap = cfg.tau_step * radius >= std::numbers::pi;

  for (const auto& t : terms) {
    const bool single_z = t.string.weight() == 1 && t.string.is_diagonal();
    r.step_cost += single_z ? costs.controlled_z_phase
                            : costs.rotation(t.string.weight(), true);
  }
  r.max_tqg = r.step_cost << cfg.l_max;
  r.total_tqg = r.step_cost * ((1LL << (cfg.l_max + 1)) - 1);
  return r;
}

}  // namespace aqpe
