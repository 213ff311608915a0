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

#include "aqpe/shift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>

#include "aqpe/error.hpp"
#include "aqpe/pauli_sum.hpp"

namespace aqpe {

bool is_single_z(const PauliString& p) {
  return p.is_diagonal() && p.weight() == 1;
}

std::vector<double> SplitHamiltonian::z_coefficients() const {
  std::vector<double> out(h_z.qubit_count(), 0.0);
  for (const auto& t : h_z.terms()) {
    for (std::size_t q = 0; q < out.size(); ++q) {
      if (t.string[q] == Axis::Z) out[q] += t.coefficient;
    }
  }
  return out;
}

SplitHamiltonian split(const PauliHamiltonian& h) {
  std::vector<PauliTerm> z;
  std::vector<PauliTerm> rest;
  double mu = 0.0;
  for (const auto& t : h.terms()) {
    if (is_single_z(t.string)) {
      z.push_back(t);
    } else {
      rest.push_back(t);
      mu += std::abs(t.coefficient);
    }
  }
  return {PauliHamiltonian(h.qubit_count(), h.identity_offset(), std::move(z)),
          PauliHamiltonian(h.qubit_count(), 0.0, std::move(rest)), mu};
}

Sector sector_of(const BasisState& reference, SpinOrdering o) {
  return {std::popcount(reference.bits & spin_mask(reference.n, o, 0)),
          std::popcount(reference.bits & spin_mask(reference.n, o, 1))};
}

namespace {

// n^2 - nbar^2 for the number operator over `on`.
PauliSum squared_shift(std::size_t qubits, const std::vector<std::size_t>& on,
                       int nbar) {
  const PauliSum n = PauliSum::from_hamiltonian(number_operator(qubits, on));
  PauliSum out = n * n;
  out -= PauliSum::identity(qubits, static_cast<double>(nbar * nbar));
  return out;
}

std::array<PauliSum, 3> shift_operators(std::size_t qubits, const Sector& s,
                                        SpinOrdering o) {
  std::vector<std::size_t> all(qubits);
  for (std::size_t q = 0; q < qubits; ++q) all[q] = q;
  return {squared_shift(qubits, spin_qubits(qubits, o, 0), s.n_up),
          squared_shift(qubits, spin_qubits(qubits, o, 1), s.n_down),
          squared_shift(qubits, all, s.n_total())};
}

}  // namespace

PauliHamiltonian apply_shift(const PauliHamiltonian& h, const ShiftParams& p) {
  const auto ops = shift_operators(h.qubit_count(), p.sector, p.ordering);
  PauliSum total = PauliSum::from_hamiltonian(h);
  for (std::size_t i = 0; i < 3; ++i) {
    if (p.alpha[i] != 0.0) total += ops[i] * PauliSum::Complex(p.alpha[i]);
  }
  // Keep the input's term order; new strings follow in canonical order.
  std::vector<PauliTerm> terms;
  double offset = 0.0;
  std::vector<std::pair<PauliString, double>> extra;
  for (const auto& [s, c] : total.terms()) {
    if (s.is_identity()) {
      offset = c.real();
      continue;
    }
    bool present = false;
    for (const auto& t : h.terms()) present = present || t.string == s;
    if (!present) extra.emplace_back(s, c.real());
  }
  for (const auto& t : h.terms()) {
    terms.push_back({total.coefficient(t.string).real(), t.string});
  }
  std::sort(extra.begin(), extra.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [s, c] : extra) terms.push_back({c, s});
  return PauliHamiltonian::merged(h.qubit_count(), offset, terms);
}

ShiftResult optimize_shift(const PauliHamiltonian& h, const Sector& sector,
                           SpinOrdering ordering) {
  const std::size_t L = h.qubit_count();
  for (int spin = 0; spin < 2; ++spin) {
    if (!commutes_with(h, number_operator(L, spin_qubits(L, ordering, spin)))) {
      throw Error(ErrorCode::kSymmetryViolation,
                  "Hamiltonian does not conserve the " +
                      std::string(spin == 0 ? "up" : "down") +
                      "-spin particle number under the " +
                      std::string(to_string(ordering)) + " ordering");
    }
  }
  const auto ops = shift_operators(L, sector, ordering);

  // mu_I(alpha) = sum_k |c_k + d_k . alpha| over non-single-Z strings.
  std::map<PauliString, std::pair<double, Eigen::Vector3d>> lines;
  for (const auto& t : h.terms()) {
    if (!is_single_z(t.string)) {
      lines[t.string] = {t.coefficient, Eigen::Vector3d::Zero()};
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (const auto& [s, c] : ops[i].terms()) {
      if (s.is_identity() || is_single_z(s) || std::abs(c) < 1e-14) continue;
      auto it = lines.try_emplace(s, 0.0, Eigen::Vector3d::Zero()).first;
      it->second.second(i) += c.real();
    }
  }
  std::vector<double> c0;
  std::vector<Eigen::Vector3d> d;
  double constant = 0.0;
  for (const auto& [s, cd] : lines) {
    if (cd.second.norm() < 1e-14) {
      constant += std::abs(cd.first);
    } else {
      c0.push_back(cd.first);
      d.push_back(cd.second);
    }
  }
  auto objective = [&](const Eigen::Vector3d& a) {
    double v = constant;
    for (std::size_t k = 0; k < d.size(); ++k) v += std::abs(c0[k] + d[k].dot(a));
    return v;
  };

  // The minimum of a convex piecewise-linear function is attained where some
  // independent set of kinks intersect; enumerate those intersections.
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_value = objective(best);
  const std::size_t m = d.size();
  auto consider = [&](const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd a(rows.size(), 3);
    Eigen::VectorXd b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      a.row(static_cast<Eigen::Index>(r)) = d[rows[r]].transpose();
      b(static_cast<Eigen::Index>(r)) = -c0[rows[r]];
    }
    const Eigen::Vector3d x = a.completeOrthogonalDecomposition().solve(b);
    const double v = objective(x);
    if (v < best_value - 1e-15 ||
        (std::abs(v - best_value) <= 1e-15 && x.norm() < best.norm())) {
      best_value = v;
      best = x;
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    consider({i});
    for (std::size_t j = i + 1; j < m; ++j) {
      consider({i, j});
      for (std::size_t k = j + 1; k < m; ++k) consider({i, j, k});
    }
  }

  ShiftResult r;
  r.params.alpha = {best(0), best(1), best(2)};
  r.params.sector = sector;
  r.params.ordering = ordering;
  r.mu_i_before = split(h).mu_i;
  r.split = split(apply_shift(h, r.params));
  return r;
}

}  // namespace aqpe
