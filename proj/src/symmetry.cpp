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

#include "aqpe/symmetry.hpp"

#include <bit>
#include <string>

#include "aqpe/dense.hpp"
#include "aqpe/error.hpp"
#include "aqpe/pauli_sum.hpp"

namespace aqpe {

std::string_view to_string(SpinOrdering o) {
  return o == SpinOrdering::kBlocked ? "blocked" : "interleaved";
}

SpinOrdering parse_spin_ordering(std::string_view text) {
  if (text == "blocked") return SpinOrdering::kBlocked;
  if (text == "interleaved") return SpinOrdering::kInterleaved;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown spin ordering '" + std::string(text) + "'");
}

std::string_view to_string(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::kParity: return "parity";
    case SymmetryKind::kNumberUp: return "n_up";
    case SymmetryKind::kNumberDown: return "n_down";
    case SymmetryKind::kNumberTotal: return "n_tot";
  }
  return "?";
}

std::vector<std::size_t> spin_qubits(std::size_t qubits, SpinOrdering o,
                                     int spin) {
  if (qubits % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "spin sectors need an even number of qubits");
  }
  std::vector<std::size_t> out;
  const std::size_t half = qubits / 2;
  for (std::size_t i = 0; i < half; ++i) {
    out.push_back(o == SpinOrdering::kBlocked
                      ? i + static_cast<std::size_t>(spin) * half
                      : 2 * i + static_cast<std::size_t>(spin));
  }
  return out;
}

std::uint64_t spin_mask(std::size_t qubits, SpinOrdering o, int spin) {
  std::uint64_t m = 0;
  for (auto q : spin_qubits(qubits, o, spin)) {
    m |= std::uint64_t{1} << (qubits - 1 - q);
  }
  return m;
}

PauliHamiltonian number_operator(std::size_t qubits,
                                 const std::vector<std::size_t>& on) {
  std::vector<PauliTerm> terms;
  for (auto q : on) {
    PauliString z(qubits);
    z.set(q, Axis::Z);
    terms.push_back({-0.5, z});
  }
  return PauliHamiltonian::merged(qubits, 0.5 * static_cast<double>(on.size()),
                                  terms);
}

PauliHamiltonian parity_operator(std::size_t qubits) {
  PauliString z(qubits);
  for (std::size_t q = 0; q < qubits; ++q) z.set(q, Axis::Z);
  return PauliHamiltonian(qubits, 0.0, {{1.0, z}});
}

SymmetryOperator make_symmetry(SymmetryKind kind, std::size_t qubits,
                               SpinOrdering o, const BasisState& reference) {
  SymmetryOperator s{kind, {}, 0.0};
  switch (kind) {
    case SymmetryKind::kParity:
      s.op = parity_operator(qubits);
      break;
    case SymmetryKind::kNumberUp:
      s.op = number_operator(qubits, spin_qubits(qubits, o, 0));
      break;
    case SymmetryKind::kNumberDown:
      s.op = number_operator(qubits, spin_qubits(qubits, o, 1));
      break;
    case SymmetryKind::kNumberTotal: {
      std::vector<std::size_t> all(qubits);
      for (std::size_t q = 0; q < qubits; ++q) all[q] = q;
      s.op = number_operator(qubits, all);
      break;
    }
  }
  s.sector_value = expectation_in_basis_state(s.op, reference);
  return s;
}

double dense_commutator_norm(const PauliHamiltonian& h,
                             const PauliHamiltonian& s) {
  const CMatrix a = to_dense(h);
  const CMatrix b = to_dense(s);
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

bool commutes_with(const PauliHamiltonian& h, const PauliHamiltonian& s,
                   double tol) {
  if (h.qubit_count() != s.qubit_count()) {
    throw Error(ErrorCode::kMismatchedQubitCount,
                "Hamiltonian and symmetry act on different registers");
  }
  if (h.qubit_count() <= 8) return dense_commutator_norm(h, s) <= tol;
  // Pauli commutators are exact, so cancellation is decided term by term.
  return commutator(PauliSum::from_hamiltonian(h), PauliSum::from_hamiltonian(s))
             .max_abs() <= tol;
}

bool commutes_with(const PauliHamiltonian& h, const SymmetryOperator& s,
                   double tol) {
  return commutes_with(h, s.op, tol);
}

std::optional<SpinOrdering> detect_spin_ordering(const PauliHamiltonian& h) {
  const std::size_t n = h.qubit_count();
  if (n % 2 != 0) return std::nullopt;
  for (auto o : {SpinOrdering::kBlocked, SpinOrdering::kInterleaved}) {
    if (commutes_with(h, number_operator(n, spin_qubits(n, o, 0))) &&
        commutes_with(h, number_operator(n, spin_qubits(n, o, 1)))) {
      return o;
    }
  }
  return std::nullopt;
}

std::vector<std::uint64_t> particle_sector(std::size_t qubits, SpinOrdering o,
                                           const BasisState& reference) {
  require_dense(qubits);
  const std::uint64_t up = spin_mask(qubits, o, 0);
  const std::uint64_t down = spin_mask(qubits, o, 1);
  const int n_up = std::popcount(reference.bits & up);
  const int n_down = std::popcount(reference.bits & down);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << qubits); ++x) {
    if (std::popcount(x & up) == n_up && std::popcount(x & down) == n_down) {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace aqpe
