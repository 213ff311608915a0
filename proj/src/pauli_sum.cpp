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

#include "aqpe/pauli_sum.hpp"

#include <algorithm>
#include <cmath>

#include "aqpe/error.hpp"

namespace aqpe {

PauliSum PauliSum::identity(std::size_t qubit_count, Complex scale) {
  PauliSum s(qubit_count);
  s.add(PauliString(qubit_count), scale);
  return s;
}

PauliSum PauliSum::single(const PauliString& p, Complex coefficient) {
  PauliSum s(p.size());
  s.add(p, coefficient);
  return s;
}

PauliSum PauliSum::from_hamiltonian(const PauliHamiltonian& h) {
  PauliSum s(h.qubit_count());
  if (h.identity_offset() != 0.0) {
    s.add(PauliString(h.qubit_count()), h.identity_offset());
  }
  for (const auto& t : h.terms()) s.add(t.string, t.coefficient);
  return s;
}

void PauliSum::add(const PauliString& p, Complex coefficient) {
  if (p.size() != n_) {
    throw Error(ErrorCode::kLengthMismatch,
                "string " + p.str() + " does not match sum on " +
                    std::to_string(n_) + " qubits");
  }
  terms_[p] += coefficient;
}

PauliSum::Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex factor) {
  for (auto& [p, c] : terms_) c *= factor;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_ != b.n_) {
    throw Error(ErrorCode::kLengthMismatch,
                "cannot multiply sums on different qubit counts");
  }
  PauliSum out(a.n_);
  for (const auto& [p, cp] : a.terms_) {
    for (const auto& [q, cq] : b.terms_) {
      const auto prod = pauli_product(p, q);
      out.terms_[prod.string] += cp * cq * prod.phase();
    }
  }
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_[p] = std::conj(c);
  return out;
}

PauliSum PauliSum::pruned(double tol) const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) {
    if (std::abs(c) > tol) out.terms_[p] = c;
  }
  return out;
}

double PauliSum::max_abs() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

PauliHamiltonian PauliSum::to_hamiltonian(double tol, double drop_below) const {
  std::vector<std::pair<PauliString, Complex>> sorted(terms_.begin(),
                                                      terms_.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  double offset = 0.0;
  std::vector<PauliTerm> terms;
  for (const auto& [p, c] : sorted) {
    if (std::abs(c.imag()) > tol) {
      throw Error(ErrorCode::kImaginaryCoefficient,
                  "term " + p.str() + " has imaginary part " +
                      std::to_string(c.imag()));
    }
    if (p.is_identity()) {
      offset += c.real();
    } else if (std::abs(c.real()) >= drop_below) {
      terms.push_back({c.real(), p});
    }
  }
  return PauliHamiltonian(n_, offset, std::move(terms));
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum out(a.qubit_count());
  for (const auto& [p, cp] : a.terms()) {
    for (const auto& [q, cq] : b.terms()) {
      if (p.commutes_with(q)) continue;
      const auto prod = pauli_product(p, q);
      out.add(prod.string, 2.0 * cp * cq * prod.phase());
    }
  }
  return out;
}

}  // namespace aqpe
