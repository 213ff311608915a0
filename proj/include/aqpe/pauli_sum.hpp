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

#include <complex>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "aqpe/pauli.hpp"

namespace aqpe {

/// Linear combination of Pauli strings with complex coefficients. Used as the
/// working algebra for fermion mappings, symmetry shifts and commutators.
class PauliSum {
 public:
  using Complex = std::complex<double>;

  explicit PauliSum(std::size_t qubit_count = 0) : n_(qubit_count) {}
  static PauliSum identity(std::size_t qubit_count, Complex scale = 1.0);
  static PauliSum single(const PauliString& p, Complex coefficient = 1.0);
  static PauliSum from_hamiltonian(const PauliHamiltonian& h);

  std::size_t qubit_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add(const PauliString& p, Complex coefficient);
  Complex coefficient(const PauliString& p) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex factor);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex f) { return a *= f; }
  friend PauliSum operator*(Complex f, PauliSum a) { return a *= f; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  PauliSum adjoint() const;
  /// Drops terms with |coefficient| <= tol.
  PauliSum pruned(double tol = 1e-12) const;
  /// Largest |coefficient| over all strings (0 for the empty sum).
  double max_abs() const;

  /// Converts to a Hamiltonian; throws kImaginaryCoefficient when some
  /// coefficient has |imag| > tol. Terms below drop_below are dropped.
  PauliHamiltonian to_hamiltonian(double tol = 1e-10,
                                  double drop_below = 1e-12) const;

  const std::unordered_map<PauliString, Complex, PauliStringHash>& terms()
      const noexcept {
    return terms_;
  }

 private:
  std::size_t n_;
  std::unordered_map<PauliString, Complex, PauliStringHash> terms_;
};

/// The commutator [a, b] = ab - ba.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

}  // namespace aqpe
