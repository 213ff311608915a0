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
#include <vector>

#include "aqpe/pauli.hpp"
#include "aqpe/pauli_sum.hpp"
#include "aqpe/symmetry.hpp"

namespace aqpe {

/// Real one- and two-body integrals over spatial orbitals.
///
///   H = c + sum t1[s](i,j) a+_{is} a_{js}
///         + 1/2 sum t2[s][s'](i,j,k,l) a+_{is} a+_{js'} a_{ks} a_{ls'}
class IntegralTable {
 public:
  IntegralTable(std::size_t orbitals, SpinOrdering ordering);

  std::size_t orbitals() const noexcept { return orbitals_; }
  std::size_t qubits() const noexcept { return 2 * orbitals_; }
  SpinOrdering ordering() const noexcept { return ordering_; }

  double& constant() noexcept { return constant_; }
  double constant() const noexcept { return constant_; }
  double& one_body(int spin, std::size_t i, std::size_t j);
  double one_body(int spin, std::size_t i, std::size_t j) const;
  double& two_body(int s, int sp, std::size_t i, std::size_t j, std::size_t k,
                   std::size_t l);
  double two_body(int s, int sp, std::size_t i, std::size_t j, std::size_t k,
                  std::size_t l) const;

  /// Qubit index of spin orbital (i, spin).
  std::size_t mode(std::size_t orbital, int spin) const;

  /// Throws kInvalidArgument when a value is not finite or the one-body
  /// table is not symmetric.
  void validate(double tol = 1e-12) const;

 private:
  std::size_t orbitals_;
  SpinOrdering ordering_;
  double constant_ = 0.0;
  std::vector<double> one_;
  std::vector<double> two_;
};

/// Jordan-Wigner images of the ladder operators on `qubits` modes; mode m
/// carries a Z string on modes 0..m-1 and |1> means occupied.
PauliSum jw_annihilation(std::size_t qubits, std::size_t mode);
PauliSum jw_creation(std::size_t qubits, std::size_t mode);

PauliHamiltonian jordan_wigner(const IntegralTable& t);

}  // namespace aqpe
