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
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aqpe/pauli.hpp"

namespace aqpe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest register handled by dense matrix routines.
inline constexpr std::size_t kDenseQubitLimit = 12;

/// Throws kDimensionTooLarge when qubits exceeds limit.
void require_dense(std::size_t qubits, std::size_t limit = kDenseQubitLimit);

/// Amplitude picked up by basis state x under P: P|x> = f(x)|x ^ xmask>.
inline Complex pauli_amplitude(const PauliString& p, std::uint64_t x) {
  static const Complex kI[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int y = std::popcount(p.x_mask() & p.z_mask());
  const int sign = std::popcount(x & p.z_mask()) & 1;
  return kI[(y + 2 * sign) & 3];
}

CMatrix pauli_matrix(const PauliString& p);
CMatrix to_dense(const PauliHamiltonian& h);

/// out = P * in.
void apply_pauli(const PauliString& p, const CVector& in, CVector& out);
/// psi <- exp(i * angle * P) psi.
void apply_pauli_rotation(const PauliString& p, double angle, CVector& psi);
/// H * psi without forming the matrix.
CVector apply_hamiltonian(const PauliHamiltonian& h, const CVector& psi);

CVector basis_vector(std::size_t qubits, std::uint64_t index);

/// exp(i * t * H) for Hermitian H via eigendecomposition.
CMatrix hermitian_exp(const CMatrix& h, double t);

double expectation(const CMatrix& h, const CVector& psi);

}  // namespace aqpe
