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

#include "aqpe/dense.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "aqpe/error.hpp"

namespace aqpe {

void require_dense(std::size_t qubits, std::size_t limit) {
  if (qubits > limit) {
    throw Error(ErrorCode::kDimensionTooLarge,
                std::to_string(qubits) + " qubits exceed the dense limit of " +
                    std::to_string(limit));
  }
}

CMatrix pauli_matrix(const PauliString& p) {
  require_dense(p.size());
  const std::size_t dim = std::size_t{1} << p.size();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    m(x ^ p.x_mask(), x) = pauli_amplitude(p, x);
  }
  return m;
}

CMatrix to_dense(const PauliHamiltonian& h) {
  require_dense(h.qubit_count());
  const std::size_t dim = std::size_t{1} << h.qubit_count();
  CMatrix m = CMatrix::Identity(dim, dim) * h.identity_offset();
  for (const auto& t : h.terms()) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      m(x ^ t.string.x_mask(), x) += t.coefficient * pauli_amplitude(t.string, x);
    }
  }
  return m;
}

void apply_pauli(const PauliString& p, const CVector& in, CVector& out) {
  out.resize(in.size());
  for (Eigen::Index x = 0; x < in.size(); ++x) {
    out(x ^ p.x_mask()) = pauli_amplitude(p, x) * in(x);
  }
}

void apply_pauli_rotation(const PauliString& p, double angle, CVector& psi) {
  const Complex c(std::cos(angle), 0.0);
  const Complex is(0.0, std::sin(angle));
  const std::uint64_t xm = p.x_mask();
  const auto dim = static_cast<std::uint64_t>(psi.size());
  if (xm == 0) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      psi(x) *= c + is * pauli_amplitude(p, x);
    }
    return;
  }
  // Pair x with x ^ xm; visit each pair once through its smaller member.
  for (std::uint64_t x = 0; x < dim; ++x) {
    const std::uint64_t y = x ^ xm;
    if (y < x) continue;
    const Complex a = psi(x);
    const Complex b = psi(y);
    psi(x) = c * a + is * pauli_amplitude(p, y) * b;
    psi(y) = c * b + is * pauli_amplitude(p, x) * a;
  }
}

CVector apply_hamiltonian(const PauliHamiltonian& h, const CVector& psi) {
  CVector out = h.identity_offset() * psi;
  for (const auto& t : h.terms()) {
    const std::uint64_t xm = t.string.x_mask();
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
      out(x ^ xm) += t.coefficient * pauli_amplitude(t.string, x) * psi(x);
    }
  }
  return out;
}

CVector basis_vector(std::size_t qubits, std::uint64_t index) {
  CVector v = CVector::Zero(Eigen::Index{1} << qubits);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

CMatrix hermitian_exp(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::polar(1.0, t * w(k));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

double expectation(const CMatrix& h, const CVector& psi) {
  return (psi.adjoint() * h * psi)(0, 0).real() / psi.squaredNorm();
}

}  // namespace aqpe
