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

#include "aqpe/jordan_wigner.hpp"

#include <cmath>

#include "aqpe/error.hpp"

namespace aqpe {

IntegralTable::IntegralTable(std::size_t orbitals, SpinOrdering ordering)
    : orbitals_(orbitals),
      ordering_(ordering),
      one_(2 * orbitals * orbitals, 0.0),
      two_(4 * orbitals * orbitals * orbitals * orbitals, 0.0) {
  if (2 * orbitals > kMaxQubits) {
    throw Error(ErrorCode::kDimensionTooLarge, "too many orbitals");
  }
}

double& IntegralTable::one_body(int spin, std::size_t i, std::size_t j) {
  return one_[(static_cast<std::size_t>(spin) * orbitals_ + i) * orbitals_ + j];
}

double IntegralTable::one_body(int spin, std::size_t i, std::size_t j) const {
  return one_[(static_cast<std::size_t>(spin) * orbitals_ + i) * orbitals_ + j];
}

double& IntegralTable::two_body(int s, int sp, std::size_t i, std::size_t j,
                                std::size_t k, std::size_t l) {
  const std::size_t n = orbitals_;
  return two_[((((static_cast<std::size_t>(2 * s + sp) * n + i) * n + j) * n +
                k) * n) + l];
}

double IntegralTable::two_body(int s, int sp, std::size_t i, std::size_t j,
                               std::size_t k, std::size_t l) const {
  const std::size_t n = orbitals_;
  return two_[((((static_cast<std::size_t>(2 * s + sp) * n + i) * n + j) * n +
                k) * n) + l];
}

std::size_t IntegralTable::mode(std::size_t orbital, int spin) const {
  return ordering_ == SpinOrdering::kBlocked
             ? orbital + static_cast<std::size_t>(spin) * orbitals_
             : 2 * orbital + static_cast<std::size_t>(spin);
}

void IntegralTable::validate(double tol) const {
  if (!std::isfinite(constant_)) {
    throw Error(ErrorCode::kInvalidArgument, "constant is not finite");
  }
  for (double v : one_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "one-body entry not finite");
    }
  }
  for (double v : two_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "two-body entry not finite");
    }
  }
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < orbitals_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(one_body(s, i, j) - one_body(s, j, i)) > tol) {
          throw Error(ErrorCode::kInvalidArgument,
                      "one-body integrals are not symmetric");
        }
      }
    }
  }
}

PauliSum jw_annihilation(std::size_t qubits, std::size_t mode) {
  PauliString x(qubits);
  PauliString y(qubits);
  for (std::size_t q = 0; q < mode; ++q) {
    x.set(q, Axis::Z);
    y.set(q, Axis::Z);
  }
  x.set(mode, Axis::X);
  y.set(mode, Axis::Y);
  PauliSum out(qubits);
  out.add(x, 0.5);
  out.add(y, {0.0, 0.5});
  return out;
}

PauliSum jw_creation(std::size_t qubits, std::size_t mode) {
  return jw_annihilation(qubits, mode).adjoint();
}

PauliHamiltonian jordan_wigner(const IntegralTable& t) {
  t.validate();
  const std::size_t L = t.qubits();
  const std::size_t n = t.orbitals();
  std::vector<PauliSum> a;
  std::vector<PauliSum> ad;
  for (std::size_t m = 0; m < L; ++m) {
    a.push_back(jw_annihilation(L, m));
    ad.push_back(jw_creation(L, m));
  }
  PauliSum h = PauliSum::identity(L, t.constant());
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = t.one_body(s, i, j);
        if (v == 0.0) continue;
        h += (ad[t.mode(i, s)] * a[t.mode(j, s)]) * PauliSum::Complex(v);
      }
    }
  }
  for (int s = 0; s < 2; ++s) {
    for (int sp = 0; sp < 2; ++sp) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
              const double v = t.two_body(s, sp, i, j, k, l);
              if (v == 0.0) continue;
              h += (ad[t.mode(i, s)] * ad[t.mode(j, sp)] * a[t.mode(k, s)] *
                    a[t.mode(l, sp)]) *
                   PauliSum::Complex(0.5 * v);
            }
          }
        }
      }
    }
  }
  return h.pruned().to_hamiltonian();
}

}  // namespace aqpe
