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

#include <array>
#include <cstddef>

#include "aqpe/pauli.hpp"
#include "aqpe/symmetry.hpp"

namespace aqpe {

/// H = H_Z + H_I, where H_Z holds the offset and single-Z terms.
struct SplitHamiltonian {
  PauliHamiltonian h_z;
  PauliHamiltonian h_i;
  double mu_i = 0.0;

  std::size_t qubit_count() const noexcept { return h_z.qubit_count(); }
  /// Coefficient of Z_q in H_Z, indexed by qubit.
  std::vector<double> z_coefficients() const;
  PauliHamiltonian full() const { return h_z + h_i; }
};

bool is_single_z(const PauliString& p);

SplitHamiltonian split(const PauliHamiltonian& h);

/// Particle-number sector the shift is anchored to.
struct Sector {
  int n_up = 0;
  int n_down = 0;
  int n_total() const { return n_up + n_down; }
};

Sector sector_of(const BasisState& reference, SpinOrdering o);

struct ShiftParams {
  std::array<double, 3> alpha{0.0, 0.0, 0.0};
  Sector sector;
  SpinOrdering ordering = SpinOrdering::kInterleaved;
};

/// H + a0 (n_up^2 - nu^2) + a1 (n_down^2 - nd^2) + a2 (n_tot^2 - nt^2).
PauliHamiltonian apply_shift(const PauliHamiltonian& h, const ShiftParams& p);

struct ShiftResult {
  ShiftParams params;
  SplitHamiltonian split;
  double mu_i_before = 0.0;
};

/// Exact minimizer of mu_I over the three shift weights. Throws
/// kSymmetryViolation when H does not conserve the spin numbers.
ShiftResult optimize_shift(const PauliHamiltonian& h, const Sector& sector,
                           SpinOrdering ordering);

}  // namespace aqpe
