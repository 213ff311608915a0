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
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aqpe/pauli.hpp"

namespace aqpe {

/// Assignment of spin orbitals to qubits. Blocked puts all up-spin orbitals
/// first; interleaved alternates up, down, up, down, ...
enum class SpinOrdering { kBlocked, kInterleaved };

std::string_view to_string(SpinOrdering o);
SpinOrdering parse_spin_ordering(std::string_view text);

enum class SymmetryKind { kParity, kNumberUp, kNumberDown, kNumberTotal };

std::string_view to_string(SymmetryKind k);

struct SymmetryOperator {
  SymmetryKind kind;
  PauliHamiltonian op;
  double sector_value = 0.0;
};

/// Qubits carrying the given spin sector under an ordering. Spin 0 is up.
std::vector<std::size_t> spin_qubits(std::size_t qubits, SpinOrdering o,
                                     int spin);
/// Bit mask (pauli-mask convention) of spin_qubits.
std::uint64_t spin_mask(std::size_t qubits, SpinOrdering o, int spin);

/// Sum over qubits of (I - Z_q) / 2.
PauliHamiltonian number_operator(std::size_t qubits,
                                 const std::vector<std::size_t>& on);
PauliHamiltonian parity_operator(std::size_t qubits);

/// Builds the operator and reads its sector value off the reference state.
SymmetryOperator make_symmetry(SymmetryKind kind, std::size_t qubits,
                               SpinOrdering o, const BasisState& reference);

/// Whether [H, S] vanishes. Dense commutator for up to 8 qubits, symbolic
/// Pauli-pair cancellation above that.
bool commutes_with(const PauliHamiltonian& h, const PauliHamiltonian& s,
                   double tol = 1e-10);
bool commutes_with(const PauliHamiltonian& h, const SymmetryOperator& s,
                   double tol = 1e-10);

/// Dense max-abs entry of [H, S].
double dense_commutator_norm(const PauliHamiltonian& h,
                             const PauliHamiltonian& s);

/// The ordering under which H conserves both spin numbers, if any.
std::optional<SpinOrdering> detect_spin_ordering(const PauliHamiltonian& h);

/// Basis indices with the same up and down occupation as the reference.
std::vector<std::uint64_t> particle_sector(std::size_t qubits, SpinOrdering o,
                                           const BasisState& reference);

}  // namespace aqpe
