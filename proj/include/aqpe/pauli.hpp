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

#include <bit>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aqpe {

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Axis a);

/// Maximum number of qubits a PauliString can address. One slot is kept free
/// so that a Hadamard-test ancilla fits in the same 64-bit index space.
inline constexpr std::size_t kMaxQubits = 62;

/// Tensor product of single-qubit Paulis on a fixed number of qubits.
///
/// Position 0 is the leftmost character of the textual form ("qubit 1").
/// Internally the string is stored in symplectic form: qubit q maps to bit
/// (n - 1 - q) of the x and z masks, so the masks line up with computational
/// basis indices whose most significant bit is qubit 0. Y sets both bits.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n);
  PauliString(std::size_t n, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses a string over {I, X, Y, Z}. Throws Error(kInvalidAxisChar).
  static PauliString parse(std::string_view text);

  std::size_t size() const noexcept { return n_; }
  Axis operator[](std::size_t q) const noexcept;
  void set(std::size_t q, Axis a) noexcept;

  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support_mask() const noexcept { return x_ | z_; }
  /// Bit of qubit q inside the masks.
  std::uint64_t bit(std::size_t q) const noexcept {
    return std::uint64_t{1} << (n_ - 1 - q);
  }

  std::size_t weight() const noexcept { return std::popcount(x_ | z_); }
  std::size_t count(Axis a) const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }
  bool commutes_with(const PauliString& other) const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Orders by the textual form (I < X < Y < Z per position).
  friend std::strong_ordering operator<=>(const PauliString& a,
                                          const PauliString& b);

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  std::size_t n_ = 0;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.x_mask() * 0x9E3779B97F4A7C15ULL ^
                                      p.z_mask()) ^
           p.size();
  }
};

/// Phase i^power with power in {0, 1, 2, 3}.
struct PauliProduct {
  int phase_power = 0;
  PauliString string;

  std::complex<double> phase() const;
};

/// Returns (phase, R) with phase * R equal to the matrix product P * Q.
PauliProduct pauli_product(const PauliString& p, const PauliString& q);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Real-weighted sum of Pauli strings plus an identity offset.
///
/// Terms keep the order they were given in; the constructor rejects duplicate
/// strings, identity strings (those belong in the offset), non-finite
/// coefficients and strings whose length differs from the qubit count.
class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;
  PauliHamiltonian(std::size_t qubit_count, double identity_offset,
                   std::vector<PauliTerm> terms);

  /// Sums coefficients of equal strings, moves identity strings into the
  /// offset and drops terms with |coefficient| < drop_below.
  static PauliHamiltonian merged(std::size_t qubit_count,
                                 double identity_offset,
                                 const std::vector<PauliTerm>& terms,
                                 double drop_below = 1e-12);

  std::size_t qubit_count() const noexcept { return qubit_count_; }
  double identity_offset() const noexcept { return identity_offset_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  double mean_weight() const;
  /// Sample standard deviation of the term weights.
  double weight_stddev() const;
  /// Sum of |a_n| over all non-identity terms.
  double one_norm() const;

  /// Terms sorted by string.
  PauliHamiltonian canonicalized() const;

  PauliHamiltonian operator+(const PauliHamiltonian& other) const;
  PauliHamiltonian scaled(double factor) const;

  friend bool operator==(const PauliHamiltonian&,
                         const PauliHamiltonian&) = default;

 private:
  std::size_t qubit_count_ = 0;
  double identity_offset_ = 0.0;
  std::vector<PauliTerm> terms_;
};

/// Computational basis state; same orientation as PauliString (qubit 0 is the
/// leftmost character and the most significant bit of `bits`). A set bit
/// means the qubit is |1>, i.e. <Z_q> = -1.
struct BasisState {
  std::uint64_t bits = 0;
  std::size_t n = 0;

  static BasisState parse(std::string_view text);
  bool operator[](std::size_t q) const noexcept {
    return (bits >> (n - 1 - q)) & 1U;
  }
  std::size_t popcount() const noexcept { return std::popcount(bits); }
  std::string str() const;

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Parses the line-oriented Hamiltonian text format:
///   `# comment`, a bare `<real>` line for the identity offset, and
///   `<real> <IXYZ string>` per term.
PauliHamiltonian parse_hamiltonian(std::string_view text);
PauliHamiltonian load_hamiltonian(const std::string& path);

/// Canonical text form: offset line, then terms sorted by string, each number
/// printed in shortest round-trip form.
std::string serialize_hamiltonian(const PauliHamiltonian& h);

/// <bits|H|bits>; off-diagonal terms contribute nothing.
double expectation_in_basis_state(const PauliHamiltonian& h,
                                  const BasisState& state);

}  // namespace aqpe
