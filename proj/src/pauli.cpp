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

#include "aqpe/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "aqpe/error.hpp"

namespace aqpe {

char to_char(Axis a) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(a)];
}

PauliString::PauliString(std::size_t n) : n_(n) {
  if (n > kMaxQubits) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "Pauli strings are limited to " + std::to_string(kMaxQubits) +
                    " qubits");
  }
}

PauliString::PauliString(std::size_t n, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : PauliString(n) {
  const std::uint64_t valid = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  x_ = x_mask & valid;
  z_ = z_mask & valid;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': p.set(q, Axis::X); break;
      case 'Y': p.set(q, Axis::Y); break;
      case 'Z': p.set(q, Axis::Z); break;
      default:
        throw Error(ErrorCode::kInvalidAxisChar,
                    "invalid Pauli axis '" + std::string(1, text[q]) +
                        "' in \"" + std::string(text) + "\"");
    }
  }
  return p;
}

Axis PauliString::operator[](std::size_t q) const noexcept {
  const bool x = x_ & bit(q);
  const bool z = z_ & bit(q);
  if (x && z) return Axis::Y;
  if (x) return Axis::X;
  if (z) return Axis::Z;
  return Axis::I;
}

void PauliString::set(std::size_t q, Axis a) noexcept {
  const std::uint64_t b = bit(q);
  x_ &= ~b;
  z_ &= ~b;
  if (a == Axis::X || a == Axis::Y) x_ |= b;
  if (a == Axis::Z || a == Axis::Y) z_ |= b;
}

std::size_t PauliString::count(Axis a) const noexcept {
  switch (a) {
    case Axis::I: return n_ - weight();
    case Axis::X: return std::popcount(x_ & ~z_);
    case Axis::Y: return std::popcount(x_ & z_);
    case Axis::Z: return std::popcount(z_ & ~x_);
  }
  return 0;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_ != n_) {
    throw Error(ErrorCode::kLengthMismatch, "Pauli strings differ in length");
  }
  return (std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) % 2 ==
         0;
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = to_char((*this)[q]);
  return s;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  for (std::size_t q = 0; q < a.n_; ++q) {
    if (auto c = a[q] <=> b[q]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::complex<double> PauliProduct::phase() const {
  static const std::complex<double> kPowers[] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[phase_power & 3];
}

PauliProduct pauli_product(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "cannot multiply Pauli strings of length " +
                    std::to_string(p.size()) + " and " +
                    std::to_string(q.size()));
  }
  // P = i^{|x&z|} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1&x2|}.
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  int power = std::popcount(p.x_mask() & p.z_mask()) +
              std::popcount(q.x_mask() & q.z_mask()) +
              2 * std::popcount(p.z_mask() & q.x_mask()) -
              std::popcount(x & z);
  power = ((power % 4) + 4) % 4;
  return {power, PauliString(p.size(), x, z)};
}

PauliHamiltonian::PauliHamiltonian(std::size_t qubit_count,
                                   double identity_offset,
                                   std::vector<PauliTerm> terms)
    : qubit_count_(qubit_count),
      identity_offset_(identity_offset),
      terms_(std::move(terms)) {
  if (!std::isfinite(identity_offset_)) {
    throw Error(ErrorCode::kMalformedNumber, "identity offset is not finite");
  }
  std::unordered_set<PauliString, PauliStringHash> seen;
  for (const auto& t : terms_) {
    if (t.string.size() != qubit_count_) {
      throw Error(ErrorCode::kLengthMismatch,
                  "term " + t.string.str() + " does not have " +
                      std::to_string(qubit_count_) + " qubits");
    }
    if (!std::isfinite(t.coefficient)) {
      throw Error(ErrorCode::kMalformedNumber,
                  "coefficient of " + t.string.str() + " is not finite");
    }
    if (t.string.is_identity()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "identity string must be folded into the offset");
    }
    if (!seen.insert(t.string).second) {
      throw Error(ErrorCode::kDuplicateString,
                  "duplicate string " + t.string.str());
    }
  }
}

PauliHamiltonian PauliHamiltonian::merged(std::size_t qubit_count,
                                          double identity_offset,
                                          const std::vector<PauliTerm>& terms,
                                          double drop_below) {
  std::vector<PauliTerm> out;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
  for (const auto& t : terms) {
    if (t.string.size() != qubit_count) {
      throw Error(ErrorCode::kLengthMismatch,
                  "term " + t.string.str() + " does not have " +
                      std::to_string(qubit_count) + " qubits");
    }
    if (t.string.is_identity()) {
      identity_offset += t.coefficient;
      continue;
    }
    auto [it, inserted] = index.try_emplace(t.string, out.size());
    if (inserted) {
      out.push_back(t);
    } else {
      out[it->second].coefficient += t.coefficient;
    }
  }
  std::erase_if(out, [&](const PauliTerm& t) {
    return std::abs(t.coefficient) < drop_below;
  });
  return PauliHamiltonian(qubit_count, identity_offset, std::move(out));
}

double PauliHamiltonian::mean_weight() const {
  if (terms_.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : terms_) sum += static_cast<double>(t.string.weight());
  return sum / static_cast<double>(terms_.size());
}

double PauliHamiltonian::weight_stddev() const {
  if (terms_.size() < 2) return 0.0;
  const double mean = mean_weight();
  double ss = 0.0;
  for (const auto& t : terms_) {
    const double d = static_cast<double>(t.string.weight()) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(terms_.size() - 1));
}

double PauliHamiltonian::one_norm() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(t.coefficient);
  return sum;
}

PauliHamiltonian PauliHamiltonian::canonicalized() const {
  auto sorted = terms_;
  std::sort(sorted.begin(), sorted.end(),
            [](const PauliTerm& a, const PauliTerm& b) {
              return a.string < b.string;
            });
  return PauliHamiltonian(qubit_count_, identity_offset_, std::move(sorted));
}

PauliHamiltonian PauliHamiltonian::operator+(
    const PauliHamiltonian& other) const {
  if (other.qubit_count_ != qubit_count_) {
    throw Error(ErrorCode::kLengthMismatch,
                "cannot add Hamiltonians on different qubit counts");
  }
  auto all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return merged(qubit_count_, identity_offset_ + other.identity_offset_, all,
                0.0);
}

PauliHamiltonian PauliHamiltonian::scaled(double factor) const {
  auto out = terms_;
  for (auto& t : out) t.coefficient *= factor;
  return PauliHamiltonian(qubit_count_, identity_offset_ * factor,
                          std::move(out));
}

BasisState BasisState::parse(std::string_view text) {
  if (text.size() > kMaxQubits) {
    throw Error(ErrorCode::kDimensionTooLarge, "basis state too long");
  }
  BasisState s{0, text.size()};
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kInvalidArgument,
                  "basis state must be a string over {0,1}: " +
                      std::string(text));
    }
    s.bits = (s.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return s;
}

std::string BasisState::str() const {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q) s[q] = (*this)[q] ? '1' : '0';
  return s;
}

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_real(std::string_view token, std::size_t line) {
  const char last = token.empty() ? '\0' : token.back();
  if (last == 'j' || last == 'J' || last == 'i') {
    throw Error(ErrorCode::kImaginaryCoefficient,
                "imaginary coefficient '" + std::string(token) + "'", line);
  }
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::kMalformedNumber,
                "cannot parse '" + std::string(token) + "' as a real number",
                line);
  }
  return value;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

PauliHamiltonian parse_hamiltonian(std::string_view text) {
  std::vector<PauliTerm> terms;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> seen;
  double offset = 0.0;
  bool have_offset = false;
  std::size_t qubits = 0;
  bool have_length = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() > 2) {
      throw Error(ErrorCode::kMalformedNumber,
                  "expected '<real>' or '<real> <string>'", line_no);
    }
    const double value = parse_real(tokens[0], line_no);
    if (tokens.size() == 1) {
      if (have_offset) {
        throw Error(ErrorCode::kDuplicateString,
                    "identity offset given more than once", line_no);
      }
      offset = value;
      have_offset = true;
    } else {
      PauliString p;
      try {
        p = PauliString::parse(tokens[1]);
      } catch (const Error& e) {
        throw Error(e.code(), std::string(tokens[1]) + " is not a Pauli string",
                    line_no);
      }
      if (!have_length) {
        qubits = p.size();
        have_length = true;
      } else if (p.size() != qubits) {
        throw Error(ErrorCode::kLengthMismatch,
                    "string " + p.str() + " has " + std::to_string(p.size()) +
                        " qubits, expected " + std::to_string(qubits),
                    line_no);
      }
      if (p.is_identity()) {
        if (have_offset) {
          throw Error(ErrorCode::kDuplicateString,
                      "identity offset given more than once", line_no);
        }
        offset = value;
        have_offset = true;
        continue;
      }
      if (!seen.try_emplace(p, line_no).second) {
        throw Error(ErrorCode::kDuplicateString,
                    "string " + p.str() + " already defined on line " +
                        std::to_string(seen.at(p)),
                    line_no);
      }
      terms.push_back({value, p});
    }
    if (end == text.size()) break;
  }
  return PauliHamiltonian(qubits, offset, std::move(terms));
}

PauliHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_hamiltonian(buffer.str());
}

std::string serialize_hamiltonian(const PauliHamiltonian& h) {
  const auto canon = h.canonicalized();
  std::string out = format_real(canon.identity_offset()) + "\n";
  for (const auto& t : canon.terms()) {
    out += format_real(t.coefficient);
    out += ' ';
    out += t.string.str();
    out += '\n';
  }
  return out;
}

double expectation_in_basis_state(const PauliHamiltonian& h,
                                  const BasisState& state) {
  if (state.n != h.qubit_count()) {
    throw Error(ErrorCode::kLengthMismatch,
                "basis state has " + std::to_string(state.n) +
                    " qubits, Hamiltonian has " +
                    std::to_string(h.qubit_count()));
  }
  double e = h.identity_offset();
  for (const auto& t : h.terms()) {
    if (!t.string.is_diagonal()) continue;
    const bool odd = std::popcount(t.string.z_mask() & state.bits) & 1;
    e += odd ? -t.coefficient : t.coefficient;
  }
  return e;
}

}  // namespace aqpe
