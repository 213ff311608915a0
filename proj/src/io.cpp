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

#include "aqpe/io.hpp"

#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "aqpe/error.hpp"

namespace aqpe {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

json to_json(const SampledEvolution& ev) {
  json events = json::array();
  for (const auto& e : ev.events) events.push_back({e.time, e.term, e.sign});
  return {{"schedule", std::string(to_string(ev.schedule.kind))},
          {"duration", ev.config.duration},
          {"tau", ev.config.tau},
          {"direction", ev.config.direction == Direction::kForward ? "forward"
                                                                    : "reverse"},
          {"seed", ev.config.seed},
          {"stream", ev.config.stream},
          {"mu_i", ev.mu_i},
          {"attenuation", ev.attenuation},
          {"events", events}};
}

SampledEvolution evolution_from_json(const json& j) {
  SampledEvolution ev;
  ev.schedule.kind = parse_schedule_kind(field(j, "schedule").get<std::string>());
  ev.config.duration = field(j, "duration").get<double>();
  ev.config.tau = field(j, "tau").get<double>();
  ev.config.direction = field(j, "direction").get<std::string>() == "forward"
                            ? Direction::kForward
                            : Direction::kReverse;
  ev.config.seed = field(j, "seed").get<std::uint64_t>();
  ev.config.stream = field(j, "stream").get<std::uint64_t>();
  ev.mu_i = field(j, "mu_i").get<double>();
  ev.attenuation = field(j, "attenuation").get<double>();
  for (const auto& e : field(j, "events")) {
    ev.events.push_back({e.at(0).get<double>(), e.at(1).get<std::size_t>(),
                         e.at(2).get<int>()});
  }
  return ev;
}

json to_json(const Gate& g) {
  return std::visit(
      Overloaded{
          [](const PauliRotation& r) -> json {
            return {{"op", "rot"}, {"pauli", r.string.str()}, {"angle", r.angle}};
          },
          [](const ControlledPauliRotation& r) -> json {
            return {{"op", "crot"}, {"pauli", r.string.str()}, {"angle", r.angle}};
          },
          [](const DiagonalSegment& s) -> json {
            return {{"op", "diag"}, {"duration", s.duration}, {"mask", s.mask}};
          },
          [](const ControlledDiagonalSegment& s) -> json {
            return {{"op", "cdiag"}, {"duration", s.duration}, {"mask", s.mask}};
          },
          [](const AncillaPhase& p) -> json {
            return {{"op", "phase"}, {"angle", p.angle}};
          },
          [](const AncillaPrepare&) -> json { return {{"op", "prep"}}; },
          [](const AncillaMeasureY& m) -> json {
            return {{"op", "measure_y"}, {"basis_sign", m.basis_sign}};
          },
          [](const PhysicalMeasureZ&) -> json { return {{"op", "measure_z"}}; },
      },
      g);
}

Gate gate_from_json(const json& j) {
  const std::string op = field(j, "op").get<std::string>();
  if (op == "rot") {
    return PauliRotation{PauliString::parse(field(j, "pauli").get<std::string>()),
                         field(j, "angle").get<double>()};
  }
  if (op == "crot") {
    return ControlledPauliRotation{
        PauliString::parse(field(j, "pauli").get<std::string>()),
        field(j, "angle").get<double>()};
  }
  if (op == "diag") {
    return DiagonalSegment{field(j, "duration").get<double>(),
                           field(j, "mask").get<std::uint64_t>()};
  }
  if (op == "cdiag") {
    return ControlledDiagonalSegment{field(j, "duration").get<double>(),
                                     field(j, "mask").get<std::uint64_t>()};
  }
  if (op == "phase") return AncillaPhase{field(j, "angle").get<double>()};
  if (op == "prep") return AncillaPrepare{};
  if (op == "measure_y") return AncillaMeasureY{field(j, "basis_sign").get<int>()};
  if (op == "measure_z") return PhysicalMeasureZ{};
  throw Error(ErrorCode::kInvalidArgument, "unknown gate '" + op + "'");
}

json to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) gates.push_back(to_json(g));
  return {{"qubits", c.qubits},
          {"z_coefficients", c.z_coefficients},
          {"initial", c.initial.str()},
          {"meta",
           {{"direction_sign", c.meta.direction_sign},
            {"lambda_a", c.meta.lambda_a},
            {"lambda_ap", c.meta.lambda_ap},
            {"lambda_s", c.meta.lambda_s},
            {"branch", std::string(to_string(c.meta.branch))},
            {"index", c.meta.index}}},
          {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.qubits = field(j, "qubits").get<std::size_t>();
  c.z_coefficients = field(j, "z_coefficients").get<std::vector<double>>();
  c.initial = BasisState::parse(field(j, "initial").get<std::string>());
  const json& m = field(j, "meta");
  c.meta.direction_sign = field(m, "direction_sign").get<int>();
  c.meta.lambda_a = field(m, "lambda_a").get<double>();
  c.meta.lambda_ap = field(m, "lambda_ap").get<double>();
  c.meta.lambda_s = field(m, "lambda_s").get<double>();
  c.meta.branch = field(m, "branch").get<std::string>() == "plus"
                      ? TrialBranch::kPlus
                      : TrialBranch::kMinus;
  c.meta.index = field(m, "index").get<std::size_t>();
  for (const auto& g : field(j, "gates")) c.gates.push_back(gate_from_json(g));
  return c;
}

json to_json(const std::vector<StitchedPair>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) {
    arr.push_back({{"u1", to_json(p.u1)},
                   {"u2", to_json(p.u2)},
                   {"u1p", to_json(p.u1p)},
                   {"plus", to_json(p.plus)},
                   {"minus", to_json(p.minus)}});
  }
  return {{"schema", kSchemaVersion}, {"pairs", arr}};
}

std::vector<StitchedPair> ensemble_from_json(const json& j) {
  if (field(j, "schema").get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported ensemble schema");
  }
  std::vector<StitchedPair> out;
  for (const auto& p : field(j, "pairs")) {
    StitchedPair sp;
    sp.u1 = evolution_from_json(field(p, "u1"));
    sp.u2 = evolution_from_json(field(p, "u2"));
    sp.u1p = evolution_from_json(field(p, "u1p"));
    sp.plus = circuit_from_json(field(p, "plus"));
    sp.minus = circuit_from_json(field(p, "minus"));
    out.push_back(std::move(sp));
  }
  return out;
}

json to_json(const ShotRecord& r) {
  return {{"circuit", r.circuit_index},
          {"branch", std::string(to_string(r.branch))},
          {"direction", r.direction_sign},
          {"ancilla_bit", r.ancilla_bit},
          {"ancilla_y", r.ancilla_y},
          {"physical", r.physical_bits},
          {"leaked", r.leaked_mask}};
}

std::string records_jsonl(const std::vector<ShotRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

json to_json(const RhoEstimate& r) {
  return {{"mode", std::string(to_string(r.mode))},
          {"rho_plus", r.rho_plus},
          {"rho_minus", r.rho_minus},
          {"se_plus", r.se_plus},
          {"se_minus", r.se_minus},
          {"kept", r.kept},
          {"discarded", r.discarded}};
}

json to_json(const EnergyEstimate& e) {
  return {{"mode", std::string(to_string(e.mode))},
          {"value", e.value},
          {"std_error", e.std_error},
          {"se_delta", e.se_delta},
          {"se_bootstrap", e.se_bootstrap},
          {"n_estimates", e.n_estimates},
          {"window_saturated", e.window_saturated}};
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0')
       << static_cast<int>(digest[i]);
  }
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace aqpe
