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

#include "aqpe/config.hpp"

#include <charconv>
#include <sstream>

#include "aqpe/error.hpp"

#ifndef AQPE_DATA_DIR
#define AQPE_DATA_DIR "data"
#endif

namespace aqpe {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kMalformedNumber,
                "invalid value '" + std::string(v) + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::kInvalidArgument,
              "invalid boolean '" + std::string(v) + "' for " + std::string(key));
}

}  // namespace

std::string bundled_hamiltonian_path() {
  return std::string(AQPE_DATA_DIR) + "/h3plus_shifted.txt";
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const std::string v(trim(value));
  if (key == "hamiltonian") hamiltonian = v;
  else if (key == "reference") reference = v;
  else if (key == "T") T = parse_number<double>(key, v);
  else if (key == "s") s = parse_number<double>(key, v);
  else if (key == "tau") tau = parse_number<double>(key, v);
  else if (key == "epsilon") epsilon = parse_number<double>(key, v);
  else if (key == "n_circuits") n_circuits = parse_number<std::size_t>(key, v);
  else if (key == "shots") shots = parse_number<std::size_t>(key, v);
  else if (key == "repetitions") repetitions = parse_number<std::size_t>(key, v);
  else if (key == "lambda_incoh") lambda_incoh = parse_number<double>(key, v);
  else if (key == "lambda_coh") lambda_coh = parse_number<double>(key, v);
  else if (key == "lambda_leak") lambda_leak = parse_number<double>(key, v);
  else if (key == "mode") mode = parse_post_select_mode(v);
  else if (key == "backend") backend = parse_backend(v);
  else if (key == "master_seed") master_seed = parse_number<std::uint64_t>(key, v);
  else if (key == "output_dir") output_dir = v;
  else if (key == "diagonal_mode") diagonal_mode = parse_diagonal_mode(v);
  else if (key == "parity_reduction") parity_reduction = parse_bool(key, v);
  else if (key == "occupation_reduction") occupation_reduction = parse_bool(key, v);
  else if (key == "alternate_direction") alternate_direction = parse_bool(key, v);
  else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown configuration key '" + std::string(key) + "'");
  }
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (!(T > 0.0)) fail("T must be positive");
  if (!(s > 0.0)) fail("s must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (n_circuits == 0) fail("n_circuits must be >= 1");
  if (shots == 0) fail("shots must be >= 1");
  if (repetitions == 0) fail("repetitions must be >= 1");
  SamplerConfig sc;
  sc.tau = tau;
  sc.duration = T;
  sc.validate();
  noise().validate();
  if (backend == Backend::kExact && !noise().noiseless()) {
    fail("noise rates need the density or leakage backend");
  }
  if (backend == Backend::kDensity && lambda_leak != 0.0) {
    throw Error(ErrorCode::kLeakageUnsupported,
                "leakage needs the leakage backend");
  }
  BasisState::parse(reference);
}

EnsembleSpec RunConfig::ensemble() const {
  EnsembleSpec e;
  e.T = T;
  e.tau = tau;
  e.n_circuits = n_circuits;
  e.master_seed = master_seed;
  e.diagonal_mode = diagonal_mode;
  e.parity_reduction = parity_reduction;
  e.occupation_reduction = occupation_reduction;
  e.alternate_direction = alternate_direction;
  return e;
}

TrialEnergies RunConfig::trial(double e_hf) const {
  return TrialEnergies::below(e_hf, epsilon, s);
}

nlohmann::json RunConfig::to_json() const {
  return {{"hamiltonian", hamiltonian.empty() ? "bundled" : hamiltonian},
          {"reference", reference},
          {"T", T},
          {"s", s},
          {"tau", tau},
          {"epsilon", epsilon},
          {"n_circuits", n_circuits},
          {"shots", shots},
          {"repetitions", repetitions},
          {"lambda_incoh", lambda_incoh},
          {"lambda_coh", lambda_coh},
          {"lambda_leak", lambda_leak},
          {"mode", std::string(to_string(mode))},
          {"backend", std::string(to_string(backend))},
          {"master_seed", master_seed},
          {"output_dir", output_dir},
          {"diagonal_mode", std::string(to_string(diagonal_mode))},
          {"parity_reduction", parity_reduction},
          {"occupation_reduction", occupation_reduction},
          {"alternate_direction", alternate_direction}};
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  const nlohmann::json j = to_json();
  for (const auto& [k, v] : j.items()) {
    if (k == "hamiltonian" && hamiltonian.empty()) continue;
    os << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return os.str();
}

RunConfig preset(std::string_view name) {
  RunConfig c;
  if (name == "h3plus-paper") return c;
  if (name == "h3plus-nominal-noise") {
    c.backend = Backend::kDensity;
    c.lambda_incoh = 9.7e-4;
    c.lambda_coh = 2.2e-4;
    return c;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"h3plus-paper", "h3plus-nominal-noise"};
}

void apply_config_text(RunConfig& base, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                       : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(line_no) + ": expected key = value",
                  line_no);
    }
    try {
      base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(e.code(),
                  "line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
}

}  // namespace aqpe
