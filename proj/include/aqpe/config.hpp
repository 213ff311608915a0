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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aqpe/circuit.hpp"
#include "aqpe/estimator.hpp"
#include "aqpe/pipeline.hpp"

namespace aqpe {

/// Run settings. Text form is one `key = value` per line; `#` starts a
/// comment. Keys are the field names below.
struct RunConfig {
  std::string hamiltonian;  // empty selects the bundled H3+ file
  std::string reference = "110000";
  double T = 8.0;
  double s = 10.0;
  double tau = 0.1;
  double epsilon = 0.04;
  std::size_t n_circuits = 346;
  std::size_t shots = 5;
  std::size_t repetitions = 1;
  double lambda_incoh = 0.0;
  double lambda_coh = 0.0;
  double lambda_leak = 0.0;
  PostSelectMode mode = PostSelectMode::kHfProjection;
  Backend backend = Backend::kExact;
  std::uint64_t master_seed = 1;
  std::string output_dir = "runs";
  DiagonalMode diagonal_mode = DiagonalMode::kUncontrolled;
  bool parity_reduction = true;
  bool occupation_reduction = true;
  bool alternate_direction = true;

  /// Sets one field from text. Throws kInvalidArgument for unknown keys and
  /// kMalformedNumber for unparsable values.
  void set(std::string_view key, std::string_view value);
  /// Throws kInvalidArgument on inconsistent settings.
  void validate() const;

  NoiseModel noise() const { return {lambda_incoh, lambda_coh, lambda_leak}; }
  EnsembleSpec ensemble() const;
  TrialEnergies trial(double e_hf) const;
  /// Every field, keys sorted.
  nlohmann::json to_json() const;
  /// Config text that reproduces this configuration.
  std::string to_text() const;
};

/// Named presets: "h3plus-paper" (noiseless, exact backend) and
/// "h3plus-nominal-noise" (density backend at the nominal rates).
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Applies `key = value` lines on top of `base`. Errors carry line numbers.
void apply_config_text(RunConfig& base, std::string_view text);

/// Path of the bundled Hamiltonian.
std::string bundled_hamiltonian_path();

}  // namespace aqpe
