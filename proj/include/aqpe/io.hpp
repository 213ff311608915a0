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

#include <string>
#include <vector>

#include "json.hpp"

#include "aqpe/baselines.hpp"
#include "aqpe/circuit.hpp"
#include "aqpe/estimator.hpp"
#include "aqpe/sampler.hpp"
#include "aqpe/simulator.hpp"

namespace aqpe {

/// Version tag written into every JSON artifact.
inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const SampledEvolution& ev);
SampledEvolution evolution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Gate& g);
Gate gate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<StitchedPair>& pairs);
std::vector<StitchedPair> ensemble_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ShotRecord& r);
/// One JSON object per line.
std::string records_jsonl(const std::vector<ShotRecord>& records);

nlohmann::json to_json(const RhoEstimate& r);
nlohmann::json to_json(const EnergyEstimate& e);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// Deterministic text form: sorted keys, fixed indentation.
std::string dump(const nlohmann::json& j);

}  // namespace aqpe
