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

namespace aqpe {

/// Two-qubit-gate cost of the native operations. Defaults model a ladder of
/// entangling gates around one controlled or uncontrolled Z rotation.
struct GateCostModel {
  int ladder_per_extra_qubit = 2;  // 2(w-1) for a weight-w rotation
  int control_overhead = 1;        // +1 when the rotation is controlled
  int controlled_z_phase = 1;      // one controlled single-Z term

  int rotation(std::size_t weight, bool controlled) const {
    if (weight == 0) return 0;
    return ladder_per_extra_qubit * static_cast<int>(weight - 1) +
           (controlled ? control_overhead : 0);
  }

  bool operator==(const GateCostModel&) const = default;
};

}  // namespace aqpe
