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

#include "aqpe/config.hpp"
#include "aqpe/pipeline.hpp"
#include "aqpe/rng.hpp"

namespace aqpe::test {

inline const PauliHamiltonian& h3plus() {
  static const PauliHamiltonian h = load_hamiltonian(bundled_hamiltonian_path());
  return h;
}

inline const Problem& h3plus_problem() {
  static const Problem p = make_problem(h3plus(), BasisState::parse("110000"));
  return p;
}

inline TrialEnergies default_trial() {
  return TrialEnergies::below(h3plus_problem().e_hf, 0.04, 10.0);
}

/// Random Hamiltonian over all non-identity strings with a given density.
inline PauliHamiltonian random_hamiltonian(std::size_t qubits, Rng& rng,
                                           double density = 0.6,
                                           double scale = 1.0) {
  std::vector<PauliTerm> terms;
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      if ((x | z) == 0 || rng.uniform() > density) continue;
      terms.push_back({scale * (2.0 * rng.uniform() - 1.0),
                       PauliString(qubits, x, z)});
    }
  }
  return PauliHamiltonian(qubits, 2.0 * rng.uniform() - 1.0, std::move(terms));
}

inline bool state_allclose(const CVector& a, const CVector& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace aqpe::test
