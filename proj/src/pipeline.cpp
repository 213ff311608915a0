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

#include "aqpe/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "aqpe/error.hpp"

namespace aqpe {

Problem make_problem(const PauliHamiltonian& h, const BasisState& reference) {
  if (reference.n != h.qubit_count()) {
    throw Error(ErrorCode::kMismatchedQubitCount,
                "reference state has " + std::to_string(reference.n) +
                    " qubits, Hamiltonian has " +
                    std::to_string(h.qubit_count()));
  }
  Problem p;
  p.hamiltonian = h;
  p.split = split(h);
  p.profile = OccupationProfile::from(reference);
  p.e_hf = expectation_in_basis_state(h, reference);
  p.ordering = detect_spin_ordering(h);
  const GroundState gs =
      p.ordering ? exact_ground_state(
                       h, particle_sector(h.qubit_count(), *p.ordering, reference))
                 : exact_ground_state(h);
  p.e_gs = gs.energy;
  p.ground_state = gs.state;
  return p;
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::kExact:
      return "exact";
    case Backend::kDensity:
      return "density";
    case Backend::kLeakage:
      return "leakage";
  }
  return "exact";
}

Backend parse_backend(std::string_view text) {
  if (text == "exact") return Backend::kExact;
  if (text == "density") return Backend::kDensity;
  if (text == "leakage") return Backend::kLeakage;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown backend '" + std::string(text) + "'");
}

void RunOptions::validate() const {
  noise.validate();
  if (repetitions == 0) {
    throw Error(ErrorCode::kInvalidArgument, "repetitions must be >= 1");
  }
  if (backend == Backend::kLeakage && shots == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "the leakage backend needs a positive shot count");
  }
  if (backend == Backend::kExact && !noise.noiseless()) {
    throw Error(ErrorCode::kInvalidArgument,
                "the exact backend does not model noise");
  }
  if (backend == Backend::kDensity && noise.leakage != 0.0) {
    throw Error(ErrorCode::kLeakageUnsupported,
                "leakage needs the leakage backend");
  }
}

void parallel_for(std::size_t n, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

PairTally tally_records(const std::vector<ShotRecord>& records,
                        std::size_t index, double attenuation,
                        PostSelectMode mode, const OccupationProfile& profile) {
  PairTally t;
  t.index = index;
  for (const auto& r : records) {
    double v = 0.0;
    const bool keep = select(r, mode, profile, v);
    auto& b = r.branch == TrialBranch::kPlus ? t.plus : t.minus;
    b.add(v / attenuation, 1.0, keep);
  }
  return t;
}

struct PairResult {
  std::vector<std::array<PairTally, 3>> tallies;  // per repetition
  std::vector<ShotRecord> records;
  MeasurementStats stats;
};

}  // namespace

RunOutput run_ensemble(const Problem& problem,
                       const std::vector<StitchedPair>& pairs,
                       const RunOptions& opts) {
  opts.validate();
  const std::size_t L = problem.split.qubit_count();
  const std::size_t reps = opts.repetitions;
  std::vector<PairResult> results(pairs.size());

  parallel_for(pairs.size(), opts.jobs, [&](std::size_t i) {
    const StitchedPair& pair = pairs[i];
    auto [body, phase_plus] = strip_final_phase(pair.plus);
    auto [body_minus, phase_minus] = strip_final_phase(pair.minus);
    const bool shared = body.gates == body_minus.gates;
    const double att = pair.plus.meta.attenuation();
    PairResult& out = results[i];
    out.tallies.resize(reps);
    out.stats = measurement_stats({}, L, 0);

    if (opts.backend == Backend::kLeakage) {
      LeakageSimulator sim(body, opts.noise);
      std::optional<LeakageSimulator> sim_minus;
      if (!shared) sim_minus.emplace(body_minus, opts.noise);
      for (std::size_t r = 0; r < reps; ++r) {
        std::vector<ShotRecord> recs;
        recs.reserve(2 * opts.shots);
        Rng rng_p = Rng::stream(opts.shot_seed, pair.plus.meta.index, 2 * r);
        Rng rng_m = Rng::stream(opts.shot_seed, pair.plus.meta.index, 2 * r + 1);
        for (std::size_t k = 0; k < opts.shots; ++k) {
          recs.push_back(sim.shot(rng_p, phase_plus, pair.plus.meta));
        }
        for (std::size_t k = 0; k < opts.shots; ++k) {
          recs.push_back(shared ? sim.shot(rng_m, phase_minus, pair.minus.meta)
                                : sim_minus->shot(rng_m, phase_minus,
                                                  pair.minus.meta));
        }
        for (std::size_t m = 0; m < 3; ++m) {
          out.tallies[r][m] = tally_records(recs, pair.plus.meta.index, att,
                                            kAllModes[m], problem.profile);
        }
        out.stats += measurement_stats(recs, L, 1);
        if (opts.keep_records) {
          out.records.insert(out.records.end(), recs.begin(), recs.end());
        }
      }
      return;
    }

    auto simulate = [&](const Circuit& c) {
      return opts.backend == Backend::kDensity ? run_density(c, opts.noise)
                                               : run_exact(c);
    };
    const CircuitOutcome base = simulate(body);
    const CircuitOutcome plus = base.with_phase(phase_plus);
    const CircuitOutcome minus =
        shared ? base.with_phase(phase_minus)
               : simulate(body_minus).with_phase(phase_minus);
    if (opts.shots == 0) {
      for (std::size_t m = 0; m < 3; ++m) {
        out.tallies[0][m] =
            tally_outcomes(plus, pair.plus.meta, minus, pair.minus.meta,
                           kAllModes[m], problem.profile);
      }
      for (std::size_t r = 1; r < reps; ++r) out.tallies[r] = out.tallies[0];
      return;
    }
    for (std::size_t r = 0; r < reps; ++r) {
      Rng rng_p = Rng::stream(opts.shot_seed, pair.plus.meta.index, 2 * r);
      Rng rng_m = Rng::stream(opts.shot_seed, pair.plus.meta.index, 2 * r + 1);
      auto recs = plus.sample(rng_p, opts.shots, pair.plus.meta);
      const auto rm = minus.sample(rng_m, opts.shots, pair.minus.meta);
      recs.insert(recs.end(), rm.begin(), rm.end());
      for (std::size_t m = 0; m < 3; ++m) {
        out.tallies[r][m] = tally_records(recs, pair.plus.meta.index, att,
                                          kAllModes[m], problem.profile);
      }
      out.stats += measurement_stats(recs, L, 1);
      if (opts.keep_records) {
        out.records.insert(out.records.end(), recs.begin(), recs.end());
      }
    }
  });

  RunOutput run;
  run.tallies.resize(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t m = 0; m < 3; ++m) {
      run.tallies[r][m].reserve(pairs.size());
      for (const auto& res : results) run.tallies[r][m].push_back(res.tallies[r][m]);
    }
  }
  run.stats = measurement_stats({}, L, 0);
  for (const auto& res : results) {
    run.stats += res.stats;
    run.records.insert(run.records.end(), res.records.begin(),
                       res.records.end());
  }
  run.stats.repetitions = reps;
  run.meta.reserve(pairs.size());
  for (const auto& p : pairs) run.meta.push_back(p.plus.meta);
  return run;
}

double expected_circuit_tqg(const SplitHamiltonian& split, double T, double s,
                            double tau, const GateCostModel& costs) {
  return 2.0 * expected_tqg(split, SweepSchedule::linear(), T, tau, costs,
                            true) +
         expected_tqg(split, SweepSchedule::constant(), s, tau, costs, true);
}

std::vector<SweepRow> sweep_s_tau(
    const Problem& problem,
    const std::vector<std::pair<double, double>>& grid,
    const SweepOptions& opts) {
  std::vector<SweepRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [s, tau] : grid) {
    SweepRow row;
    row.s = s;
    row.tau = tau;
    row.mean_tqg = expected_circuit_tqg(problem.split, opts.T, s, tau);
    row.admissible = row.mean_tqg < opts.max_tqg;
    row.variance = nan;
    row.mean_energy = nan;
    if (row.admissible) {
      const TrialEnergies trial = TrialEnergies::below(problem.e_hf, opts.epsilon, s);
      std::vector<double> energies(opts.seeds, nan);
      parallel_for(opts.seeds, opts.jobs, [&](std::size_t k) {
        EnsembleSpec spec;
        spec.T = opts.T;
        spec.tau = tau;
        spec.n_circuits = opts.n_circuits;
        spec.master_seed = opts.master_seed + k;
        const auto pairs = build_ensemble(problem.split, trial, problem.profile, spec);
        RunOptions ro;
        ro.shots = opts.shots;
        ro.shot_seed = opts.master_seed + k;
        const RunOutput out = run_ensemble(problem, pairs, ro);
        const std::size_t m = static_cast<std::size_t>(opts.mode);
        try {
          const RhoEstimate rho = pool(out.tallies[0][m], opts.mode);
          energies[k] = arctan_energy(rho.rho_plus, rho.rho_minus, trial);
        } catch (const Error&) {
          // Degenerate or empty mini-ensemble: no sample.
        }
      });
      double s1 = 0.0;
      double s2 = 0.0;
      for (double e : energies) {
        if (std::isnan(e)) continue;
        s1 += e;
        s2 += e * e;
        ++row.samples;
      }
      if (row.samples >= 2) {
        const double n = static_cast<double>(row.samples);
        row.mean_energy = s1 / n;
        row.variance = (s2 - n * row.mean_energy * row.mean_energy) / (n - 1.0);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<std::size_t> sweep_argmin(const std::vector<SweepRow>& rows) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].admissible || std::isnan(rows[i].variance)) continue;
    if (!best || rows[i].variance < rows[*best].variance) best = i;
  }
  return best;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "s,tau,admissible,mean_tqg,variance,mean_energy,samples\n";
  for (const auto& r : rows) {
    os << r.s << ',' << r.tau << ',' << (r.admissible ? 1 : 0) << ','
       << r.mean_tqg << ',' << r.variance << ',' << r.mean_energy << ','
       << r.samples << '\n';
  }
  return os.str();
}

}  // namespace aqpe
