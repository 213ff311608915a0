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

// Command-line driver for the adiabatic phase-estimation pipeline.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqpe/baselines.hpp"
#include "aqpe/config.hpp"
#include "aqpe/error.hpp"
#include "aqpe/io.hpp"
#include "aqpe/pipeline.hpp"

#ifndef AQPE_VERSION
#define AQPE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aqpe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitPostProcess = 4;

// Failure tagged with the exit code of the stage it happened in.
struct StageError {
  int exit_code;
  std::string stage;
  std::string message;
};

template <class F>
auto stage(int exit_code, const char* name, F&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError{exit_code, name, e.what()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << data;
}

// Header check plus a consistent column count on every row.
void check_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorCode::kIo, "CSV header mismatch: expected '" + header + "'");
  }
  const auto cols = std::count(header.begin(), header.end(), ',');
  while (std::getline(in, line)) {
    if (std::count(line.begin(), line.end(), ',') != cols) {
      throw Error(ErrorCode::kIo, "CSV row has the wrong column count: " + line);
    }
  }
}

// Collects artifacts and their checksums for the manifest.
class Bundle {
 public:
  explicit Bundle(fs::path dir) : dir_(std::move(dir)) {}

  void csv(const std::string& name, const std::string& text,
           const std::string& header) {
    check_csv(text, header);
    put(name, text);
  }
  void json_file(const std::string& name, const json& j) {
    const std::string text = dump(j);
    const json check = json::parse(text);  // round-trip check
    (void)check;
    put(name, text);
  }
  void raw(const std::string& name, const std::string& text) { put(name, text); }

  json artifacts() const { return artifacts_; }
  const fs::path& dir() const { return dir_; }

 private:
  void put(const std::string& name, const std::string& text) {
    write_file(dir_ / name, text);
    artifacts_[name] = sha256_hex(text);
  }

  fs::path dir_;
  json artifacts_ = json::object();
};

PauliHamiltonian load(const std::string& path) {
  return load_hamiltonian(path.empty() ? bundled_hamiltonian_path() : path);
}

std::string hamiltonian_digest(const std::string& path) {
  return sha256_hex(read_file(path.empty() ? bundled_hamiltonian_path() : path));
}

fs::path run_directory(const std::string& root, const std::string& key) {
  fs::path dir = fs::path(root) / key.substr(0, 16);
  fs::create_directories(dir);
  return dir;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const std::string& reference) {
  const PauliHamiltonian h = stage(kExitValidation, "parse", [&] { return load(path); });
  const std::size_t L = h.qubit_count();
  const SplitHamiltonian sp = split(h);
  std::cout << "qubits          " << L << "\n"
            << "terms           " << h.terms().size() << "\n"
            << "identity offset " << h.identity_offset() << "\n"
            << "mean weight     " << h.mean_weight() << " +- " << h.weight_stddev()
            << "\n"
            << "mu_I            " << sp.mu_i << "\n";
  bool ok = true;
  const bool parity = commutes_with(h, parity_operator(L));
  std::cout << "parity          " << (parity ? "commutes" : "VIOLATED") << "\n";
  ok = ok && parity;
  const auto ordering = detect_spin_ordering(h);
  if (L % 2 == 0) {
    std::cout << "spin numbers    "
              << (ordering ? "conserved (" + std::string(to_string(*ordering)) + ")"
                           : std::string("not conserved"))
              << "\n";
    const bool ntot = commutes_with(
        h, number_operator(L, spin_qubits(L, SpinOrdering::kBlocked, 0)) +
               number_operator(L, spin_qubits(L, SpinOrdering::kBlocked, 1)));
    std::cout << "n_total         " << (ntot ? "commutes" : "VIOLATED") << "\n";
    ok = ok && ntot;
  }
  if (L <= kDenseQubitLimit) {
    const BasisState ref = reference.empty()
                               ? BasisState{0, L}
                               : BasisState::parse(reference);
    if (ref.n != L) {
      std::cerr << "error: reference length does not match the Hamiltonian\n";
      return kExitValidation;
    }
    const Problem p = make_problem(h, ref);
    std::cout << "E_HF            " << p.e_hf << "\n"
              << "E_GS            " << p.e_gs << "\n"
              << "E_HF - E_GS     " << (p.e_hf - p.e_gs) * 1e3 << " mHa\n";
  }
  return ok ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------

int run_stages(const RunConfig& cfg, std::size_t jobs, bool save_ensemble,
               const Problem& problem, const TrialEnergies& trial,
               const json& key, const std::string& run_key, Bundle& bundle,
               std::chrono::steady_clock::time_point t0);

int cmd_run(RunConfig cfg, std::size_t jobs, bool save_ensemble) {
  const auto t0 = std::chrono::steady_clock::now();
  stage(kExitValidation, "validate", [&] {
    cfg.validate();
    return 0;
  });
  const Problem problem = stage(kExitValidation, "load", [&] {
    return make_problem(load(cfg.hamiltonian), BasisState::parse(cfg.reference));
  });
  const TrialEnergies trial = cfg.trial(problem.e_hf);
  if (!trial.window_ok(problem.e_gs)) {
    std::cerr << "warning: s lies outside the unambiguous window for the "
                 "reference ground-state energy\n";
  }

  json key = cfg.to_json();
  key.erase("output_dir");
  key["hamiltonian_sha256"] = hamiltonian_digest(cfg.hamiltonian);
  key["version"] = AQPE_VERSION;
  const std::string run_key = sha256_hex(dump(key));
  Bundle bundle(run_directory(cfg.output_dir, run_key));
  try {
    return run_stages(cfg, jobs, save_ensemble, problem, trial, key, run_key,
                      bundle, t0);
  } catch (const StageError& e) {
    json manifest = {{"config", cfg.to_json()},
                     {"run_key", run_key},
                     {"version", AQPE_VERSION},
                     {"artifacts", bundle.artifacts()},
                     {"complete", false},
                     {"failed_stage", e.stage},
                     {"error", e.message}};
    try {
      write_file(bundle.dir() / "manifest.json", dump(manifest));
    } catch (const std::exception&) {
    }
    throw;
  }
}

int run_stages(const RunConfig& cfg, std::size_t jobs, bool save_ensemble,
               const Problem& problem, const TrialEnergies& trial,
               const json& key, const std::string& run_key, Bundle& bundle,
               std::chrono::steady_clock::time_point t0) {
  const auto pairs = stage(kExitSimulation, "generate", [&] {
    return build_ensemble(problem.split, trial, problem.profile, cfg.ensemble());
  });
  RunOptions ro;
  ro.backend = cfg.backend;
  ro.noise = cfg.noise();
  ro.shots = cfg.shots;
  ro.shot_seed = cfg.master_seed;
  ro.repetitions = cfg.repetitions;
  ro.jobs = jobs;
  ro.keep_records = cfg.shots * cfg.n_circuits * 2 * cfg.repetitions <= 2000000;
  const RunOutput out =
      stage(kExitSimulation, "simulate", [&] { return run_ensemble(problem, pairs, ro); });

  json estimates = {{"e_hf", problem.e_hf}, {"e_gs", problem.e_gs}};
  std::ostringstream rho_csv;
  rho_csv.precision(10);
  const std::string rho_header =
      "mode,repetition,rho_plus,se_plus,rho_minus,se_minus,energy_error,se,kept,"
      "discarded";
  rho_csv << rho_header << "\n";
  stage(kExitPostProcess, "post-process", [&] {
    for (std::size_t m = 0; m < 3; ++m) {
      const PostSelectMode mode = kAllModes[m];
      json per_mode;
      std::vector<double> energies;
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        const RhoEstimate rho = pool(out.tallies[r][m], mode);
        EstimateOptions eo;
        if (r > 0) eo.bootstrap_resamples = 0;
        const EnergyEstimate e = estimate_energy(rho, trial, eo);
        energies.push_back(e.value - problem.e_gs);
        rho_csv << to_string(mode) << ',' << r << ',' << rho.rho_plus << ','
                << rho.se_plus << ',' << rho.rho_minus << ',' << rho.se_minus
                << ',' << e.value - problem.e_gs << ',' << e.std_error << ','
                << rho.kept << ',' << rho.discarded << '\n';
        if (r == 0) {
          per_mode["rho"] = to_json(rho);
          per_mode["energy"] = to_json(e);
          per_mode["energy_error_mha"] = (e.value - problem.e_gs) * 1e3;
          const auto curve = accumulate_curve(out.tallies[0][m], trial);
          bundle.csv("curve_" + std::string(to_string(mode)) + ".csv",
                     curve_csv(curve, problem.e_gs), "i,energy_error,se");
        }
      }
      double mean = 0.0;
      for (double v : energies) mean += v;
      mean /= static_cast<double>(energies.size());
      double var = 0.0;
      for (double v : energies) var += (v - mean) * (v - mean);
      per_mode["repetitions"] = energies.size();
      per_mode["mean_error_mha"] = mean * 1e3;
      if (energies.size() > 1) {
        per_mode["sd_error_mha"] =
            std::sqrt(var / static_cast<double>(energies.size() - 1)) * 1e3;
      }
      estimates[std::string(to_string(mode))] = per_mode;
    }
    return 0;
  });

  stage(kExitPostProcess, "write", [&] {
    bundle.csv("rho.csv", rho_csv.str(), rho_header);
    bundle.json_file("estimates.json", estimates);
    bundle.csv("ensemble_stats.csv", ensemble_stats_csv(pairs),
               "index,branch,direction,tqg,depth");
    bundle.csv("stats.csv", stats_csv(out.stats),
               "qubit,zeros,ones,mean_zeros,mean_ones");
    if (!out.records.empty()) bundle.raw("shots.jsonl", records_jsonl(out.records));
    if (save_ensemble) bundle.json_file("ensemble.json", to_json(pairs));
    bundle.raw("config.txt", cfg.to_text());
    json manifest = {{"config", cfg.to_json()},
                     {"run_key", run_key},
                     {"version", AQPE_VERSION},
                     {"hamiltonian_sha256", key["hamiltonian_sha256"]},
                     {"artifacts", bundle.artifacts()},
                     {"wall_clock_s", elapsed(t0)},
                     {"complete", true}};
    write_file(bundle.dir() / "manifest.json", dump(manifest));
    return 0;
  });

  const json& hf = estimates["hf"];
  std::cout << "run directory   " << bundle.dir().string() << "\n"
            << "E_GS            " << problem.e_gs << "\n";
  for (const char* m : {"raw", "parity", "hf"}) {
    const json& e = estimates[m];
    std::cout << "E - E_GS (" << m << ")" << std::string(7 - std::string(m).size(), ' ')
              << e["energy_error_mha"].get<double>() << " +- "
              << e["energy"]["std_error"].get<double>() * 1e3 << " mHa";
    if (cfg.repetitions > 1) {
      std::cout << "   mean over " << cfg.repetitions
                << " repetitions: " << e["mean_error_mha"].get<double>() << " mHa";
    }
    std::cout << "\n";
  }
  (void)hf;
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_sweep(const RunConfig& cfg, const std::string& s_values,
              const std::string& tau_values, std::size_t circuits,
              std::size_t seeds, double max_tqg, std::size_t jobs) {
  const Problem problem = stage(kExitValidation, "load", [&] {
    cfg.validate();
    return make_problem(load(cfg.hamiltonian), BasisState::parse(cfg.reference));
  });
  std::vector<std::pair<double, double>> grid;
  const auto ss = stage(kExitValidation, "grid", [&] { return parse_list(s_values); });
  const auto ts = stage(kExitValidation, "grid", [&] { return parse_list(tau_values); });
  for (double s : ss) {
    for (double t : ts) grid.emplace_back(s, t);
  }
  SweepOptions so;
  so.T = cfg.T;
  so.epsilon = cfg.epsilon;
  so.max_tqg = max_tqg;
  so.n_circuits = circuits;
  so.seeds = seeds;
  so.shots = cfg.shots;
  so.master_seed = cfg.master_seed;
  so.jobs = jobs;
  so.mode = cfg.mode;
  const auto rows =
      stage(kExitSimulation, "sweep", [&] { return sweep_s_tau(problem, grid, so); });
  json key = {{"command", "sweep"}, {"config", cfg.to_json()}, {"s", ss},
              {"tau", ts}, {"circuits", circuits}, {"seeds", seeds},
              {"max_tqg", max_tqg}, {"version", AQPE_VERSION}};
  key["config"].erase("output_dir");
  const std::string run_key = sha256_hex(dump(key));
  Bundle bundle(run_directory(cfg.output_dir, run_key));
  stage(kExitPostProcess, "write", [&] {
    bundle.csv("sweep.csv", sweep_csv(rows),
               "s,tau,admissible,mean_tqg,variance,mean_energy,samples");
    json manifest = {{"request", key}, {"artifacts", bundle.artifacts()}};
    if (const auto best = sweep_argmin(rows)) {
      manifest["argmin"] = {{"s", rows[*best].s}, {"tau", rows[*best].tau}};
    }
    write_file(bundle.dir() / "manifest.json", dump(manifest));
    return 0;
  });
  std::cout << sweep_csv(rows);
  if (const auto best = sweep_argmin(rows)) {
    std::cout << "minimum variance at s = " << rows[*best].s
              << ", tau = " << rows[*best].tau << "\n";
  }
  std::cout << "run directory " << bundle.dir().string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_shift(const std::string& path, const std::string& reference,
              const std::string& out_path) {
  const PauliHamiltonian h = stage(kExitValidation, "parse", [&] { return load(path); });
  const BasisState ref = stage(kExitValidation, "reference", [&] {
    const BasisState b = BasisState::parse(reference);
    if (b.n != h.qubit_count()) {
      throw Error(ErrorCode::kMismatchedQubitCount,
                  "reference length does not match the Hamiltonian");
    }
    return b;
  });
  const auto ordering = detect_spin_ordering(h);
  if (!ordering) {
    std::cerr << "error: the Hamiltonian does not conserve both spin numbers\n";
    return kExitValidation;
  }
  const ShiftResult r = stage(kExitSimulation, "optimize", [&] {
    return optimize_shift(h, sector_of(ref, *ordering), *ordering);
  });
  const PauliHamiltonian shifted = r.split.full();
  json report = {{"ordering", std::string(to_string(*ordering))},
                 {"alpha", r.params.alpha},
                 {"sector",
                  {{"n_up", r.params.sector.n_up}, {"n_down", r.params.sector.n_down}}},
                 {"mu_i_before", r.mu_i_before},
                 {"mu_i_after", r.split.mu_i},
                 {"terms_after", shifted.terms().size()}};
  if (!out_path.empty()) {
    write_file(out_path, serialize_hamiltonian(shifted));
    report["hamiltonian"] = out_path;
    report["hamiltonian_sha256"] = sha256_hex(serialize_hamiltonian(shifted));
  }
  std::cout << dump(report);
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_baselines(const RunConfig& cfg, const std::string& out_path) {
  const Problem p = stage(kExitValidation, "load", [&] {
    return make_problem(load(cfg.hamiltonian), BasisState::parse(cfg.reference));
  });
  json report = stage(kExitSimulation, "baselines", [&] {
    BaselineContext ctx{p.split, p.profile.hf, p.e_gs, p.ground_state};
    const auto lin = SweepSchedule::linear();
    const CVector psi = exact_adiabatic(p.split, lin, cfg.T, p.profile.hf);
    const double asp_err =
        (psi.dot(apply_hamiltonian(p.hamiltonian, psi)).real() - p.e_gs) * 1e3;
    const TrotterResult tr = trotter_full_error(ctx, lin, cfg.T, {4, 2, {}});
    const DirectSampling ds = direct_sampling_shots(p.hamiltonian, p.ground_state, 1.6e-3);
    const MonteCarloVariance mc =
        direct_sampling_monte_carlo(p.hamiltonian, p.ground_state, 1000000, cfg.master_seed);
    const IqpeReport iq = iqpe_analysis(ctx, {0.4, 10, {}});
    return json{
        {"e_gs", p.e_gs},
        {"exact_adiabatic",
         {{"T", cfg.T},
          {"error_mha", asp_err},
          {"fidelity", fidelity(psi, p.ground_state)},
          {"chemical_accuracy_mha", 1.52}}},
        {"uncontrolled_asp_tqg",
         expected_tqg(p.split, lin, cfg.T, cfg.tau, {}, false)},
        {"trotter",
         {{"path_error_k4_mha", trotter_path_error(ctx, lin, cfg.T, 4)},
          {"full_error_k4_m2_mha", tr.error_mha},
          {"tqg_k4_m2", tr.tqg},
          {"term_order", "file"},
          {"tolerances", {{"path_mha", 0.05}, {"full_mha", 0.3}, {"tqg_rel", 0.2}}}}},
        {"direct_sampling",
         {{"target_se_mha", 1.6},
          {"mu", ds.mu},
          {"variance", ds.variance},
          {"shots", ds.shots},
          {"monte_carlo_variance", mc.variance},
          {"monte_carlo_variance_se", mc.variance_se},
          {"tolerances", {{"shots_rel", 0.15}}}}},
        {"iqpe",
         {{"tau", 0.4},
          {"l_max", 10},
          {"error_mha", iq.error_mha},
          {"overlap", iq.overlap},
          {"precision_mha", iq.precision_mha},
          {"step_cost", iq.step_cost},
          {"total_tqg", iq.total_tqg},
          {"max_tqg", iq.max_tqg},
          {"phase_wrap", iq.phase_wrap},
          {"tolerances", {{"error_mha", 0.3}, {"tqg_rel", 0.25}}}}}};
  });
  const std::string text = dump(report);
  if (!out_path.empty()) write_file(out_path, text);
  std::cout << text;
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_stats(const std::string& shots_path, std::size_t qubits,
              std::size_t repetitions) {
  const std::vector<ShotRecord> records = stage(kExitValidation, "read", [&] {
    std::ifstream in(shots_path);
    if (!in) throw Error(ErrorCode::kIo, "cannot read '" + shots_path + "'");
    std::vector<ShotRecord> out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      ShotRecord r;
      r.circuit_index = j.at("circuit").get<std::size_t>();
      r.branch = j.at("branch").get<std::string>() == "plus" ? TrialBranch::kPlus
                                                             : TrialBranch::kMinus;
      r.direction_sign = j.at("direction").get<int>();
      r.ancilla_bit = j.at("ancilla_bit").get<int>();
      r.ancilla_y = j.at("ancilla_y").get<int>();
      r.physical_bits = j.at("physical").get<std::uint64_t>();
      r.leaked_mask = j.at("leaked").get<std::uint64_t>();
      out.push_back(r);
    }
    return out;
  });
  const std::string csv = stats_csv(measurement_stats(records, qubits, repetitions));
  check_csv(csv, "qubit,zeros,ones,mean_zeros,mean_ones");
  std::cout << csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized adiabatic state preparation with Hadamard-test "
               "energy readout"};
  app.require_subcommand(1);
  app.set_version_flag("--version", AQPE_VERSION);

  // Options shared by the configurable subcommands.
  std::string config_path;
  std::string preset_name = "h3plus-paper";
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::string backend;
  std::string mode;
  std::size_t jobs = 1;
  std::string out_dir;
  auto add_config_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--preset", preset_name, "named preset")->capture_default_str();
    sub->add_option("--set", overrides, "override, e.g. --set shots=10");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--backend", backend, "exact, density or leakage");
    sub->add_option("--mode", mode, "post-selection mode: raw, parity or hf");
    sub->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    sub->add_option("--out", out_dir, "output root directory");
  };
  // Precedence: flags > file > preset.
  auto resolve = [&]() {
    RunConfig cfg = preset(preset_name);
    if (!config_path.empty()) apply_config_text(cfg, read_file(config_path));
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument, "--set expects key=value");
      }
      cfg.set(o.substr(0, eq), o.substr(eq + 1));
    }
    if (seed != 0) cfg.master_seed = seed;
    if (!backend.empty()) cfg.set("backend", backend);
    if (!mode.empty()) cfg.set("mode", mode);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return cfg;
  };

  auto* validate = app.add_subcommand("validate", "check a Hamiltonian file");
  std::string ham_path;
  std::string reference = "110000";
  validate->add_option("hamiltonian", ham_path, "Hamiltonian file (default: bundled)");
  validate->add_option("--reference", reference, "reference bit string")
      ->capture_default_str();

  auto* run = app.add_subcommand("run", "generate, simulate and estimate");
  add_config_options(run);
  bool save_ensemble = false;
  run->add_flag("--save-ensemble", save_ensemble, "write ensemble.json");

  auto* sweep = app.add_subcommand("sweep", "(s, tau) variance sweep");
  add_config_options(sweep);
  std::string s_values = "4,6,8,10,12,14";
  std::string tau_values = "0.06,0.08,0.1,0.12,0.15,0.2";
  std::size_t sweep_circuits = 50;
  std::size_t sweep_seeds = 20;
  double max_tqg = 1100;
  sweep->add_option("--s-values", s_values)->capture_default_str();
  sweep->add_option("--tau-values", tau_values)->capture_default_str();
  sweep->add_option("--circuits", sweep_circuits)->capture_default_str();
  sweep->add_option("--seeds", sweep_seeds)->capture_default_str();
  sweep->add_option("--max-tqg", max_tqg)->capture_default_str();

  auto* shift = app.add_subcommand("shift-optimize", "minimize mu_I by symmetry shifts");
  std::string shift_out;
  shift->add_option("hamiltonian", ham_path, "Hamiltonian file (default: bundled)");
  shift->add_option("--reference", reference)->capture_default_str();
  shift->add_option("--output", shift_out, "write the shifted Hamiltonian here");

  auto* baselines = app.add_subcommand("baselines", "Trotter, direct sampling and iQPE");
  add_config_options(baselines);
  std::string baselines_out;
  baselines->add_option("--output", baselines_out, "JSON report path");

  auto* stats = app.add_subcommand("stats", "per-qubit 0/1 counts from shots.jsonl");
  std::string shots_path;
  std::size_t qubits = 6;
  std::size_t repetitions = 1;
  stats->add_option("shots", shots_path)->required();
  stats->add_option("--qubits", qubits)->capture_default_str();
  stats->add_option("--repetitions", repetitions)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (validate->parsed()) return cmd_validate(ham_path, reference);
    if (shift->parsed()) return cmd_shift(ham_path, reference, shift_out);
    if (stats->parsed()) return cmd_stats(shots_path, qubits, repetitions);
    const RunConfig cfg = stage(kExitValidation, "config", resolve);
    if (run->parsed()) return cmd_run(cfg, jobs, save_ensemble);
    if (sweep->parsed()) {
      return cmd_sweep(cfg, s_values, tau_values, sweep_circuits, sweep_seeds,
                       max_tqg, jobs);
    }
    if (baselines->parsed()) return cmd_baselines(cfg, baselines_out);
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage << "]: " << e.message << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimulation;
  }
  return kExitOk;
}
