#include "antidist/search.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace antidist {

namespace {
// Bound on how far workers may run ahead of the in-order record writer.
constexpr std::int64_t kDispatchWindow = 4096;
}  // namespace

void SearchConfig::validate() const {
  if (dim < 1) throw ArgumentError("SearchConfig: dim must be positive");
  if (trials < 1) throw ArgumentError("SearchConfig: trials must be at least 1");
  if (!(alpha_record_threshold > 0)) {
    throw ArgumentError("SearchConfig: alpha_record_threshold must be positive");
  }
  if (workers < 0) throw ArgumentError("SearchConfig: workers must be non-negative");
  solver.validate();
}

TrialRecord evaluate_trial(const StateSet& states, std::int64_t trial_index, std::uint64_t seed,
                           const SearchConfig& config) {
  TrialRecord record;
  record.trial_index = trial_index;
  record.seed = seed;

  const GramReport gram = gram_report(states);
  record.max_offdiag = gram.max_offdiag;
  record.hypothesis_satisfied = gram.hypothesis_satisfied;
  if (config.require_hypothesis && !gram.hypothesis_satisfied) {
    return record;  // gated: the premise fails, no counterexample possible
  }

  const AntidistInstance instance = AntidistInstance::from_states(states);
  SolveResult solved;
  try {
    solved = solve(instance, config.solver);
  } catch (const ConvergenceError&) {
    record.solver_failed = true;
    return record;
  }
  record.alpha = solved.alpha;
  record.beta = solved.beta;

  if (gram.hypothesis_satisfied && solved.alpha > config.alpha_record_threshold) {
    std::optional<Certificate> cert = harden_certificate(solved.y, instance);
    if (cert.has_value() && verify_certificate(cert->y, instance, 0).valid) {
      record.is_counterexample = true;
      record.state_set = states;
      record.certificate = std::move(cert);
    }
  }
  return record;
}

TrialRecord run_trial(Index dim, std::uint64_t seed, const SearchConfig& config) {
  RngStream rng(seed);
  std::vector<PureState> states;
  states.reserve(static_cast<size_t>(dim));
  for (Index i = 0; i < dim; ++i) {
    states.push_back(haar_random_state(dim, rng));
  }
  const std::int64_t index = static_cast<std::int64_t>(seed - config.base_seed);
  return evaluate_trial(StateSet(std::move(states)), index, seed, config);
}

SearchSummary run_search(const SearchConfig& config) {
  config.validate();

  std::ofstream out;
  if (!config.output_path.empty()) {
    out.open(config.output_path, std::ios::app);
    if (!out) throw Error("run_search: output path not writable: " + config.output_path);
  }

  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, config.trials));

  SearchSummary summary;
  summary.trials = config.trials;

  std::mutex mu;
  std::condition_variable cv;
  std::int64_t next_dispatch = 0;
  std::int64_t next_retire = 0;
  std::map<std::int64_t, TrialRecord> completed;

  const auto t_start = std::chrono::steady_clock::now();

  auto retire_ready = [&]() {
    // under mu
    while (!completed.empty() && completed.begin()->first == next_retire) {
      TrialRecord& record = completed.begin()->second;
      if (record.solver_failed) {
        ++summary.inconclusive;
      } else if (config.require_hypothesis && !record.hypothesis_satisfied) {
        ++summary.gated;
      } else {
        ++summary.solved;
      }
      if (record.is_counterexample) {
        ++summary.counterexamples;
        if (!summary.best.has_value() ||
            record.beta.value_or(0) > summary.best->beta.value_or(0)) {
          summary.best = record;
        }
        if (out.is_open()) {
          out << trial_record_to_json(record).dump() << "\n" << std::flush;
        }
      }
      completed.erase(completed.begin());
      ++next_retire;
    }
  };

  auto worker_loop = [&]() {
    while (true) {
      std::int64_t mine;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] {
          return next_dispatch >= config.trials ||
                 next_dispatch - next_retire < kDispatchWindow;
        });
        if (next_dispatch >= config.trials) return;
        mine = next_dispatch++;
      }
      TrialRecord record;
      try {
        record = run_trial(config.dim, config.base_seed + static_cast<std::uint64_t>(mine),
                           config);
      } catch (const std::exception&) {
        record.trial_index = mine;
        record.seed = config.base_seed + static_cast<std::uint64_t>(mine);
        record.solver_failed = true;
      }
      record.trial_index = mine;
      {
        std::lock_guard<std::mutex> lock(mu);
        completed.emplace(mine, std::move(record));
        retire_ready();
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
  for (std::thread& t : pool) t.join();
  {
    std::lock_guard<std::mutex> lock(mu);
    retire_ready();
  }

  const auto t_end = std::chrono::steady_clock::now();
  summary.elapsed_seconds = std::chrono::duration<Real>(t_end - t_start).count();
  summary.trials_per_second =
      summary.elapsed_seconds > 0 ? static_cast<Real>(summary.trials) / summary.elapsed_seconds
                                  : 0;

  if (out.is_open()) {
    std::ofstream sidecar(summary_path_for(config.output_path));
    if (!sidecar) throw Error("run_search: cannot write summary sidecar");
    sidecar << search_summary_to_json(summary, config).dump(2) << "\n";
  }
  return summary;
}

std::vector<TrialRecord> rank_records(std::vector<TrialRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.is_counterexample != b.is_counterexample) return a.is_counterexample;
    if (a.is_counterexample) {
      const Real ba = a.beta.value_or(0);
      const Real bb = b.beta.value_or(0);
      if (ba != bb) return ba > bb;
    }
    return a.trial_index < b.trial_index;
  });
  return records;
}

Json trial_record_to_json(const TrialRecord& record) {
  Json doc;
  doc["trial_index"] = record.trial_index;
  doc["seed"] = record.seed;
  doc["max_offdiag"] = record.max_offdiag;
  doc["hypothesis_satisfied"] = record.hypothesis_satisfied;
  if (record.alpha.has_value()) doc["alpha"] = *record.alpha;
  if (record.beta.has_value()) doc["beta"] = *record.beta;
  doc["solver_failed"] = record.solver_failed;
  doc["is_counterexample"] = record.is_counterexample;
  if (record.state_set.has_value()) doc["state_set"] = state_set_to_json(*record.state_set);
  if (record.certificate.has_value()) {
    doc["certificate"] = certificate_to_json(*record.certificate);
  }
  return doc;
}

TrialRecord trial_record_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("trial record: expected an object");
  TrialRecord record;
  record.trial_index = doc.at("trial_index").get<std::int64_t>();
  record.seed = doc.at("seed").get<std::uint64_t>();
  record.max_offdiag = doc.at("max_offdiag").get<Real>();
  record.hypothesis_satisfied = doc.at("hypothesis_satisfied").get<bool>();
  if (doc.contains("alpha")) record.alpha = doc["alpha"].get<Real>();
  if (doc.contains("beta")) record.beta = doc["beta"].get<Real>();
  if (doc.contains("solver_failed")) record.solver_failed = doc["solver_failed"].get<bool>();
  record.is_counterexample = doc.at("is_counterexample").get<bool>();
  if (doc.contains("state_set")) record.state_set = state_set_from_json(doc["state_set"]);
  if (doc.contains("certificate")) {
    record.certificate = certificate_from_json(doc["certificate"]);
  }
  return record;
}

Json search_summary_to_json(const SearchSummary& summary, const SearchConfig& config) {
  Json doc;
  doc["config"] = Json{{"dim", config.dim},
                       {"trials", config.trials},
                       {"base_seed", config.base_seed},
                       {"alpha_record_threshold", config.alpha_record_threshold},
                       {"require_hypothesis", config.require_hypothesis},
                       {"gap_tol", config.solver.gap_tol},
                       {"rng", RngStream::kName}};
  doc["counts"] = Json{{"trials", summary.trials},
                       {"gated", summary.gated},
                       {"solved", summary.solved},
                       {"inconclusive", summary.inconclusive},
                       {"counterexamples", summary.counterexamples}};
  if (summary.best.has_value()) {
    doc["best"] = Json{{"trial_index", summary.best->trial_index},
                       {"seed", summary.best->seed},
                       {"beta", summary.best->beta.value_or(0)}};
  } else {
    doc["best"] = nullptr;
  }
  doc["timing"] = Json{{"elapsed_seconds", summary.elapsed_seconds},
                       {"trials_per_second", summary.trials_per_second}};
  return doc;
}

std::string summary_path_for(const std::string& output_path) {
  return output_path + ".summary.json";
}

}  // namespace antidist
