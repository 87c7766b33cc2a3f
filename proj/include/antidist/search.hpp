#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antidist/certificate.hpp"
#include "antidist/json_io.hpp"
#include "antidist/sdp.hpp"
#include "antidist/states.hpp"
#include "antidist/types.hpp"

namespace antidist {

struct SearchConfig {
  Index dim = 4;
  std::int64_t trials = 1;
  std::uint64_t base_seed = 0;
  SolverConfig solver;
  // Only solves with alpha above this are candidate counterexamples worth
  // the certificate work (an order above the solver's gap tolerance).
  Real alpha_record_threshold = 1e-7;
  // Skip the solver when the inner-product hypothesis already fails; such
  // sets cannot be counterexamples.
  bool require_hypothesis = true;
  std::string output_path;  // empty: no persistence
  int workers = 0;          // 0: available parallelism

  void validate() const;
};

struct TrialRecord {
  std::int64_t trial_index = 0;
  std::uint64_t seed = 0;
  Real max_offdiag = 0;
  bool hypothesis_satisfied = false;
  std::optional<Real> alpha;  // absent when gated or solver failed
  std::optional<Real> beta;
  bool solver_failed = false;
  bool is_counterexample = false;  // hypothesis holds and a hardened certificate verifies
  std::optional<StateSet> state_set;       // persisted only for counterexamples
  std::optional<Certificate> certificate;  // likewise
};

struct SearchSummary {
  std::int64_t trials = 0;
  std::int64_t gated = 0;  // hypothesis failed, solver skipped
  std::int64_t solved = 0;
  std::int64_t inconclusive = 0;  // solver did not converge
  std::int64_t counterexamples = 0;
  std::optional<TrialRecord> best;  // highest beta among counterexamples
  Real elapsed_seconds = 0;
  Real trials_per_second = 0;
};

/// One seeded trial: draw dim Haar-random states from the seed's stream,
/// check the hypothesis, optionally solve and attempt certification.
/// Deterministic given (dim, seed, config); solver failures are recorded,
/// never thrown.
TrialRecord run_trial(Index dim, std::uint64_t seed, const SearchConfig& config);

/// The evaluation core of run_trial on explicit states.
TrialRecord evaluate_trial(const StateSet& states, std::int64_t trial_index, std::uint64_t seed,
                           const SearchConfig& config);

/// Runs trials with seeds base_seed .. base_seed + trials - 1 on a bounded
/// worker pool. Counterexample records are appended to the output path as
/// JSON lines in trial order, and a sidecar summary is written next to it;
/// both are identical for identical configs regardless of worker count.
SearchSummary run_search(const SearchConfig& config);

/// Counterexamples first, descending beta, ties by trial index ascending;
/// remaining records by trial index.
std::vector<TrialRecord> rank_records(std::vector<TrialRecord> records);

Json trial_record_to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const Json& doc);
Json search_summary_to_json(const SearchSummary& summary, const SearchConfig& config);

std::string summary_path_for(const std::string& output_path);

}  // namespace antidist
