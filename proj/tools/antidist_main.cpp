#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "antidist/fixtures.hpp"
#include "antidist/json_io.hpp"
#include "antidist/search.hpp"
#include "antidist/sdp.hpp"

namespace {

using namespace antidist;

enum ExitStatus : int {
  kOk = 0,           // ran to completion / decision reached / checks passed
  kCheckFailed = 1,  // a reproduction check or certificate verification failed
  kUsage = 2,        // bad flags, unreadable or malformed input
  kSolverFailure = 3,
};

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt(Real v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

void print_checks(const std::vector<CheckRow>& rows, bool json_mode) {
  if (json_mode) {
    Json doc;
    Json checks = Json::array();
    bool all = true;
    for (const CheckRow& row : rows) {
      checks.push_back(Json{{"name", row.name}, {"pass", row.pass}, {"detail", row.detail}});
      all = all && row.pass;
    }
    doc["checks"] = std::move(checks);
    doc["all_pass"] = all;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  for (const CheckRow& row : rows) {
    std::cout << (row.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(34) << row.name
              << " " << row.detail << "\n";
  }
}

int cmd_reproduce(const std::string& states_path, const std::string& y_path, bool json_mode) {
  StateSet states = states_path.empty() ? fixtures::counterexample_states()
                                        : load_state_set(states_path);
  Certificate cert = y_path.empty() ? fixtures::counterexample_certificate()
                                    : load_certificate(y_path);
  const HermitianMatrix& y = cert.y;

  std::vector<CheckRow> rows;

  // (a) largest pairwise overlap and the d=4 bound
  const GramReport gram = gram_report(states);
  {
    const Real delta = std::abs(gram.max_offdiag - fixtures::kReferenceMaxOverlap);
    const bool pass = delta <= 1e-6 && gram.bound == Real(2) / Real(3);
    rows.push_back({"overlap max = 0.64514235 (1e-6)", pass,
                    "max=" + fmt(gram.max_offdiag) + " delta=" + fmt(delta, 3) +
                        " bound=" + fmt(gram.bound)});
  }

  // (b) certificate trace
  {
    const Real tr = trace(y);
    const Real delta = std::abs(tr - fixtures::kReferenceTrace);
    rows.push_back({"trace(Y) = 0.000393813028863 (1e-12)", delta <= 1e-12,
                    "trace=" + fmt(tr, 15) + " delta=" + fmt(delta, 3)});
  }

  // (c) the sixteen slack eigenvalues, and strict feasibility
  {
    Real worst_delta = 0;
    Real min_slack = std::numeric_limits<Real>::infinity();
    const AntidistInstance instance = AntidistInstance::from_states(states);
    for (Index i = 0; i < 4; ++i) {
      const Spectrum spec = hermitian_eigen(instance.rho(i) - y);
      for (Index k = 0; k < 4; ++k) {
        worst_delta = std::max(
            worst_delta,
            std::abs(spec.eigenvalues(k) - fixtures::kReferenceSlackEigenvalues[i][k]));
      }
      min_slack = std::min(min_slack, spec.eigenvalues(0));
    }
    rows.push_back({"slack eigenvalues (1e-6, all > 0)", worst_delta <= 1e-6 && min_slack > 0,
                    "max delta=" + fmt(worst_delta, 3) + " min eig=" + fmt(min_slack, 6)});
  }

  // (d) independent solve, (e) decision
  {
    const AntidistInstance instance = AntidistInstance::from_states(states);
    try {
      const DecisionReport report = decide_antidistinguishability(instance);
      const Real delta = std::abs(report.solve.beta - fixtures::kReferenceTraceFull);
      rows.push_back({"solver beta = 0.000393813... (1e-5)",
                      delta <= 1e-5 && report.solve.gap <= 1e-9,
                      "beta=" + fmt(report.solve.beta) + " delta=" + fmt(delta, 3) +
                          " gap=" + fmt(report.solve.gap, 3)});
      rows.push_back({"decision = NotAntidistinguishable",
                      report.decision == Decision::kNotAntidistinguishable &&
                          report.certificate.has_value(),
                      std::string("decision=") + to_string(report.decision)});
    } catch (const ConvergenceError& e) {
      rows.push_back({"solver beta = 0.000393813... (1e-5)", false, e.what()});
      rows.push_back({"decision = NotAntidistinguishable", false, "solver failed"});
    }
  }

  print_checks(rows, json_mode);
  for (const CheckRow& row : rows) {
    if (!row.pass) return kCheckFailed;
  }
  return kOk;
}

int cmd_solve(const std::string& path, const std::string& out_path, Real gap_tol, Real threshold,
              bool json_mode) {
  const StateSet states = load_state_set(path);
  const AntidistInstance instance = AntidistInstance::from_states(states);
  SolverConfig config;
  config.gap_tol = gap_tol;

  DecisionReport report = decide_antidistinguishability(instance, config, threshold);
  if (report.solver_failed) {
    std::cerr << "solver failed: " << report.diagnostics << "\n";
    return kSolverFailure;
  }

  Json doc;
  doc["alpha"] = report.solve.alpha;
  doc["beta"] = report.solve.beta;
  doc["gap"] = report.solve.gap;
  doc["decision"] = to_string(report.decision);
  doc["primal_residual"] = report.solve.primal_residual;
  doc["dual_min_slack_eig"] = report.solve.dual_min_slack_eig;
  doc["stages"] = Json::array();
  for (const StageRecord& stage : report.solve.stages) {
    doc["stages"].push_back(Json{{"t", stage.t},
                                 {"newton_steps", stage.newton_steps},
                                 {"dual_objective", stage.dual_objective},
                                 {"gap", stage.gap}});
  }

  if (!out_path.empty()) {
    Json artifact = doc;
    artifact["y"] = hermitian_to_json(report.solve.y);
    Json povm = Json::array();
    for (const HermitianMatrix& element : report.solve.povm.elements) {
      povm.push_back(hermitian_to_json(element));
    }
    artifact["povm"] = std::move(povm);
    if (report.certificate.has_value()) {
      artifact["certificate"] = certificate_to_json(*report.certificate);
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << artifact.dump(2) << "\n";
  }

  if (json_mode) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "alpha    = " << fmt(report.solve.alpha) << "\n"
              << "beta     = " << fmt(report.solve.beta) << "\n"
              << "gap      = " << fmt(report.solve.gap, 3) << "\n"
              << "decision = " << to_string(report.decision) << "\n";
    if (!report.diagnostics.empty()) std::cout << "note     : " << report.diagnostics << "\n";
  }
  return kOk;
}

int cmd_certify(const std::string& states_path, const std::string& cert_path, bool harden,
                bool json_mode) {
  const StateSet states = load_state_set(states_path);
  const AntidistInstance instance = AntidistInstance::from_states(states);
  Certificate cert = load_certificate(cert_path);
  if (cert.y.dim() != instance.dim()) {
    std::cerr << "certificate dimension " << cert.y.dim() << " does not match state dimension "
              << instance.dim() << "\n";
    return kUsage;
  }

  Real shift = 0;
  if (harden) {
    std::optional<Certificate> hardened = harden_certificate(cert.y, instance);
    if (!hardened.has_value()) {
      std::cerr << "hardening failed: trace margin too thin\n";
      return kCheckFailed;
    }
    shift = hardened->shift_applied;
    cert = std::move(*hardened);
  }

  const VerificationReport report = verify_certificate(cert.y, instance, 0);
  if (json_mode) {
    Json doc;
    doc["valid"] = report.valid;
    doc["trace"] = report.trace_value;
    doc["per_state_min_eig"] = Json::array();
    for (Index i = 0; i < report.per_state_min_eig.size(); ++i) {
      doc["per_state_min_eig"].push_back(report.per_state_min_eig(i));
    }
    doc["shift_applied"] = shift;
    if (report.failure_reason.has_value()) doc["failure_reason"] = *report.failure_reason;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "valid      = " << (report.valid ? "yes" : "no") << "\n"
              << "trace      = " << fmt(report.trace_value, 15) << "\n";
    for (Index i = 0; i < report.per_state_min_eig.size(); ++i) {
      std::cout << "min eig " << i + 1 << "  = " << fmt(report.per_state_min_eig(i), 6) << "\n";
    }
    if (harden) std::cout << "shift      = " << fmt(shift, 6) << "\n";
    if (report.failure_reason.has_value()) {
      std::cout << "reason     : " << *report.failure_reason << "\n";
    }
  }
  return report.valid ? kOk : kCheckFailed;
}

int cmd_gram(const std::string& path, bool json_mode) {
  const StateSet states = load_state_set(path);
  const GramReport report = gram_report(states);
  if (json_mode) {
    Json doc;
    doc["n"] = report.n;
    doc["dim"] = report.dim;
    Json overlaps = Json::array();
    for (Index i = 0; i < report.n; ++i) {
      Json row = Json::array();
      for (Index j = 0; j < report.n; ++j) row.push_back(report.overlaps(i, j));
      overlaps.push_back(std::move(row));
    }
    doc["overlaps"] = std::move(overlaps);
    doc["max_offdiag"] = report.max_offdiag;
    doc["bound"] = report.bound;
    doc["hypothesis_satisfied"] = report.hypothesis_satisfied;
    doc["n_equals_dim"] = report.n_equals_dim;
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "overlaps |<psi_i|psi_j>|:\n" << std::fixed << std::setprecision(8);
  for (Index i = 0; i < report.n; ++i) {
    std::cout << " ";
    for (Index j = 0; j < report.n; ++j) std::cout << " " << report.overlaps(i, j);
    std::cout << "\n";
  }
  std::cout.unsetf(std::ios::fixed);
  std::cout << "max off-diagonal = " << fmt(report.max_offdiag) << "\n"
            << "bound (d-2)/(d-1) = " << fmt(report.bound) << "\n"
            << "hypothesis " << (report.hypothesis_satisfied ? "satisfied" : "not satisfied")
            << (report.n_equals_dim ? "" : "  [note: n != dim]") << "\n";
  return kOk;
}

int cmd_search(const SearchConfig& config, bool json_mode) {
  const SearchSummary summary = run_search(config);
  if (json_mode) {
    std::cout << search_summary_to_json(summary, config).dump(2) << "\n";
  } else {
    std::cout << "trials          = " << summary.trials << "\n"
              << "gated           = " << summary.gated << "\n"
              << "solved          = " << summary.solved << "\n"
              << "inconclusive    = " << summary.inconclusive << "\n"
              << "counterexamples = " << summary.counterexamples << "\n";
    if (summary.best.has_value()) {
      std::cout << "best: trial " << summary.best->trial_index << " seed " << summary.best->seed
                << " beta " << fmt(summary.best->beta.value_or(0)) << "\n";
    }
    std::cout << "throughput      = " << fmt(summary.trials_per_second, 4) << " trials/s\n";
  }
  return kOk;
}

int default_workers() {
  if (const char* env = std::getenv("ANTIDIST_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 0;  // resolved to available parallelism by run_search
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"antidistinguishability toolkit: exclusion SDP solver, certificates, search"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit exactly one JSON document on stdout");

  auto* reproduce = app.add_subcommand(
      "reproduce", "re-check the built-in d=4 counterexample against its reference values");
  std::string rep_states, rep_y;
  reproduce->add_option("--states", rep_states, "override the built-in state fixture");
  reproduce->add_option("--y", rep_y, "override the built-in certificate fixture");

  auto* solve_cmd = app.add_subcommand("solve", "solve the exclusion SDP for a state-set file");
  std::string solve_path, solve_out;
  Real solve_gap_tol = SolverConfig{}.gap_tol;
  Real solve_threshold = kDecisionThreshold;
  solve_cmd->add_option("file", solve_path, "state-set JSON file")->required();
  solve_cmd->add_option("--out", solve_out, "write measurement and Y as JSON");
  solve_cmd->add_option("--gap-tol", solve_gap_tol, "duality gap tolerance");
  solve_cmd->add_option("--threshold", solve_threshold, "decision threshold on alpha");

  auto* certify =
      app.add_subcommand("certify", "verify a non-antidistinguishability certificate");
  std::string cert_states, cert_file;
  bool cert_harden = false;
  certify->add_option("states", cert_states, "state-set JSON file")->required();
  certify->add_option("certificate", cert_file, "certificate JSON file")->required();
  certify->add_flag("--harden", cert_harden, "harden before verifying");

  auto* gram = app.add_subcommand("gram", "pairwise overlaps and the inner-product hypothesis");
  std::string gram_path;
  gram->add_option("file", gram_path, "state-set JSON file")->required();

  auto* search = app.add_subcommand("search", "seeded Haar-random counterexample search");
  SearchConfig search_config;
  bool no_gate = false;
  search->add_option("--dim", search_config.dim, "state dimension")->required();
  search->add_option("--trials", search_config.trials, "number of trials")->required();
  search->add_option("--seed", search_config.base_seed, "base seed")->required();
  search->add_option("--out", search_config.output_path, "counterexample record stream (JSONL)");
  search->add_option("--workers", search_config.workers,
                     "worker threads (default: ANTIDIST_WORKERS or hardware)");
  search->add_flag("--no-gate", no_gate, "solve even when the hypothesis fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (reproduce->parsed()) return cmd_reproduce(rep_states, rep_y, json_mode);
    if (solve_cmd->parsed()) {
      return cmd_solve(solve_path, solve_out, solve_gap_tol, solve_threshold, json_mode);
    }
    if (certify->parsed()) return cmd_certify(cert_states, cert_file, cert_harden, json_mode);
    if (gram->parsed()) return cmd_gram(gram_path, json_mode);
    if (search->parsed()) {
      if (search_config.workers == 0) search_config.workers = default_workers();
      search_config.require_hypothesis = !no_gate;
      return cmd_search(search_config, json_mode);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
