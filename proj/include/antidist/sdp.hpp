#pragma once

#include <optional>
#include <string>
#include <vector>

#include "antidist/certificate.hpp"
#include "antidist/instance.hpp"
#include "antidist/types.hpp"

namespace antidist {

// Decision threshold separating solver noise from genuinely positive
// optimal values (an order above the default gap tolerance).
inline constexpr Real kDecisionThreshold = 1e-7;

struct SolverConfig {
  Real gap_tol = 1e-9;
  Real t_initial = 1.0;
  Real t_growth = 10.0;
  Real newton_tol = 1e-10;
  int max_newton_per_stage = 50;
  int max_stages = 60;
  Real line_search_backoff = 0.5;

  void validate() const;
};

struct StageRecord {
  Real t = 0;
  int newton_steps = 0;
  Real dual_objective = 0;     // trace(Y) at stage end
  Real gap = 0;                // sum_i Tr(N_i (rho_i - Y)); identity target n*d/t
  Real residual = 0;           // ||t I - sum_i (rho_i - Y)^{-1}||_F
  bool newton_converged = false;
};

struct SolveResult {
  Real alpha = 0;  // primal objective of the returned measurement
  Real beta = 0;   // trace of the returned y
  Real gap = 0;    // alpha - beta
  Povm povm;
  HermitianMatrix y;
  Real primal_residual = 0;      // ||sum_i N_i - I||_F
  Real povm_min_eigenvalue = 0;  // min_i min eigenvalue of N_i
  Real dual_min_slack_eig = 0;   // min_i min eigenvalue of rho_i - y
  std::vector<StageRecord> stages;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SolveResult last_iterate)
      : Error(what), last_iterate(std::move(last_iterate)) {}
  SolveResult last_iterate;
};

/// Central-path barrier solve of the exclusion SDP pair. Returns matched
/// strictly feasible primal/dual solutions with alpha - beta <= gap_tol.
SolveResult solve(const AntidistInstance& instance, const SolverConfig& config = {});

/// sum_i Tr(N_i rho_i); no feasibility check.
Real primal_objective(const Povm& povm, const AntidistInstance& instance);

struct PrimalFeasibility {
  Real min_eigenvalue = 0;         // min over elements of their smallest eigenvalue
  Real completeness_residual = 0;  // ||sum_i N_i - I||_F
  bool within(Real tol) const {
    return min_eigenvalue >= -tol && completeness_residual <= tol;
  }
};
PrimalFeasibility check_primal_feasible(const Povm& povm, Real tol);

struct DualFeasibility {
  VectorXr per_state_min_eig;
  Real min_slack_eig = 0;
  bool within(Real tol) const { return min_slack_eig >= -tol; }
};
DualFeasibility check_dual_feasible(const HermitianMatrix& y, const AntidistInstance& instance,
                                    Real tol);

enum class Decision {
  kAntidistinguishable,
  kNotAntidistinguishable,
  kInconclusive,
};

const char* to_string(Decision d);

struct DecisionReport {
  Decision decision = Decision::kInconclusive;
  SolveResult solve;  // raw evidence (last iterate on solver failure)
  std::optional<Certificate> certificate;
  bool solver_failed = false;
  std::string diagnostics;
};

/// Antidistinguishable when alpha <= threshold (the attached measurement
/// achieves it); NotAntidistinguishable when a hardened certificate
/// verifies at psd_tol 0; Inconclusive otherwise.
DecisionReport decide_antidistinguishability(const AntidistInstance& instance,
                                             const SolverConfig& config = {},
                                             Real threshold = kDecisionThreshold);

}  // namespace antidist
