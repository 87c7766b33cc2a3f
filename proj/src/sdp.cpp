#include "antidist/sdp.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "antidist/detail/barrier.hpp"

namespace antidist {

namespace {

using Scalar = long double;
using Core = detail::BarrierCore<Scalar>;
using CMatL = ComplexMatrix<Scalar>;

// A stage that stalls below the Newton residual criterion is still usable
// when the induced measurement defect ||sum N - I||_F stays within this
// ceiling; at the final stages the criterion itself sits below the
// precision floor of the slack inversions.
constexpr Real kStallCeiling = 1e-8;

// The last stage overshoots n*d/gap_tol by at most this factor instead of
// the full t_growth, which keeps the terminal conditioning ~8x milder for
// the default growth of 10.
constexpr Real kFinalStageMargin = 1.25;

std::vector<CMatL> to_working_precision(const AntidistInstance& instance) {
  std::vector<CMatL> rhos;
  rhos.reserve(static_cast<size_t>(instance.size()));
  for (Index i = 0; i < instance.size(); ++i) {
    rhos.push_back(instance.rho(i).matrix().cast<std::complex<Scalar>>());
  }
  return rhos;
}

SolveResult finalize(const Core& core, Scalar t, const AntidistInstance& instance,
                     std::vector<StageRecord> stages) {
  SolveResult result;
  result.stages = std::move(stages);

  result.y = HermitianMatrix(core.y().cast<Complex>());
  result.beta = trace(result.y);

  result.povm.elements.clear();
  for (const CMatL& element : core.measurement(t)) {
    result.povm.elements.emplace_back(element.cast<Complex>());
  }
  result.alpha = primal_objective(result.povm, instance);
  result.gap = result.alpha - result.beta;

  const PrimalFeasibility pf = check_primal_feasible(result.povm, 0);
  result.primal_residual = pf.completeness_residual;
  result.povm_min_eigenvalue = pf.min_eigenvalue;
  result.dual_min_slack_eig = check_dual_feasible(result.y, instance, 0).min_slack_eig;
  return result;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(gap_tol > 0)) throw ArgumentError("SolverConfig: gap_tol must be positive");
  if (!(t_initial > 0)) throw ArgumentError("SolverConfig: t_initial must be positive");
  if (!(t_growth > 1)) throw ArgumentError("SolverConfig: t_growth must exceed 1");
  if (!(newton_tol > 0)) throw ArgumentError("SolverConfig: newton_tol must be positive");
  if (max_newton_per_stage < 1) throw ArgumentError("SolverConfig: max_newton_per_stage < 1");
  if (max_stages < 1) throw ArgumentError("SolverConfig: max_stages < 1");
  if (!(line_search_backoff > 0 && line_search_backoff < 1)) {
    throw ArgumentError("SolverConfig: line_search_backoff must lie in (0, 1)");
  }
}

SolveResult solve(const AntidistInstance& instance, const SolverConfig& config) {
  config.validate();

  Core core(to_working_precision(instance), static_cast<Scalar>(config.newton_tol),
            static_cast<Scalar>(config.line_search_backoff), config.max_newton_per_stage);
  const Scalar nd = static_cast<Scalar>(instance.size()) * static_cast<Scalar>(instance.dim());
  const Scalar t_cap =
      static_cast<Scalar>(kFinalStageMargin) * nd / static_cast<Scalar>(config.gap_tol);

  std::vector<StageRecord> stages;
  Scalar t = static_cast<Scalar>(config.t_initial);
  while (true) {
    const detail::StageOutcome<Scalar> stage = core.center(t);
    StageRecord record;
    record.t = static_cast<Real>(stage.t);
    record.newton_steps = stage.newton_steps;
    record.dual_objective = static_cast<Real>(stage.trace_y);
    record.gap = static_cast<Real>(stage.gap);
    record.residual = static_cast<Real>(stage.residual);
    record.newton_converged = stage.converged;
    stages.push_back(record);

    if (!stage.converged &&
        static_cast<Real>(core.raw_completeness_residual(t)) > kStallCeiling) {
      throw ConvergenceError(
          "solve: Newton centering stalled at t = " + std::to_string(record.t) +
              " with residual " + std::to_string(record.residual),
          finalize(core, t, instance, stages));
    }
    if (nd / t <= static_cast<Scalar>(config.gap_tol)) break;
    if (static_cast<int>(stages.size()) >= config.max_stages) {
      throw ConvergenceError("solve: max_stages exhausted before reaching gap_tol",
                             finalize(core, t, instance, stages));
    }
    t = std::min(t * static_cast<Scalar>(config.t_growth), t_cap);
  }

  return finalize(core, t, instance, std::move(stages));
}

Real primal_objective(const Povm& povm, const AntidistInstance& instance) {
  if (povm.size() != instance.size()) {
    throw ArgumentError("primal_objective: element count mismatch");
  }
  Real acc = 0;
  for (Index i = 0; i < instance.size(); ++i) {
    if (povm.elements[static_cast<size_t>(i)].dim() != instance.dim()) {
      throw ArgumentError("primal_objective: dimension mismatch at element " + std::to_string(i));
    }
    acc += (povm.elements[static_cast<size_t>(i)].matrix() * instance.rho(i).matrix())
               .trace()
               .real();
  }
  return acc;
}

PrimalFeasibility check_primal_feasible(const Povm& povm, Real tol) {
  if (tol < 0) throw ArgumentError("check_primal_feasible: tolerance must be non-negative");
  if (povm.elements.empty()) throw ArgumentError("check_primal_feasible: empty measurement");
  const Index d = povm.dim();
  PrimalFeasibility report;
  report.min_eigenvalue = std::numeric_limits<Real>::infinity();
  MatrixXc sum = MatrixXc::Zero(d, d);
  for (const HermitianMatrix& element : povm.elements) {
    if (element.dim() != d) throw ArgumentError("check_primal_feasible: dimension mismatch");
    report.min_eigenvalue = std::min(report.min_eigenvalue, min_eigenvalue(element));
    sum += element.matrix();
  }
  report.completeness_residual = (sum - MatrixXc::Identity(d, d)).norm();
  return report;
}

DualFeasibility check_dual_feasible(const HermitianMatrix& y, const AntidistInstance& instance,
                                    Real tol) {
  if (tol < 0) throw ArgumentError("check_dual_feasible: tolerance must be non-negative");
  if (y.dim() != instance.dim()) throw ArgumentError("check_dual_feasible: dimension mismatch");
  DualFeasibility report;
  report.per_state_min_eig.resize(instance.size());
  report.min_slack_eig = std::numeric_limits<Real>::infinity();
  for (Index i = 0; i < instance.size(); ++i) {
    report.per_state_min_eig(i) = min_eigenvalue(instance.rho(i) - y);
    report.min_slack_eig = std::min(report.min_slack_eig, report.per_state_min_eig(i));
  }
  return report;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::kAntidistinguishable:
      return "Antidistinguishable";
    case Decision::kNotAntidistinguishable:
      return "NotAntidistinguishable";
    case Decision::kInconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

DecisionReport decide_antidistinguishability(const AntidistInstance& instance,
                                             const SolverConfig& config, Real threshold) {
  config.validate();
  if (!(threshold > config.gap_tol)) {
    throw ArgumentError("decide_antidistinguishability: threshold must exceed gap_tol");
  }

  DecisionReport report;
  try {
    report.solve = solve(instance, config);
  } catch (const ConvergenceError& e) {
    report.decision = Decision::kInconclusive;
    report.solve = e.last_iterate;
    report.solver_failed = true;
    report.diagnostics = e.what();
    return report;
  }

  if (report.solve.alpha <= threshold) {
    report.decision = Decision::kAntidistinguishable;
    report.diagnostics = "measurement attains objective " + std::to_string(report.solve.alpha);
    return report;
  }

  std::optional<Certificate> cert = harden_certificate(report.solve.y, instance);
  if (cert.has_value() && verify_certificate(cert->y, instance, 0).valid) {
    report.decision = Decision::kNotAntidistinguishable;
    report.certificate = std::move(cert);
    report.diagnostics = "hardened certificate with trace " +
                         std::to_string(report.certificate->trace_value);
    return report;
  }

  report.decision = Decision::kInconclusive;
  report.diagnostics = "alpha above threshold but certificate hardening failed";
  return report;
}

}  // namespace antidist
