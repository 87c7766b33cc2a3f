#include <cmath>

#include "doctest.h"

#include "antidist/fixtures.hpp"
#include "antidist/sdp.hpp"

using namespace antidist;

namespace {

AntidistInstance orthonormal_instance(Index d) {
  MatrixXc eye = MatrixXc::Identity(d, d);
  std::vector<HermitianMatrix> rhos;
  for (Index i = 0; i < d; ++i) rhos.emplace_back(eye.col(i) * eye.col(i).adjoint());
  return AntidistInstance(rhos);
}

// Two real pure states in d=2 with overlap c.
AntidistInstance overlap_pair(Real c) {
  VectorXc p1(2), p2(2);
  p1 << Complex(1, 0), Complex(0, 0);
  p2 << Complex(c, 0), Complex(std::sqrt(1 - c * c), 0);
  return AntidistInstance(
      {HermitianMatrix(p1 * p1.adjoint()), HermitianMatrix(p2 * p2.adjoint())});
}

// Exclusion-value oracle for two pure states: minimize 1 + Tr(N_1 (rho_1 -
// rho_2)) by projecting onto the negative eigenspace of rho_1 - rho_2.
Real exclusion_oracle(const AntidistInstance& pair) {
  const HermitianMatrix diff = pair.rho(0) - pair.rho(1);
  const Spectrum spec = hermitian_eigen(diff);
  MatrixXc projector = MatrixXc::Zero(pair.dim(), pair.dim());
  for (Index k = 0; k < pair.dim(); ++k) {
    if (spec.eigenvalues(k) < 0) {
      projector += spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint();
    }
  }
  return 1.0 + (projector * diff.matrix()).trace().real();
}

AntidistInstance paper_instance() {
  return AntidistInstance::from_states(fixtures::counterexample_states());
}

MatrixXc random_unitary(Index d, std::uint64_t seed) {
  RngStream rng(seed);
  MatrixXc g(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  }
  return Eigen::HouseholderQR<MatrixXc>(g).householderQ();
}

}  // namespace

TEST_CASE("config and instance validation") {
  SolverConfig config;
  config.gap_tol = 0;
  CHECK_THROWS_AS(config.validate(), ArgumentError);
  config = SolverConfig{};
  config.t_growth = 1.0;
  CHECK_THROWS_AS(config.validate(), ArgumentError);
  config = SolverConfig{};
  config.line_search_backoff = 1.5;
  CHECK_THROWS_AS(config.validate(), ArgumentError);

  // non-density inputs are rejected
  CHECK_THROWS_AS(AntidistInstance({HermitianMatrix(2.0 * MatrixXc::Identity(2, 2))}),
                  ArgumentError);
  MatrixXc neg(2, 2);
  neg << Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0);
  CHECK_THROWS_AS(AntidistInstance({HermitianMatrix(neg)}), ArgumentError);
  CHECK_THROWS_AS(
      AntidistInstance({HermitianMatrix::identity(2),
                        HermitianMatrix(MatrixXc::Identity(3, 3) / 3.0)}),
      ArgumentError);
}

TEST_CASE("trivial extremes") {
  const SolveResult ortho = solve(orthonormal_instance(4));
  CHECK(ortho.alpha <= 1e-9);
  CHECK(ortho.alpha >= -1e-12);

  VectorXc v(4);
  v << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0);
  std::vector<HermitianMatrix> rhos(4, HermitianMatrix(v * v.adjoint()));
  const SolveResult same = solve(AntidistInstance(rhos));
  CHECK(std::abs(same.alpha - 1.0) <= 1e-8);

  // single-state instance: the only measurement is N = I
  const SolveResult single = solve(AntidistInstance({HermitianMatrix(v * v.adjoint())}));
  CHECK(std::abs(single.alpha - 1.0) <= 1e-8);
}

TEST_CASE("two-state exclusion matches the analytic oracle") {
  for (Real c : {0.0, 0.3, 0.8, 1.0}) {
    const AntidistInstance pair = overlap_pair(c);
    const Real oracle = exclusion_oracle(pair);
    CHECK(std::abs(oracle - (1.0 - std::sqrt(1.0 - c * c))) < 1e-12);
    const SolveResult result = solve(pair);
    CHECK(std::abs(result.alpha - oracle) < 1e-7);
    CHECK(result.gap <= 1e-9);
    CHECK(result.gap >= -1e-9);
  }
}

TEST_CASE("reference counterexample solve") {
  const SolveResult result = solve(paper_instance());

  CHECK(std::abs(result.beta - fixtures::kReferenceTraceFull) < 1e-5);
  CHECK(result.alpha > 0);
  CHECK(result.gap <= 1e-9);
  CHECK(result.gap >= -1e-9);
  CHECK(result.beta == trace(result.y));

  // returned measurement is feasible well within tolerance
  CHECK(result.primal_residual <= 1e-8);
  CHECK(result.povm_min_eigenvalue >= -1e-8);
  const PrimalFeasibility pf = check_primal_feasible(result.povm, 1e-8);
  CHECK(pf.within(1e-8));

  // returned y is strictly dual feasible
  CHECK(result.dual_min_slack_eig >= -1e-10);

  SUBCASE("stage log invariants") {
    const Real nd = 16.0;
    Real prev_trace = -std::numeric_limits<Real>::infinity();
    for (const StageRecord& stage : result.stages) {
      const Real target = nd / stage.t;
      CHECK(std::abs(stage.gap - target) <= 1e-9 * std::max(1.0, target));
      CHECK(stage.dual_objective >= prev_trace - 1e-12);
      prev_trace = stage.dual_objective;
      if (stage.newton_converged) {
        CHECK(stage.residual <=
              SolverConfig{}.newton_tol * stage.t * 2.0 * (1.0 + 1e-12));
      }
      // the residual criterion is reachable until the slack inversions hit
      // their precision floor
      if (stage.t <= 1e8) CHECK(stage.newton_converged);
    }
    CHECK(result.stages.front().t == 1.0);
  }
}

TEST_CASE("unitary covariance of alpha") {
  const SolveResult base = solve(paper_instance());
  for (std::uint64_t seed : {11u, 29u}) {
    const MatrixXc u = random_unitary(4, seed);
    std::vector<HermitianMatrix> rotated;
    for (const HermitianMatrix& rho : paper_instance().rhos()) {
      rotated.emplace_back(u * rho.matrix() * u.adjoint());
    }
    const SolveResult r = solve(AntidistInstance(rotated));
    CHECK(std::abs(r.alpha - base.alpha) < 1e-8);
  }
}

TEST_CASE("primal objective and feasibility checks") {
  const AntidistInstance ortho = orthonormal_instance(4);

  // cyclic exclusion: N_i projects onto e_{i+1}
  MatrixXc eye = MatrixXc::Identity(4, 4);
  Povm cyclic;
  for (Index i = 0; i < 4; ++i) {
    const Index j = (i + 1) % 4;
    cyclic.elements.emplace_back(eye.col(j) * eye.col(j).adjoint());
  }
  CHECK(primal_objective(cyclic, ortho) == 0.0);
  CHECK(check_primal_feasible(cyclic, 1e-12).within(1e-12));

  // uniform split is feasible and scores sum Tr(rho_i)/n = 1
  Povm uniform;
  for (Index i = 0; i < 4; ++i) {
    uniform.elements.push_back(HermitianMatrix(eye / 4.0));
  }
  CHECK(std::abs(primal_objective(uniform, ortho) - 1.0) < 1e-14);
  CHECK(std::abs(primal_objective(uniform, paper_instance()) - 1.0) < 1e-12);

  // scaling one element breaks completeness
  Povm scaled = uniform;
  scaled.elements[0] = 1.1 * scaled.elements[0];
  CHECK(check_primal_feasible(scaled, 0).completeness_residual > 0.01);

  // an indefinite element is reported through the minimum eigenvalue
  Povm indefinite = uniform;
  MatrixXc dip = eye / 4.0;
  dip(0, 0) = Complex(-1e-3, 0);
  indefinite.elements[0] = HermitianMatrix(dip);
  CHECK(check_primal_feasible(indefinite, 0).min_eigenvalue == doctest::Approx(-1e-3));

  Povm wrong = uniform;
  wrong.elements.pop_back();
  CHECK_THROWS_AS(primal_objective(wrong, ortho), ArgumentError);
}

TEST_CASE("dual feasibility checks") {
  const AntidistInstance inst = paper_instance();

  const DualFeasibility low = check_dual_feasible(-1.0 * HermitianMatrix::identity(4), inst, 0);
  CHECK(low.min_slack_eig > 0.9);

  const DualFeasibility ref = check_dual_feasible(fixtures::counterexample_y(), inst, 0);
  CHECK(ref.min_slack_eig > 0);
  CHECK(ref.min_slack_eig == doctest::Approx(7.51e-10).epsilon(0.05));

  const DualFeasibility high = check_dual_feasible(HermitianMatrix::identity(4), inst, 0);
  CHECK(high.min_slack_eig < -0.5);

  CHECK_THROWS_AS(check_dual_feasible(HermitianMatrix::identity(3), inst, 0), ArgumentError);
}

TEST_CASE("decisions") {
  const DecisionReport ortho = decide_antidistinguishability(orthonormal_instance(4));
  CHECK(ortho.decision == Decision::kAntidistinguishable);
  CHECK(primal_objective(ortho.solve.povm, orthonormal_instance(4)) <= kDecisionThreshold);

  const DecisionReport ref = decide_antidistinguishability(paper_instance());
  CHECK(ref.decision == Decision::kNotAntidistinguishable);
  REQUIRE(ref.certificate.has_value());
  CHECK(ref.certificate->trace_value > 0);
  CHECK(verify_certificate(ref.certificate->y, paper_instance(), 0).valid);

  const DecisionReport pair = decide_antidistinguishability(overlap_pair(0.0));
  CHECK(pair.decision == Decision::kAntidistinguishable);

  CHECK_THROWS_AS(decide_antidistinguishability(paper_instance(), SolverConfig{}, 1e-10),
                  ArgumentError);
}

TEST_CASE("convergence failure carries the last iterate") {
  SolverConfig config;
  config.max_stages = 2;  // cannot reach the default gap tolerance
  CHECK_THROWS_AS(solve(paper_instance(), config), ConvergenceError);
  try {
    solve(paper_instance(), config);
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate.stages.size() == 2);
    CHECK(e.last_iterate.y.dim() == 4);
  }

  const DecisionReport report =
      decide_antidistinguishability(paper_instance(), config, kDecisionThreshold);
  CHECK(report.decision == Decision::kInconclusive);
  CHECK(report.solver_failed);
  CHECK_FALSE(report.diagnostics.empty());
}
