#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "antidist/fixtures.hpp"
#include "antidist/json_io.hpp"
#include "antidist/states.hpp"

using namespace antidist;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("haar states are unit norm and seed deterministic") {
  for (std::uint64_t seed : {0u, 7u, 123456u}) {
    const PureState s = haar_random_state(1, seed);
    CHECK(std::abs(std::abs(s.amplitudes()(0)) - 1.0) < 1e-12);
  }

  const PureState a = haar_random_state(4, 7);
  const PureState b = haar_random_state(4, 7);
  REQUIRE(a.dim() == 4);
  for (Index k = 0; k < 4; ++k) CHECK(a.amplitudes()(k) == b.amplitudes()(k));

  const PureState c = haar_random_state(4, 8);
  CHECK(a.amplitudes() != c.amplitudes());

  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    CHECK(std::abs(haar_random_state(3 + seed % 4, seed).amplitudes().norm() - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(haar_random_state(0, 1), ArgumentError);
}

TEST_CASE("haar first-component moment is 1/d") {
  // quick version of the Monte Carlo oracle; the acceptance suite runs the
  // full 1e5-sample check at the 0.01 tolerance
  const Index d = 4;
  const int samples = 20000;
  RngStream rng(42);
  double acc = 0;
  for (int i = 0; i < samples; ++i) {
    acc += std::norm(haar_random_state(d, rng).amplitudes()(0));
  }
  CHECK(std::abs(acc / samples - 1.0 / static_cast<double>(d)) < 0.02);
}

TEST_CASE("density matrices") {
  VectorXc e1(2);
  e1 << Complex(1, 0), Complex(0, 0);
  const HermitianMatrix rho1 = density(PureState(e1));
  CHECK(std::abs(rho1(0, 0) - Complex(1, 0)) == 0);
  CHECK(std::abs(rho1(1, 1)) == 0);

  VectorXc plus(2);
  plus << Complex(1, 0), Complex(1, 0);
  const HermitianMatrix rhop = density(PureState(plus));
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) CHECK(std::abs(rhop(i, j) - Complex(0.5, 0)) < 1e-15);
  }

  // top-left entry of the first reference state, derived by direct
  // arithmetic on the raw published amplitudes
  const Json raw = Json::parse(fixtures::state_set_json_text());
  VectorXc v(4);
  double norm2 = 0;
  for (Index k = 0; k < 4; ++k) {
    v(k) = Complex(raw["states"][0][static_cast<size_t>(k)][0].get<Real>(),
                   raw["states"][0][static_cast<size_t>(k)][1].get<Real>());
    norm2 += std::norm(v(k));
  }
  const Real expected_top_left = std::norm(v(0)) / norm2;
  const StateSet states = fixtures::counterexample_states();
  CHECK(std::abs(density(states[0])(0, 0).real() - expected_top_left) < 1e-13);
  CHECK(std::abs(expected_top_left - 0.25269) < 1e-5);

  // rank-1 projector properties on random states
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const HermitianMatrix rho = density(haar_random_state(5, seed));
    CHECK(std::abs(trace(rho) - 1.0) < 1e-12);
    CHECK(min_eigenvalue(rho) >= -1e-12);
  }
}

TEST_CASE("gram report on the reference counterexample") {
  const GramReport report = gram_report(fixtures::counterexample_states());
  CHECK(report.n == 4);
  CHECK(report.dim == 4);
  CHECK(std::abs(report.max_offdiag - fixtures::kReferenceMaxOverlap) < 1e-6);
  CHECK(report.bound == 2.0 / 3.0);
  CHECK(report.hypothesis_satisfied);
  CHECK(report.n_equals_dim);
}

TEST_CASE("gram report basics") {
  std::vector<PureState> basis;
  MatrixXc eye = MatrixXc::Identity(4, 4);
  for (Index i = 0; i < 4; ++i) basis.emplace_back(VectorXc(eye.col(i)));
  const GramReport ortho = gram_report(StateSet(basis));
  CHECK(ortho.max_offdiag == 0.0);
  CHECK(ortho.hypothesis_satisfied);

  const PureState s = haar_random_state(4, 5);
  const GramReport dup = gram_report(StateSet({s, s}));
  CHECK(std::abs(dup.max_offdiag - 1.0) < 1e-12);
  CHECK_FALSE(dup.hypothesis_satisfied);
  CHECK_FALSE(dup.n_equals_dim);  // n=2 in d=4

  CHECK_THROWS_AS(gram_report(StateSet({s})), ArgumentError);

  // overlaps are exactly symmetric with unit diagonal
  std::vector<PureState> rand;
  RngStream rng(99);
  for (int i = 0; i < 5; ++i) rand.push_back(haar_random_state(3, rng));
  const GramReport rep = gram_report(StateSet(rand));
  for (Index i = 0; i < rep.n; ++i) {
    CHECK(std::abs(rep.overlaps(i, i) - 1.0) < 1e-12);
    for (Index j = 0; j < rep.n; ++j) CHECK(rep.overlaps(i, j) == rep.overlaps(j, i));
  }

  // d=1: every pair overlaps fully and the bound degenerates
  VectorXc one(1);
  one << Complex(0, 1);
  const GramReport deg = gram_report(StateSet({PureState(one), PureState(one)}));
  CHECK_FALSE(deg.hypothesis_satisfied);
  CHECK(deg.bound == -std::numeric_limits<Real>::infinity());
}

TEST_CASE("pairwise orthogonality") {
  std::vector<PureState> basis;
  MatrixXc eye = MatrixXc::Identity(4, 4);
  for (Index i = 0; i < 4; ++i) basis.emplace_back(VectorXc(eye.col(i)));
  CHECK(is_pairwise_orthogonal(StateSet(basis), 1e-12));

  CHECK_FALSE(is_pairwise_orthogonal(fixtures::counterexample_states(), 1e-9));

  CHECK(is_pairwise_orthogonal(StateSet({haar_random_state(4, 3)}), 0));
  CHECK_THROWS_AS(is_pairwise_orthogonal(StateSet(basis), -1e-3), ArgumentError);
}

TEST_CASE("pure state normalization") {
  VectorXc v(2);
  v << Complex(3, 0), Complex(0, 4);
  const PureState s{VectorXc(v)};
  CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);
  CHECK(s.normalization_correction() == doctest::Approx(4.0));

  // renormalizing an already-normalized vector is an exact no-op
  const PureState t{VectorXc(s.amplitudes())};
  for (Index k = 0; k < 2; ++k) CHECK(t.amplitudes()(k) == s.amplitudes()(k));
  CHECK(t.normalization_correction() == 0.0);

  CHECK_THROWS_AS(PureState{VectorXc::Zero(3)}, ArgumentError);
  VectorXc bad(1);
  bad << Complex(std::numeric_limits<Real>::infinity(), 0);
  CHECK_THROWS_AS(PureState{bad}, ArgumentError);
}

TEST_CASE("state-set loading and schema errors") {
  StateSetLoadInfo info;
  const StateSet states = state_set_from_json(Json::parse(fixtures::state_set_json_text()), &info);
  CHECK(states.size() == 4);
  CHECK(states.dim() == 4);
  // published amplitudes are 8-decimal truncations, so every state needs a
  // small correction
  CHECK(info.corrections.size() == 4);
  for (const auto& [index, corr] : info.corrections) CHECK(corr < 1e-8);

  SUBCASE("dimension mismatch names the state") {
    Json doc = Json::parse(R"({"dim": 4, "states": [
      [[1,0],[0,0],[0,0],[0,0]],
      [[1,0],[0,0],[0,0]]
    ]})");
    CHECK_THROWS_WITH_AS(state_set_from_json(doc), doctest::Contains("state 1"), ParseError);
  }
  SUBCASE("zero-norm names the state") {
    Json doc = Json::parse(R"({"dim": 2, "states": [
      [[1,0],[0,0]],
      [[0,0],[0,0]]
    ]})");
    CHECK_THROWS_WITH_AS(state_set_from_json(doc), doctest::Contains("state 1"), ParseError);
  }
  SUBCASE("schema violations") {
    CHECK_THROWS_AS(state_set_from_json(Json::parse(R"({"states": []})")), ParseError);
    CHECK_THROWS_AS(state_set_from_json(Json::parse(R"({"dim": 2, "states": []})")), ParseError);
    CHECK_THROWS_AS(state_set_from_json(Json::parse(R"({"dim": 0, "states": [[[1,0]]]})")),
                    ParseError);
    CHECK_THROWS_AS(state_set_from_json(Json::parse(R"({"dim": 1, "states": [[[1]]]})")),
                    ParseError);
    CHECK_THROWS_AS(state_set_from_json(Json::parse(R"({"dim": 1, "states": ["x"]})")),
                    ParseError);
  }
}

TEST_CASE("save/load round trip is exact") {
  RngStream rng(1234);
  std::vector<PureState> states;
  for (int i = 0; i < 3; ++i) states.push_back(haar_random_state(4, rng));
  const StateSet original(states);

  const auto path = temp_file("antidist_roundtrip.json");
  save_state_set(original, path.string());
  const StateSet reloaded = load_state_set(path.string());
  REQUIRE(reloaded.size() == original.size());
  for (Index i = 0; i < original.size(); ++i) {
    for (Index k = 0; k < original.dim(); ++k) {
      CHECK(reloaded[i].amplitudes()(k) == original[i].amplitudes()(k));
    }
  }

  // and re-saving reproduces the identical document
  const auto path2 = temp_file("antidist_roundtrip2.json");
  save_state_set(reloaded, path2.string());
  std::ifstream f1(path), f2(path2);
  const std::string doc1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  const std::string doc2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(doc1 == doc2);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);

  CHECK_THROWS_AS(load_state_set("/nonexistent/nowhere.json"), ParseError);
}

TEST_CASE("shipped fixture files match the embedded data") {
  const StateSet embedded = fixtures::counterexample_states();
  const StateSet from_file = load_state_set(std::string(ANTIDIST_DATA_DIR) + "/paper_d4.json");
  REQUIRE(from_file.size() == embedded.size());
  for (Index i = 0; i < embedded.size(); ++i) {
    for (Index k = 0; k < embedded.dim(); ++k) {
      CHECK(from_file[i].amplitudes()(k) == embedded[i].amplitudes()(k));
    }
  }

  const Certificate cert_embedded = fixtures::counterexample_certificate();
  const Certificate cert_file =
      load_certificate(std::string(ANTIDIST_DATA_DIR) + "/paper_y.json");
  CHECK(cert_file.y.matrix() == cert_embedded.y.matrix());
}
