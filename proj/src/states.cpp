#include "antidist/states.hpp"

#include <cmath>
#include <limits>

namespace antidist {

namespace {
// Below this the vector is treated as numerically zero rather than
// normalizable.
constexpr Real kZeroNormFloor = 1e-150;
// Corrections smaller than this are skipped entirely (keeps
// normalization idempotent across save/load round trips).
constexpr Real kSkipCorrection = 1e-14;
}  // namespace

PureState::PureState(VectorXc amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ArgumentError("PureState: empty amplitude vector");
  if (!amps_.allFinite()) throw ArgumentError("PureState: non-finite amplitude");
  const Real norm = amps_.norm();
  if (norm < kZeroNormFloor) throw ArgumentError("PureState: zero-norm vector");
  if (std::abs(norm - Real(1)) > kSkipCorrection) {
    amps_ /= norm;
    correction_ = std::abs(norm - Real(1));
  }
}

StateSet::StateSet(std::vector<PureState> states) : states_(std::move(states)) {
  if (states_.empty()) throw ArgumentError("StateSet: need at least one state");
  const Index d = states_.front().dim();
  for (size_t i = 1; i < states_.size(); ++i) {
    if (states_[i].dim() != d) {
      throw ArgumentError("StateSet: state " + std::to_string(i) + " has dimension " +
                          std::to_string(states_[i].dim()) + ", expected " + std::to_string(d));
    }
  }
}

PureState haar_random_state(Index dim, RngStream& rng) {
  if (dim < 1) throw ArgumentError("haar_random_state: dimension must be positive");
  VectorXc v(dim);
  for (Index k = 0; k < dim; ++k) {
    const Real re = rng.next_gaussian();
    const Real im = rng.next_gaussian();
    v(k) = Complex(re, im);
  }
  return PureState(std::move(v));
}

PureState haar_random_state(Index dim, std::uint64_t seed) {
  RngStream rng(seed);
  return haar_random_state(dim, rng);
}

HermitianMatrix density(const PureState& s) {
  return HermitianMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

GramReport gram_report(const StateSet& set) {
  if (set.size() < 2) throw ArgumentError("gram_report: need at least two states");
  GramReport r;
  r.n = set.size();
  r.dim = set.dim();
  r.overlaps = MatrixXr::Zero(r.n, r.n);
  r.max_offdiag = 0;
  for (Index i = 0; i < r.n; ++i) {
    r.overlaps(i, i) = std::abs(Complex(set[i].amplitudes().dot(set[i].amplitudes())));
    for (Index j = i + 1; j < r.n; ++j) {
      const Real ov = std::abs(Complex(set[i].amplitudes().dot(set[j].amplitudes())));
      r.overlaps(i, j) = ov;
      r.overlaps(j, i) = ov;
      if (ov > r.max_offdiag) r.max_offdiag = ov;
    }
  }
  // (d-2)/(d-1); IEEE division gives -inf for d == 1, which correctly
  // fails every overlap comparison.
  r.bound = (static_cast<Real>(r.dim) - 2) / (static_cast<Real>(r.dim) - 1);
  r.hypothesis_satisfied = r.max_offdiag <= r.bound;
  r.n_equals_dim = (r.n == r.dim);
  return r;
}

bool is_pairwise_orthogonal(const StateSet& set, Real tol) {
  if (tol < 0) throw ArgumentError("is_pairwise_orthogonal: tolerance must be non-negative");
  for (Index i = 0; i < set.size(); ++i) {
    for (Index j = i + 1; j < set.size(); ++j) {
      if (std::abs(Complex(set[i].amplitudes().dot(set[j].amplitudes()))) > tol) return false;
    }
  }
  return true;
}

}  // namespace antidist
