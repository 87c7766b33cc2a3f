#pragma once

#include <cstdint>
#include <vector>

#include "antidist/hermitian.hpp"
#include "antidist/rng.hpp"
#include "antidist/types.hpp"

namespace antidist {

/// Unit complex vector. Inputs are renormalized at construction; a
/// correction within 1e-14 of 1 is skipped so that re-loading an already
/// normalized state is an exact no-op.
class PureState {
 public:
  explicit PureState(VectorXc amplitudes);

  Index dim() const { return amps_.size(); }
  const VectorXc& amplitudes() const { return amps_; }
  /// |original norm - 1| absorbed at construction (0 when skipped).
  Real normalization_correction() const { return correction_; }

 private:
  VectorXc amps_;
  Real correction_ = 0;
};

/// Ordered, non-empty collection of states of one common dimension.
class StateSet {
 public:
  explicit StateSet(std::vector<PureState> states);

  Index dim() const { return states_.front().dim(); }
  Index size() const { return static_cast<Index>(states_.size()); }
  const PureState& operator[](Index i) const { return states_[static_cast<size_t>(i)]; }
  const std::vector<PureState>& states() const { return states_; }

 private:
  std::vector<PureState> states_;
};

/// Pairwise overlap magnitudes |<psi_i|psi_j>| and the inner-product
/// hypothesis check against the bound (d-2)/(d-1). The bound always comes
/// from the state dimension d; `n_equals_dim` flags sets where the premise
/// n == d does not hold.
struct GramReport {
  Index n = 0;
  Index dim = 0;
  MatrixXr overlaps;  // symmetric, unit diagonal
  Real max_offdiag = 0;
  Real bound = 0;
  bool hypothesis_satisfied = false;
  bool n_equals_dim = true;
};

/// Draws dim independent complex standard Gaussians and normalizes.
PureState haar_random_state(Index dim, RngStream& rng);
PureState haar_random_state(Index dim, std::uint64_t seed);

/// Rank-1 projector |s><s|.
HermitianMatrix density(const PureState& s);

GramReport gram_report(const StateSet& set);

/// True iff every off-diagonal overlap magnitude is <= tol. A singleton
/// set is vacuously orthogonal.
bool is_pairwise_orthogonal(const StateSet& set, Real tol);

}  // namespace antidist
