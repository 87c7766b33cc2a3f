#pragma once

#include <vector>

#include "antidist/hermitian.hpp"
#include "antidist/states.hpp"
#include "antidist/types.hpp"

namespace antidist {

// Density-operator admission tolerances (PSD and unit trace).
inline constexpr Real kDensityTol = 1e-10;

/// The n density operators defining one exclusion problem. Construction
/// validates that every operator is PSD and unit-trace within kDensityTol
/// and that dimensions agree.
class AntidistInstance {
 public:
  explicit AntidistInstance(std::vector<HermitianMatrix> rhos);
  static AntidistInstance from_states(const StateSet& set);

  Index dim() const { return rhos_.front().dim(); }
  Index size() const { return static_cast<Index>(rhos_.size()); }
  const HermitianMatrix& rho(Index i) const { return rhos_[static_cast<size_t>(i)]; }
  const std::vector<HermitianMatrix>& rhos() const { return rhos_; }

 private:
  std::vector<HermitianMatrix> rhos_;
};

/// Measurement candidate: n Hermitian elements. Feasibility (elements PSD,
/// sum equal to the identity) is checked by check_primal_feasible, not
/// enforced here.
struct Povm {
  std::vector<HermitianMatrix> elements;

  Index size() const { return static_cast<Index>(elements.size()); }
  Index dim() const { return elements.empty() ? 0 : elements.front().dim(); }
};

}  // namespace antidist
