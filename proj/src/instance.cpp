#include "antidist/instance.hpp"

#include <cmath>

namespace antidist {

AntidistInstance::AntidistInstance(std::vector<HermitianMatrix> rhos) : rhos_(std::move(rhos)) {
  if (rhos_.empty()) throw ArgumentError("AntidistInstance: need at least one state");
  const Index d = rhos_.front().dim();
  for (size_t i = 0; i < rhos_.size(); ++i) {
    const HermitianMatrix& rho = rhos_[i];
    if (rho.dim() != d) {
      throw ArgumentError("AntidistInstance: state " + std::to_string(i) +
                          " has mismatched dimension");
    }
    if (std::abs(trace(rho) - Real(1)) > kDensityTol) {
      throw ArgumentError("AntidistInstance: state " + std::to_string(i) + " has trace " +
                          std::to_string(trace(rho)) + ", not 1");
    }
    if (!is_psd(rho, kDensityTol)) {
      throw ArgumentError("AntidistInstance: state " + std::to_string(i) +
                          " is not positive semidefinite");
    }
  }
}

AntidistInstance AntidistInstance::from_states(const StateSet& set) {
  std::vector<HermitianMatrix> rhos;
  rhos.reserve(static_cast<size_t>(set.size()));
  for (Index i = 0; i < set.size(); ++i) {
    rhos.push_back(density(set[i]));
  }
  return AntidistInstance(std::move(rhos));
}

}  // namespace antidist
