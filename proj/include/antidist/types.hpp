#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace antidist {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

// Dense types over a configurable scalar. The public API works with the
// double instantiations; the barrier solver core instantiates these with
// `long double` internally.
template <class Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <class Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = ComplexMatrix<Real>;
using VectorXc = ComplexVector<Real>;
using MatrixXr = RealMatrix<Real>;
using VectorXr = RealVector<Real>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition or malformed-value violation (bad dimension, negative
/// tolerance, non-density input, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Document does not conform to one of the JSON schemas.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace antidist
