#pragma once

#include <utility>

#include "antidist/types.hpp"

namespace antidist {

// Maximum tolerated deviation ||M - M^H||_max at construction.
inline constexpr Real kHermitianAsymTol = 1e-12;
// Scale factor for eigendecomposition residual guarantees:
// ||H - V L V^H||_F <= kEigenResidualTol * max(1, ||H||_F).
inline constexpr Real kEigenResidualTol = 1e-10;

/// Square complex matrix held in canonical Hermitian form: after
/// construction entries(i,j) == conj(entries(j,i)) exactly and the
/// diagonal is exactly real. Construction rejects non-finite entries and
/// asymmetry beyond `asym_tol`.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  template <class Derived>
  explicit HermitianMatrix(const Eigen::MatrixBase<Derived>& m,
                           Real asym_tol = kHermitianAsymTol) {
    init(MatrixXc(m), asym_tol);
  }

  static HermitianMatrix zero(Index dim);
  static HermitianMatrix identity(Index dim);

  Index dim() const { return mat_.rows(); }
  const MatrixXc& matrix() const { return mat_; }
  Complex operator()(Index i, Index j) const { return mat_(i, j); }

  /// h + lambda * I, staying in canonical form.
  HermitianMatrix shifted(Real lambda) const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(Real s, const HermitianMatrix& a);

 private:
  struct CanonicalTag {};
  HermitianMatrix(MatrixXc m, CanonicalTag) : mat_(std::move(m)) {}
  void init(MatrixXc m, Real asym_tol);

  MatrixXc mat_;
};

/// Eigensystem of a Hermitian matrix: eigenvalues ascending, column k of
/// `eigenvectors` paired with eigenvalue k, columns orthonormal.
struct Spectrum {
  VectorXr eigenvalues;
  MatrixXc eigenvectors;
};

Spectrum hermitian_eigen(const HermitianMatrix& h);

/// Smallest eigenvalue; equals hermitian_eigen(h).eigenvalues(0).
Real min_eigenvalue(const HermitianMatrix& h);

/// Sum of the (real) diagonal.
Real trace(const HermitianMatrix& h);

/// True iff min_eigenvalue(h) >= -tol. Rejects tol < 0.
bool is_psd(const HermitianMatrix& h, Real tol);

/// Thrown when a Cholesky factorization finds the matrix not strictly
/// positive definite.
class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

/// Solves h_spd * X = rhs via Cholesky. Requires h_spd strictly positive
/// definite; throws NotPositiveDefiniteError otherwise.
MatrixXc solve_hermitian_linear_system(const HermitianMatrix& h_spd, const MatrixXc& rhs);

Real frobenius_norm(const HermitianMatrix& h);

}  // namespace antidist
