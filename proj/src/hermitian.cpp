#include "antidist/hermitian.hpp"

#include <cmath>

namespace antidist {

void HermitianMatrix::init(MatrixXc m, Real asym_tol) {
  if (m.rows() != m.cols()) {
    throw ArgumentError("HermitianMatrix: matrix must be square, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw ArgumentError("HermitianMatrix: non-finite entry");
  }
  const Real asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > asym_tol) {
    throw ArgumentError("HermitianMatrix: asymmetry " + std::to_string(asym) +
                        " exceeds tolerance");
  }
  mat_ = ((m + m.adjoint()) / Real(2)).eval();
  for (Index k = 0; k < mat_.rows(); ++k) {
    mat_(k, k) = Complex(mat_(k, k).real(), 0);
  }
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(MatrixXc::Zero(dim, dim), CanonicalTag{});
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return HermitianMatrix(MatrixXc::Identity(dim, dim), CanonicalTag{});
}

HermitianMatrix HermitianMatrix::shifted(Real lambda) const {
  MatrixXc m = mat_;
  for (Index k = 0; k < m.rows(); ++k) {
    m(k, k) += lambda;
  }
  return HermitianMatrix(std::move(m), CanonicalTag{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ArgumentError("HermitianMatrix: dimension mismatch in +");
  return HermitianMatrix(a.mat_ + b.mat_, HermitianMatrix::CanonicalTag{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ArgumentError("HermitianMatrix: dimension mismatch in -");
  return HermitianMatrix(a.mat_ - b.mat_, HermitianMatrix::CanonicalTag{});
}

HermitianMatrix operator*(Real s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.mat_, HermitianMatrix::CanonicalTag{});
}

Spectrum hermitian_eigen(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw Error("hermitian_eigen: eigendecomposition did not converge");
  }
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

Real min_eigenvalue(const HermitianMatrix& h) {
  return hermitian_eigen(h).eigenvalues(0);
}

Real trace(const HermitianMatrix& h) {
  return h.matrix().trace().real();
}

bool is_psd(const HermitianMatrix& h, Real tol) {
  if (tol < 0) throw ArgumentError("is_psd: tolerance must be non-negative");
  return min_eigenvalue(h) >= -tol;
}

MatrixXc solve_hermitian_linear_system(const HermitianMatrix& h_spd, const MatrixXc& rhs) {
  if (h_spd.dim() != rhs.rows()) {
    throw ArgumentError("solve_hermitian_linear_system: shape mismatch");
  }
  Eigen::LLT<MatrixXc> llt(h_spd.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("solve_hermitian_linear_system: matrix not positive definite");
  }
  return llt.solve(rhs);
}

Real frobenius_norm(const HermitianMatrix& h) {
  return h.matrix().norm();
}

}  // namespace antidist
