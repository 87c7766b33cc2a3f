#pragma once

// Internal engine for the exclusion SDP: maximizes the barrier objective
//
//   phi_t(Y) = t * Tr(Y) + sum_i log det(rho_i - Y)
//
// over Hermitian Y by damped Newton steps. At the stationary point of each
// stage, sum_i (rho_i - Y)^{-1} = t * I, so N_i = (rho_i - Y)^{-1} / t is a
// complete measurement with exact duality gap sum_i Tr(N_i (rho_i - Y)) =
// n*d/t. The scalar S is the working precision; the slacks become nearly
// singular as t grows, so the public wrapper instantiates long double.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "antidist/types.hpp"

namespace antidist::detail {

template <class S>
struct StageOutcome {
  S t = 0;
  int newton_steps = 0;
  bool converged = false;  // residual criterion met (vs. progress stall)
  S residual = 0;          // ||t I - sum_i slack_inv_i||_F at exit
  S trace_y = 0;
  S gap = 0;               // sum_i Tr(N_i (rho_i - Y)) at exit
};

template <class S>
class BarrierCore {
 public:
  using C = std::complex<S>;
  using CMat = ComplexMatrix<S>;
  using RMat = RealMatrix<S>;
  using RVec = RealVector<S>;

  BarrierCore(std::vector<CMat> rhos, S newton_tol, S backoff, int max_newton)
      : rhos_(std::move(rhos)),
        n_(static_cast<Index>(rhos_.size())),
        d_(rhos_.front().rows()),
        dm_(d_ * d_),
        newton_tol_(newton_tol),
        backoff_(backoff),
        max_newton_(max_newton),
        y_(-CMat::Identity(d_, d_)) {
    build_basis();
    slacks_.resize(rhos_.size());
    inverses_.resize(rhos_.size());
  }

  Index n() const { return n_; }
  Index dim() const { return d_; }
  const CMat& y() const { return y_; }

  /// Damped Newton centering at fixed t. Never throws; a stall at the
  /// precision floor is reported through `converged` and `residual`.
  StageOutcome<S> center(S t) {
    StageOutcome<S> out;
    out.t = t;
    const S res_threshold = newton_tol_ * t * std::sqrt(static_cast<S>(d_));
    refresh(t);
    // At large t the barrier value phi resolves far more coarsely than the
    // stationarity residual, so progress is judged on the residual. The
    // best iterate is kept in case noise-floor steps wander.
    S best_residual = residual_;
    CMat best_y = y_;
    int no_progress = 0;
    for (int step = 0; step < max_newton_; ++step) {
      if (residual_ < best_residual) {
        best_residual = residual_;
        best_y = y_;
      }
      if (residual_ <= res_threshold) {
        out.converged = true;
        break;
      }
      if (no_progress >= 4) break;  // at the numeric floor for this t

      RVec grad = coords_of(resmat_);
      assemble_hessian();
      RVec dir = solve_newton_system(grad);
      CMat dy = hermitian_of(dir);

      // Backtracking: every slack must stay positive definite and phi
      // must not drop below the evaluation noise floor.
      const S phi_slack = phi_noise_floor(t);
      S s = 1;
      bool accepted = false;
      while (s > S(1e-28)) {
        CMat y_trial = y_ + s * dy;
        S phi_trial;
        if (trial_phi(y_trial, t, phi_trial) && phi_trial >= phi_ - phi_slack) {
          y_ = std::move(y_trial);
          accepted = true;
          break;
        }
        s *= backoff_;
      }
      if (!accepted) break;

      ++out.newton_steps;
      refresh(t);
      no_progress = (residual_ <= best_residual * S(0.999)) ? 0 : no_progress + 1;
    }
    if (residual_ > best_residual) {
      y_ = best_y;
      refresh(t);
    }
    out.residual = residual_;
    out.trace_y = y_.trace().real();
    out.gap = duality_gap(t);
    return out;
  }

  /// N_i = slack_inv_i / t for the current iterate, with the completeness
  /// defect folded back evenly so that sum_i N_i = I to machine precision.
  std::vector<CMat> measurement(S t) const {
    std::vector<CMat> povm(inverses_.size());
    CMat defect = CMat::Identity(d_, d_);
    for (size_t i = 0; i < inverses_.size(); ++i) {
      povm[i] = inverses_[i] / t;
      povm[i] = ((povm[i] + povm[i].adjoint()) / S(2)).eval();
      defect -= povm[i];
    }
    defect = ((defect + defect.adjoint()) / S(2)).eval();
    for (auto& element : povm) {
      element += defect / static_cast<S>(n_);
    }
    return povm;
  }

  /// ||sum_i N_i - I||_F before the completeness polish.
  S raw_completeness_residual(S t) const { return residual_ / t; }

 private:
  // Real orthonormal coordinates for Hermitian matrices: d diagonal units
  // E_kk, then per pair k<l the elements (E_kl + E_lk)/sqrt2 and
  // i(E_kl - E_lk)/sqrt2. Each basis element is at most two weighted E_rc
  // terms; Tr(X E_ab X E_cd) = X(d,a) X(b,c) closes all contractions.
  struct BasisElem {
    int nterms;
    Index r[2], c[2];
    C w[2];
  };

  void build_basis() {
    const S inv_sqrt2 = S(1) / std::sqrt(S(2));
    basis_.reserve(static_cast<size_t>(dm_));
    for (Index k = 0; k < d_; ++k) {
      basis_.push_back(BasisElem{1, {k, 0}, {k, 0}, {C(1), C(0)}});
    }
    for (Index k = 0; k < d_; ++k) {
      for (Index l = k + 1; l < d_; ++l) {
        basis_.push_back(BasisElem{2, {k, l}, {l, k}, {C(inv_sqrt2), C(inv_sqrt2)}});
        basis_.push_back(BasisElem{2, {k, l}, {l, k}, {C(0, inv_sqrt2), C(0, -inv_sqrt2)}});
      }
    }
  }

  RVec coords_of(const CMat& m) const {
    RVec out(dm_);
    for (Index a = 0; a < dm_; ++a) {
      const BasisElem& e = basis_[static_cast<size_t>(a)];
      C acc(0);
      for (int q = 0; q < e.nterms; ++q) acc += e.w[q] * m(e.c[q], e.r[q]);
      out(a) = acc.real();
    }
    return out;
  }

  CMat hermitian_of(const RVec& x) const {
    CMat m = CMat::Zero(d_, d_);
    for (Index a = 0; a < dm_; ++a) {
      const BasisElem& e = basis_[static_cast<size_t>(a)];
      for (int q = 0; q < e.nterms; ++q) m(e.r[q], e.c[q]) += x(a) * e.w[q];
    }
    return m;
  }

  // Slacks, their inverses, residual matrix and phi at the current iterate.
  void refresh(S t) {
    const CMat eye = CMat::Identity(d_, d_);
    S logdet_sum = 0;
    S cond_sum = 0;
    resmat_ = t * eye;
    for (size_t i = 0; i < rhos_.size(); ++i) {
      slacks_[i] = rhos_[i] - y_;
      Eigen::LLT<CMat> llt(slacks_[i]);
      // The iterate is only ever moved to points where every slack passed
      // the line-search Cholesky, so this recomputation succeeds too.
      inverses_[i] = llt.solve(eye);
      inverses_[i] = ((inverses_[i] + inverses_[i].adjoint()) / S(2)).eval();
      for (Index k = 0; k < d_; ++k) {
        logdet_sum += std::log(llt.matrixLLT()(k, k).real());
      }
      cond_sum += slacks_[i].norm() * inverses_[i].norm();
      resmat_ -= inverses_[i];
    }
    logdet_sum *= 2;
    phi_ = t * y_.trace().real() + logdet_sum;
    // The evaluation noise of phi has two parts: rounding of the large
    // t*Tr(Y) term and the Cholesky pivot error of each log det, which
    // grows with the slack condition numbers as the path approaches the
    // boundary.
    phi_scale_ = std::abs(t * y_.trace().real()) + std::abs(logdet_sum) + S(1) + cond_sum;
    residual_ = resmat_.norm();
  }

  S phi_noise_floor(S) const {
    return S(64) * std::numeric_limits<S>::epsilon() * phi_scale_;
  }

  bool trial_phi(const CMat& y_trial, S t, S& phi_out) const {
    S logdet_sum = 0;
    for (size_t i = 0; i < rhos_.size(); ++i) {
      CMat slack = rhos_[i] - y_trial;
      Eigen::LLT<CMat> llt(slack);
      if (llt.info() != Eigen::Success) return false;
      for (Index k = 0; k < d_; ++k) {
        logdet_sum += std::log(llt.matrixLLT()(k, k).real());
      }
    }
    phi_out = t * y_trial.trace().real() + 2 * logdet_sum;
    return true;
  }

  void assemble_hessian() {
    hess_ = RMat::Zero(dm_, dm_);
    for (const CMat& x : inverses_) {
      for (Index a = 0; a < dm_; ++a) {
        const BasisElem& ea = basis_[static_cast<size_t>(a)];
        for (Index b = a; b < dm_; ++b) {
          const BasisElem& eb = basis_[static_cast<size_t>(b)];
          C acc(0);
          for (int qa = 0; qa < ea.nterms; ++qa) {
            for (int qb = 0; qb < eb.nterms; ++qb) {
              acc += ea.w[qa] * eb.w[qb] * x(eb.c[qb], ea.r[qa]) * x(ea.c[qa], eb.r[qb]);
            }
          }
          hess_(a, b) += acc.real();
        }
      }
    }
    hess_ = hess_.template selfadjointView<Eigen::Upper>();
  }

  // Spectral solve with eigenvalue clipping: the Hessian condition number
  // grows like t^2, far past 1/eps at the last stages, and clipping keeps
  // the step meaningful in the well-determined subspace where a Cholesky
  // would fail outright.
  RVec solve_newton_system(const RVec& grad) const {
    Eigen::SelfAdjointEigenSolver<RMat> es(hess_);
    const RVec& lambda = es.eigenvalues();
    const S floor = std::max(lambda(dm_ - 1), S(1)) * static_cast<S>(dm_) *
                    std::numeric_limits<S>::epsilon();
    RVec projected = es.eigenvectors().transpose() * grad;
    for (Index a = 0; a < dm_; ++a) {
      projected(a) /= std::max(lambda(a), floor);
    }
    return es.eigenvectors() * projected;
  }

  S duality_gap(S t) const {
    C acc(0);
    for (size_t i = 0; i < rhos_.size(); ++i) {
      acc += (inverses_[i] * slacks_[i]).trace();
    }
    return acc.real() / t;
  }

  std::vector<CMat> rhos_;
  Index n_, d_, dm_;
  S newton_tol_, backoff_;
  int max_newton_;

  CMat y_;
  std::vector<BasisElem> basis_;
  std::vector<CMat> slacks_, inverses_;
  CMat resmat_;
  RMat hess_;
  S phi_ = 0, phi_scale_ = 1, residual_ = 0;
};

}  // namespace antidist::detail
