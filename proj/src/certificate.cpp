#include "antidist/certificate.hpp"

#include <cmath>
#include <limits>

namespace antidist {

namespace {
// Pad added on top of the exact down-shift so the rebuilt slacks clear an
// eigensolver-noise-sized margin and verify at psd_tol 0.
constexpr Real kHardeningPad = 1e-14;
}  // namespace

VerificationReport verify_certificate(const HermitianMatrix& y, const AntidistInstance& instance,
                                      Real psd_tol) {
  if (y.dim() != instance.dim()) {
    throw ArgumentError("verify_certificate: dimension mismatch (" + std::to_string(y.dim()) +
                        " vs " + std::to_string(instance.dim()) + ")");
  }
  if (psd_tol < 0) throw ArgumentError("verify_certificate: psd_tol must be non-negative");

  VerificationReport report;
  report.trace_value = trace(y);
  report.per_state_min_eig.resize(instance.size());
  Real worst = std::numeric_limits<Real>::infinity();
  for (Index i = 0; i < instance.size(); ++i) {
    report.per_state_min_eig(i) = min_eigenvalue(instance.rho(i) - y);
    worst = std::min(worst, report.per_state_min_eig(i));
  }

  if (!(report.trace_value > 0)) {
    report.valid = false;
    report.failure_reason = "trace not positive (" + std::to_string(report.trace_value) + ")";
  } else if (worst < -psd_tol) {
    report.valid = false;
    report.failure_reason =
        "slack eigenvalue " + std::to_string(worst) + " below -psd_tol";
  } else {
    report.valid = true;
  }
  return report;
}

std::optional<Certificate> harden_certificate(const HermitianMatrix& y_numeric,
                                              const AntidistInstance& instance) {
  if (y_numeric.dim() != instance.dim()) {
    throw ArgumentError("harden_certificate: dimension mismatch");
  }

  Real s = std::numeric_limits<Real>::infinity();
  for (Index i = 0; i < instance.size(); ++i) {
    s = std::min(s, min_eigenvalue(instance.rho(i) - y_numeric));
  }

  Certificate cert;
  if (s >= 0) {
    cert.y = y_numeric;
    cert.shift_applied = 0;
  } else {
    const Real shift = s - kHardeningPad;
    const Real shifted_trace =
        trace(y_numeric) + shift * static_cast<Real>(y_numeric.dim());
    if (!(shifted_trace > 0)) {
      return std::nullopt;  // margin too thin to certify
    }
    cert.y = y_numeric.shifted(shift);
    cert.shift_applied = shift;
  }

  cert.trace_value = trace(cert.y);
  Real min_slack = std::numeric_limits<Real>::infinity();
  for (Index i = 0; i < instance.size(); ++i) {
    min_slack = std::min(min_slack, min_eigenvalue(instance.rho(i) - cert.y));
  }
  cert.min_slack_eig = min_slack;
  cert.psd_tol_used = std::max(Real(0), -min_slack);
  if (!(cert.trace_value > 0)) return std::nullopt;
  return cert;
}

}  // namespace antidist
