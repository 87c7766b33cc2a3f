#pragma once

#include <optional>
#include <string>

#include "antidist/instance.hpp"
#include "antidist/types.hpp"

namespace antidist {

/// Witness of non-antidistinguishability: Hermitian y with trace_value > 0
/// and rho_i - y PSD for every state (min_slack_eig >= -psd_tol_used).
struct Certificate {
  HermitianMatrix y;
  Real trace_value = 0;    // == trace(y)
  Real min_slack_eig = 0;  // min_i min eigenvalue of rho_i - y
  Real psd_tol_used = 0;
  Real shift_applied = 0;  // multiple of -I applied by hardening
};

struct VerificationReport {
  bool valid = false;
  Real trace_value = 0;
  VectorXr per_state_min_eig;
  std::optional<std::string> failure_reason;
};

/// Checks the witness conditions from scratch: trace strictly positive and
/// every slack minimum eigenvalue >= -psd_tol. Deliberately recomputes
/// everything with the spectral routines only, so it audits solver output
/// without sharing any code path with it.
VerificationReport verify_certificate(const HermitianMatrix& y, const AntidistInstance& instance,
                                      Real psd_tol);

/// Turns a numerically feasible y into a strictly valid certificate. If
/// some slack dips below zero by s, shifts y down by |s| plus a machine
/// noise pad so the shifted slacks verify at psd_tol 0. Returns nullopt
/// when the shift would consume the whole trace margin.
std::optional<Certificate> harden_certificate(const HermitianMatrix& y_numeric,
                                              const AntidistInstance& instance);

}  // namespace antidist
