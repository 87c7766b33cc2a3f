#pragma once

// Built-in copies of the published d=4 counterexample data (also shipped
// as data/paper_d4.json and data/paper_y.json), plus the reference values
// every regression check pins against. The state amplitudes are published
// to 8 decimals, which caps the reproducible accuracy of derived spectra
// at roughly 1e-7.

#include "antidist/certificate.hpp"
#include "antidist/states.hpp"
#include "antidist/types.hpp"

namespace antidist::fixtures {

inline constexpr Index kDim = 4;

// Reference trace of the certificate matrix: the 15-decimal digit sum of
// its diagonal, and the same value as published with full precision.
inline constexpr Real kReferenceTrace = 0.000393813028863;
inline constexpr Real kReferenceTraceFull = 0.0003938130288630194;

// Largest pairwise overlap of the counterexample states; the d=4
// hypothesis bound is 2/3.
inline constexpr Real kReferenceMaxOverlap = 0.64514235;

// Eigenvalues of rho_i - Y for i = 1..4, ascending.
inline constexpr Real kReferenceSlackEigenvalues[4][4] = {
    {0.000000000780951, 0.000159290602031, 0.007593054347881, 0.991853848824242},
    {0.000000000845682, 0.000170622302504, 0.006501501274832, 0.992934060068367},
    {0.000000000751231, 0.000136742588802, 0.009100561906205, 0.990368883698794},
    {0.000000000905010, 0.000186792438756, 0.007152857760097, 0.992266545011053},
};

const char* state_set_json_text();
const char* certificate_json_text();

/// The four counterexample states, renormalized on load.
StateSet counterexample_states();

/// The certificate matrix Y.
HermitianMatrix counterexample_y();

Certificate counterexample_certificate();

}  // namespace antidist::fixtures
