#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "antidist/certificate.hpp"
#include "antidist/states.hpp"
#include "antidist/types.hpp"

namespace antidist {

// Insertion-ordered JSON keeps emitted documents stable and readable.
using Json = nlohmann::ordered_json;

// Complex numbers are 2-element [re, im] arrays of doubles throughout.
Json complex_to_json(Complex z);
Json matrix_to_json(const MatrixXc& m);
Json hermitian_to_json(const HermitianMatrix& h);
HermitianMatrix hermitian_from_json(const Json& j, const std::string& what);

// State-set document: { "dim": d, "states": [ [ [re, im] * d ] * n ] }.
// Loading renormalizes; corrections above 1e-10 are reported per state.
struct StateSetLoadInfo {
  std::vector<std::pair<Index, Real>> corrections;
};
Json state_set_to_json(const StateSet& set);
StateSet state_set_from_json(const Json& doc, StateSetLoadInfo* info = nullptr);
StateSet load_state_set(const std::string& path, StateSetLoadInfo* info = nullptr);
void save_state_set(const StateSet& set, const std::string& path);

// Certificate document: { "dim", "y", "trace", "min_slack_eig",
// "shift_applied" }. The trace field must agree with the stored y.
Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& doc);
Certificate load_certificate(const std::string& path);
void save_certificate(const Certificate& cert, const std::string& path);

Json parse_json_file(const std::string& path);

}  // namespace antidist
