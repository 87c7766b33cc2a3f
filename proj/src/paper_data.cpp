#include "antidist/fixtures.hpp"

#include "antidist/json_io.hpp"

namespace antidist::fixtures {

namespace {

constexpr const char* kStateSetJson = R"json({
  "dim": 4,
  "states": [
    [[0.50127198, -0.037607], [-0.00698152, -0.590973], [0.08186514, -0.4497548], [-0.01299883, 0.43458491]],
    [[-0.07115345, -0.27080326], [0.82047712, 0.26320823], [0.22105089, -0.2091996], [-0.23575591, -0.1758769]],
    [[0.31360906, 0.46339313], [-0.0465825, -0.47825017], [-0.10470394, -0.11776404], [0.60231515, 0.26154959]],
    [[-0.53532122, -0.03654632], [0.40955941, -0.15150576], [-0.05741386, 0.23873985], [-0.4737113, -0.48652564]]
  ]
}
)json";

constexpr const char* kCertificateJson = R"json({
  "dim": 4,
  "y": [
    [[-0.002352578004032, 0.0], [-0.006139429568647, 0.002253370306853], [-0.004431710991485, -0.000778124769934], [0.004045982033136, -0.002181583048532]],
    [[-0.006139429568647, -0.002253370306853], [0.003589384258236, 0.0], [0.002517710068163, -0.002392391795840], [-0.009308704240406, -0.000168259372307]],
    [[-0.004431710991485, 0.000778124769934], [0.002517710068163, 0.002392391795840], [-0.002123263811620, 0.0], [-0.001232775598439, 0.000491834467627]],
    [[0.004045982033136, 0.002181583048532], [-0.009308704240406, 0.000168259372307], [-0.001232775598439, -0.000491834467627], [0.001280270586279, 0.0]]
  ],
  "trace": 0.0003938130288630194,
  "min_slack_eig": 7.51231e-10,
  "shift_applied": 0.0
}
)json";

}  // namespace

const char* state_set_json_text() { return kStateSetJson; }
const char* certificate_json_text() { return kCertificateJson; }

StateSet counterexample_states() {
  return state_set_from_json(Json::parse(kStateSetJson));
}

HermitianMatrix counterexample_y() { return counterexample_certificate().y; }

Certificate counterexample_certificate() {
  return certificate_from_json(Json::parse(kCertificateJson));
}

}  // namespace antidist::fixtures
