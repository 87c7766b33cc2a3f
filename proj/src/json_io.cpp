#include "antidist/json_io.hpp"

#include <cmath>
#include <fstream>

namespace antidist {

namespace {

Complex complex_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(what + ": complex entries must be [re, im] number pairs");
  }
  return Complex(j[0].get<Real>(), j[1].get<Real>());
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const MatrixXc& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json hermitian_to_json(const HermitianMatrix& h) { return matrix_to_json(h.matrix()); }

HermitianMatrix hermitian_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(what + ": expected a non-empty array of rows");
  }
  const Index d = static_cast<Index>(j.size());
  MatrixXc m(d, d);
  for (Index i = 0; i < d; ++i) {
    const Json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d) {
      throw ParseError(what + ": row " + std::to_string(i) + " must have " + std::to_string(d) +
                       " entries");
    }
    for (Index k = 0; k < d; ++k) {
      m(i, k) = complex_from_json(row[static_cast<size_t>(k)],
                                  what + " row " + std::to_string(i));
    }
  }
  try {
    return HermitianMatrix(m);
  } catch (const ArgumentError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

Json state_set_to_json(const StateSet& set) {
  Json doc;
  doc["dim"] = set.dim();
  Json states = Json::array();
  for (Index i = 0; i < set.size(); ++i) {
    Json amps = Json::array();
    for (Index k = 0; k < set.dim(); ++k) {
      amps.push_back(complex_to_json(set[i].amplitudes()(k)));
    }
    states.push_back(std::move(amps));
  }
  doc["states"] = std::move(states);
  return doc;
}

StateSet state_set_from_json(const Json& doc, StateSetLoadInfo* info) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("states")) {
    throw ParseError("state set: document must carry \"dim\" and \"states\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<Index>() < 1) {
    throw ParseError("state set: \"dim\" must be a positive integer");
  }
  const Index d = doc["dim"].get<Index>();
  const Json& states = doc["states"];
  if (!states.is_array() || states.empty()) {
    throw ParseError("state set: \"states\" must be a non-empty array");
  }

  std::vector<PureState> parsed;
  parsed.reserve(states.size());
  for (size_t i = 0; i < states.size(); ++i) {
    const Json& amps = states[i];
    const std::string where = "state " + std::to_string(i);
    if (!amps.is_array()) {
      throw ParseError("state set: " + where + " must be an array of amplitudes");
    }
    if (static_cast<Index>(amps.size()) != d) {
      throw ParseError("state set: " + where + " has dimension " + std::to_string(amps.size()) +
                       ", expected " + std::to_string(d));
    }
    VectorXc v(d);
    for (Index k = 0; k < d; ++k) {
      v(k) = complex_from_json(amps[static_cast<size_t>(k)], "state set: " + where);
    }
    try {
      parsed.emplace_back(std::move(v));
    } catch (const ArgumentError& e) {
      throw ParseError("state set: " + where + ": " + e.what());
    }
    if (info && parsed.back().normalization_correction() > 1e-10) {
      info->corrections.emplace_back(static_cast<Index>(i),
                                     parsed.back().normalization_correction());
    }
  }
  return StateSet(std::move(parsed));
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

StateSet load_state_set(const std::string& path, StateSetLoadInfo* info) {
  return state_set_from_json(parse_json_file(path), info);
}

void save_state_set(const StateSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << state_set_to_json(set).dump(2) << "\n";
}

Json certificate_to_json(const Certificate& cert) {
  Json doc;
  doc["dim"] = cert.y.dim();
  doc["y"] = hermitian_to_json(cert.y);
  doc["trace"] = cert.trace_value;
  doc["min_slack_eig"] = cert.min_slack_eig;
  doc["shift_applied"] = cert.shift_applied;
  return doc;
}

Certificate certificate_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("y")) {
    throw ParseError("certificate: document must carry \"dim\" and \"y\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<Index>() < 1) {
    throw ParseError("certificate: \"dim\" must be a positive integer");
  }
  Certificate cert;
  cert.y = hermitian_from_json(doc["y"], "certificate y");
  if (cert.y.dim() != doc["dim"].get<Index>()) {
    throw ParseError("certificate: \"dim\" disagrees with the stored matrix");
  }
  cert.trace_value = trace(cert.y);
  if (doc.contains("trace") && doc["trace"].is_number()) {
    if (std::abs(doc["trace"].get<Real>() - cert.trace_value) > 1e-9) {
      throw ParseError("certificate: \"trace\" field disagrees with the stored matrix");
    }
  }
  if (doc.contains("min_slack_eig") && doc["min_slack_eig"].is_number()) {
    cert.min_slack_eig = doc["min_slack_eig"].get<Real>();
  }
  if (doc.contains("shift_applied") && doc["shift_applied"].is_number()) {
    cert.shift_applied = doc["shift_applied"].get<Real>();
  }
  cert.psd_tol_used = std::max(Real(0), -cert.min_slack_eig);
  return cert;
}

Certificate load_certificate(const std::string& path) {
  return certificate_from_json(parse_json_file(path));
}

void save_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << certificate_to_json(cert).dump(2) << "\n";
}

}  // namespace antidist
