#include "ergokit/state_io.hpp"

#include <fstream>
#include <sstream>

namespace ergokit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

double number(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing field \"") + key + "\"");
  if (!it->is_number()) parse_fail(std::string("field \"") + key + "\" must be a number");
  return it->get<double>();
}

double number_or(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? number(doc, key) : fallback;
}

cplx entry(const json& e) {
  if (e.is_number()) return e.get<double>();
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  parse_fail("matrix entry must be a number or an [re, im] pair");
}

}  // namespace

ComplexMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) parse_fail("matrix must be a nonempty array of rows");
  const std::size_t d = rows.size();
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    if (!rows[r].is_array() || rows[r].size() != d) parse_fail("matrix must be square");
    for (std::size_t c = 0; c < d; ++c) m(r, c) = entry(rows[r][c]);
  }
  return m;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json state_to_json(const DensityMatrix& rho) {
  ordered_json out;
  out["dims"] = std::vector<std::size_t>(rho.dims().begin(), rho.dims().end());
  out["matrix"] = matrix_to_json(rho.matrix());
  return out;
}

DensityMatrix state_from_json(const json& doc) {
  if (!doc.is_object()) parse_fail("state must be a JSON object");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_fail("field \"name\" must be a string");
    const auto name = doc["name"].get<std::string>();
    if (name == "qubit") return qubit_state(number(doc, "q"), number(doc, "c"), number_or(doc, "theta", 0.0));
    if (name == "ghz") return ghz_state(number(doc, "theta"));
    if (name == "werner_d") {
      const double d = number(doc, "d");
      if (d < 2 || d != static_cast<double>(static_cast<std::size_t>(d))) parse_fail("\"d\" must be an integer >= 2");
      return werner_d_state(static_cast<std::size_t>(d), number(doc, "v"));
    }
    if (name == "werner2") return werner2_state(number(doc, "v"), number(doc, "theta"));
    if (name == "isotropic") return isotropic_state(number(doc, "v"), number_or(doc, "lambda", 0.5));
    if (name == "acin") {
      if (!doc.contains("l") || !doc["l"].is_array()) parse_fail("acin state needs array \"l\"");
      std::vector<double> l;
      for (const auto& x : doc["l"]) {
        if (!x.is_number()) parse_fail("acin coefficients must be numbers");
        l.push_back(x.get<double>());
      }
      return acin_state(l, number_or(doc, "theta", 0.0));
    }
    if (name == "w3") return w_state();
    parse_fail("unknown state name \"" + name + "\"");
  }
  if (!doc.contains("matrix")) parse_fail("state needs \"matrix\" or \"name\"");
  ComplexMatrix m = matrix_from_json(doc["matrix"]);
  std::vector<std::size_t> dims;
  if (doc.contains("dims")) {
    if (!doc["dims"].is_array()) parse_fail("\"dims\" must be an array");
    for (const auto& x : doc["dims"]) {
      if (!x.is_number_unsigned() || x.get<std::size_t>() == 0) parse_fail("\"dims\" entries must be positive integers");
      dims.push_back(x.get<std::size_t>());
    }
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

json load_json_source(const std::string& source) {
  std::string text;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (source[first] == '{' || source[first] == '[')) {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw Error(ErrorCode::IoError, "cannot open \"" + source + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace ergokit
