#pragma once

#include <string>

#include <json.hpp>

#include "ergokit/state.hpp"

namespace ergokit {

// State documents come in two shapes:
//   explicit  {"dims":[2,2],"matrix":[[[re,im],...],...]}
//   named     {"name":"qubit","q":0.3,"c":0.2,"theta":0.0}
// Named constructors: qubit, ghz, werner_d, werner2, isotropic, acin, w3.

/// Throws ParseError for malformed documents and the state's own
/// validation errors for invalid matrices.
DensityMatrix state_from_json(const nlohmann::json& doc);

/// Complex entries as [re, im] pairs.
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
/// Accepts rows of [re, im] pairs or plain reals.
ComplexMatrix matrix_from_json(const nlohmann::json& rows);

nlohmann::ordered_json state_to_json(const DensityMatrix& rho);

/// Reads the text as inline JSON when it starts with '{', otherwise as a
/// path to a JSON file.
nlohmann::json load_json_source(const std::string& source);

}  // namespace ergokit
