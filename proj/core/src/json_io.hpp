#pragma once

// nlohmann::json conversions shared by the serializers. Internal header.

#include <json.hpp>

#include "holodyn/exp_poly.hpp"
#include "holodyn/jet.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn::detail {

using nlohmann::json;

json jet_json(const Jet& j);
Jet jet_parse(const json& j);
json expoly_json(const ExpPoly& e);
ExpPoly expoly_parse(const json& j);
json field_json(const VectorField& f);
VectorField field_parse(const json& j);

json complex_json(cplx z);
cplx complex_parse(const json& j);

/// Parses text, turning nlohmann's exceptions into ParseError with position info.
json parse_text(std::string_view text);

/// Fetches a required key or throws ParseError naming it.
const json& require(const json& obj, const char* key);

}  // namespace holodyn::detail
