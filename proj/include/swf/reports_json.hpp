#pragma once

#include "swf/chain_complex.hpp"
#include "swf/report.hpp"

#include <json.hpp>

namespace swf {

// Integral rationals become JSON integers when they fit, everything else a "p/q" string.
nlohmann::ordered_json rational_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::ordered_json integer_json(const Integer& z);

nlohmann::ordered_json to_json(const ValidationReport& r);
nlohmann::ordered_json range_json(const DegreeRange& r);
// Nonzero ranks inside the certified range only.
nlohmann::ordered_json to_json(const HomologyTable& t);

}  // namespace swf
