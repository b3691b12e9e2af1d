#include "swf/reports_json.hpp"

#include "swf/errors.hpp"

namespace swf {

nlohmann::ordered_json integer_json(const Integer& z)
{
    if (z.fits_slong_p()) return static_cast<long>(z.get_si());
    return z.get_str();
}

nlohmann::ordered_json rational_json(const Rational& q)
{
    if (is_integral(q)) return integer_json(q.get_num());
    return q.get_str();
}

Rational rational_from_json(const nlohmann::json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return rational_from_string(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError(path + ": not a rational number");
        }
    }
    throw ParseError(path + ": expected an integer or a \"p/q\" string");
}

nlohmann::ordered_json to_json(const ValidationReport& r)
{
    nlohmann::ordered_json j;
    j["ok"] = r.ok;
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) {
        nlohmann::ordered_json e;
        e["constraint"] = v.constraint;
        e["witness"] = v.witness;
        e["residual"] = rational_json(v.residual);
        j["violations"].push_back(e);
    }
    return j;
}

nlohmann::ordered_json range_json(const DegreeRange& r)
{
    if (r.empty()) return nullptr;
    return {r.lo, r.hi};
}

nlohmann::ordered_json to_json(const HomologyTable& t)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json ranks = nlohmann::ordered_json::object();
    for (const auto& [d, k] : t.ranks)
        if (k != 0 && t.certified.contains(d)) ranks[std::to_string(d)] = k;
    j["ranks"] = ranks;
    j["certified"] = range_json(t.certified);
    if (t.euler) j["euler"] = *t.euler;
    else j["euler"] = nullptr;
    return j;
}

}  // namespace swf
