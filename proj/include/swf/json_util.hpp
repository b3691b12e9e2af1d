#pragma once

#include "swf/errors.hpp"

#include <json.hpp>

#include <string>

namespace swf::json_util {

using nlohmann::json;

inline const json& field(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "." + key + ": missing field");
    return *it;
}

inline const json* optional_field(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline long as_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
    return j.get<long>();
}

inline double as_real(const json& j, const std::string& path)
{
    if (!j.is_number()) throw ParseError(path + ": expected a number");
    return j.get<double>();
}

inline std::string as_string(const json& j, const std::string& path)
{
    if (!j.is_string()) throw ParseError(path + ": expected a string");
    return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& path)
{
    if (!j.is_boolean()) throw ParseError(path + ": expected a boolean");
    return j.get<bool>();
}

inline const json& as_array(const json& j, const std::string& path)
{
    if (!j.is_array()) throw ParseError(path + ": expected an array");
    return j;
}

inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline json parse_bytes(const std::string& bytes)
{
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("$: invalid JSON: ") + e.what());
    }
}

}  // namespace swf::json_util
