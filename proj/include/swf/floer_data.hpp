#pragma once

#include "swf/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swf {

struct CriticalOrbit {
    std::string id;
    int index = 0;
    bool reducible = false;
};

inline bool operator==(const CriticalOrbit& a, const CriticalOrbit& b)
{
    return a.id == b.id && a.index == b.index && a.reducible == b.reducible;
}

using OrbitPair = std::pair<std::string, std::string>;

// Integer counts. n: index drop 1, m: index drop 2 (free to free); u: theta to free (drop 2);
// v: free to theta (drop 1). Zero entries are never stored.
struct CoefficientSystem {
    std::map<OrbitPair, long> n;
    std::map<OrbitPair, long> m;
    std::map<std::string, long> u;
    std::map<std::string, long> v;
};

inline bool operator==(const CoefficientSystem& a, const CoefficientSystem& b)
{
    return a.n == b.n && a.m == b.m && a.u == b.u && a.v == b.v;
}

class FloerData {
public:
    FloerData() = default;
    // Enforces unique ids, at most one reducible orbit and the index constraint of every key.
    FloerData(std::string label, std::vector<CriticalOrbit> orbits, CoefficientSystem coeffs);

    const std::string& label() const { return label_; }
    // Sorted by (index, id), the reducible orbit included.
    const std::vector<CriticalOrbit>& orbits() const { return orbits_; }
    std::vector<CriticalOrbit> free_orbits() const;
    const CriticalOrbit* reducible() const;
    bool has_reducible() const { return reducible() != nullptr; }
    const CriticalOrbit& orbit(const std::string& id) const;
    bool has_orbit(const std::string& id) const { return pos_.count(id) != 0; }
    // Position of the orbit in orbits().
    std::size_t position(const std::string& id) const;
    int index(const std::string& id) const { return orbit(id).index; }
    std::vector<std::string> free_at_index(int k) const;

    const CoefficientSystem& coeffs() const { return coeffs_; }
    long n(const std::string& a, const std::string& b) const;
    long m(const std::string& a, const std::string& c) const;
    long u(const std::string& c) const;
    long v(const std::string& a) const;
    // Nonzero n(a, .) / m(a, .) entries.
    std::vector<std::pair<std::string, long>> n_from(const std::string& a) const;
    std::vector<std::pair<std::string, long>> m_from(const std::string& a) const;

    std::optional<int> min_index() const;
    std::optional<int> max_index() const;

    friend bool operator==(const FloerData& a, const FloerData& b)
    {
        return a.label_ == b.label_ && a.orbits_ == b.orbits_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::string label_;
    std::vector<CriticalOrbit> orbits_;
    std::map<std::string, std::size_t> pos_;
    CoefficientSystem coeffs_;
};

ValidationReport validate(const FloerData& data);

// Same data with every orbit index moved by delta.
FloerData shift_indices(const FloerData& data, int delta, const std::string& label);

// JSON model. path prefixes every error location.
FloerData floer_from_json(const nlohmann::json& j, const std::string& path = "$");
nlohmann::ordered_json floer_to_json(const FloerData& data);
FloerData parse_floer(const std::string& bytes);
std::string serialize_floer(const FloerData& data);

struct GeneratorProfile {
    std::size_t orbit_count = 0;
    int index_min = 0;
    int index_max = 0;
    bool with_reducible = true;
    long magnitude = 2;  // bound on sampled entries of n, u, v and kernel steps of m
};

FloerData generate_admissible(std::uint64_t seed, const GeneratorProfile& profile);

}  // namespace swf
