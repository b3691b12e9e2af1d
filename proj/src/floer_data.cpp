#include "swf/floer_data.hpp"

#include "swf/errors.hpp"
#include "swf/json_util.hpp"

#include <algorithm>

namespace swf {

namespace {

std::string pair_name(const OrbitPair& p) { return "(" + p.first + "," + p.second + ")"; }

}  // namespace

FloerData::FloerData(std::string label, std::vector<CriticalOrbit> orbits, CoefficientSystem coeffs)
    : label_(std::move(label)), orbits_(std::move(orbits))
{
    std::sort(orbits_.begin(), orbits_.end(), [](const CriticalOrbit& a, const CriticalOrbit& b) {
        return a.index != b.index ? a.index < b.index : a.id < b.id;
    });
    int reducibles = 0;
    for (std::size_t i = 0; i < orbits_.size(); ++i) {
        if (!pos_.emplace(orbits_[i].id, i).second) throw ConstraintError("duplicate orbit id " + orbits_[i].id);
        if (orbits_[i].reducible) ++reducibles;
    }
    if (reducibles > 1) throw ConstraintError("more than one reducible orbit");

    auto free_orbit = [&](const std::string& id, const std::string& family, const std::string& key) -> int {
        auto it = pos_.find(id);
        if (it == pos_.end()) throw ConstraintError(family + " key " + key + " names unknown orbit " + id);
        if (orbits_[it->second].reducible)
            throw ConstraintError(family + " key " + key + " uses the reducible orbit " + id);
        return orbits_[it->second].index;
    };
    auto check_pairs = [&](const std::map<OrbitPair, long>& in, std::map<OrbitPair, long>& out,
                           const std::string& family, int drop) {
        for (const auto& [k, val] : in) {
            int ia = free_orbit(k.first, family, pair_name(k));
            int ib = free_orbit(k.second, family, pair_name(k));
            if (ia - ib != drop)
                throw ConstraintError(family + " key " + pair_name(k) + " needs index difference " +
                                      std::to_string(drop) + ", got " + std::to_string(ia - ib));
            if (val != 0) out[k] = val;
        }
    };
    check_pairs(coeffs.n, coeffs_.n, "n", 1);
    check_pairs(coeffs.m, coeffs_.m, "m", 2);

    const CriticalOrbit* theta = reducible();
    auto check_theta = [&](const std::map<std::string, long>& in, std::map<std::string, long>& out,
                           const std::string& family, int sign) {
        if (in.empty()) return;
        for (const auto& [id, val] : in) {
            if (!theta) throw ConstraintError(family + " key " + id + " given but there is no reducible orbit");
            int ia = free_orbit(id, family, id);
            int drop = sign * (ia - theta->index);
            int want = sign > 0 ? 1 : 2;
            if (drop != want)
                throw ConstraintError(family + " key " + id + " needs index difference " + std::to_string(want) +
                                      " with the reducible orbit, got " + std::to_string(drop));
            if (val != 0) out[id] = val;
        }
    };
    check_theta(coeffs.u, coeffs_.u, "u", -1);
    check_theta(coeffs.v, coeffs_.v, "v", 1);
}

std::vector<CriticalOrbit> FloerData::free_orbits() const
{
    std::vector<CriticalOrbit> out;
    for (const auto& o : orbits_)
        if (!o.reducible) out.push_back(o);
    return out;
}

const CriticalOrbit* FloerData::reducible() const
{
    for (const auto& o : orbits_)
        if (o.reducible) return &o;
    return nullptr;
}

const CriticalOrbit& FloerData::orbit(const std::string& id) const
{
    return orbits_[position(id)];
}

std::size_t FloerData::position(const std::string& id) const
{
    auto it = pos_.find(id);
    if (it == pos_.end()) throw std::out_of_range("unknown orbit " + id);
    return it->second;
}

std::vector<std::string> FloerData::free_at_index(int k) const
{
    std::vector<std::string> out;
    for (const auto& o : orbits_)
        if (!o.reducible && o.index == k) out.push_back(o.id);
    return out;
}

namespace {

template <class Map, class Key>
long lookup(const Map& m, const Key& k)
{
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, long>> row_of(const std::map<OrbitPair, long>& m, const std::string& a)
{
    std::vector<std::pair<std::string, long>> out;
    for (auto it = m.lower_bound({a, std::string()}); it != m.end() && it->first.first == a; ++it)
        out.emplace_back(it->first.second, it->second);
    return out;
}

}  // namespace

long FloerData::n(const std::string& a, const std::string& b) const { return lookup(coeffs_.n, OrbitPair{a, b}); }
long FloerData::m(const std::string& a, const std::string& c) const { return lookup(coeffs_.m, OrbitPair{a, c}); }
long FloerData::u(const std::string& c) const { return lookup(coeffs_.u, c); }
long FloerData::v(const std::string& a) const { return lookup(coeffs_.v, a); }

std::vector<std::pair<std::string, long>> FloerData::n_from(const std::string& a) const
{
    return row_of(coeffs_.n, a);
}

std::vector<std::pair<std::string, long>> FloerData::m_from(const std::string& a) const
{
    return row_of(coeffs_.m, a);
}

std::optional<int> FloerData::min_index() const
{
    if (orbits_.empty()) return std::nullopt;
    return orbits_.front().index;
}

std::optional<int> FloerData::max_index() const
{
    if (orbits_.empty()) return std::nullopt;
    return orbits_.back().index;
}

ValidationReport validate(const FloerData& data)
{
    ValidationReport report;
    const auto free = data.free_orbits();
    const CriticalOrbit* theta = data.reducible();

    // (A1) n.n = 0
    for (const auto& a : free) {
        std::map<std::string, Rational> acc;
        for (const auto& [b, nab] : data.n_from(a.id))
            for (const auto& [c, nbc] : data.n_from(b)) acc[c] += Rational(nab) * nbc;
        for (const auto& c : free)
            if (auto it = acc.find(c.id); it != acc.end() && it->second != 0)
                report.add({"A1", {a.id, c.id}, it->second});
    }
    // (A2) n.m - m.n + theta term = 0
    for (const auto& a : free) {
        std::map<std::string, Rational> acc;
        for (const auto& [b, nab] : data.n_from(a.id))
            for (const auto& [d, mbd] : data.m_from(b)) acc[d] += Rational(nab) * mbd;
        for (const auto& [c, mac] : data.m_from(a.id))
            for (const auto& [d, ncd] : data.n_from(c)) acc[d] -= Rational(mac) * ncd;
        if (theta && a.index == theta->index + 1)
            for (const auto& [d, ud] : data.coeffs().u) acc[d] += Rational(data.v(a.id)) * ud;
        for (const auto& d : free)
            if (auto it = acc.find(d.id); it != acc.end() && it->second != 0)
                report.add({"A2", {a.id, d.id}, it->second});
    }
    if (!theta) return report;
    // (A3) n.v = 0
    for (const auto& a : free) {
        if (a.index != theta->index + 2) continue;
        Rational r = 0;
        for (const auto& [b, nab] : data.n_from(a.id)) r += Rational(nab) * data.v(b);
        if (r != 0) report.add({"A3", {a.id}, r});
    }
    // (A4) u.n = 0
    std::map<std::string, Rational> acc;
    for (const auto& [c, uc] : data.coeffs().u)
        for (const auto& [d, ncd] : data.n_from(c)) acc[d] += Rational(uc) * ncd;
    for (const auto& d : free)
        if (auto it = acc.find(d.id); it != acc.end() && it->second != 0) report.add({"A4", {d.id}, it->second});
    return report;
}

FloerData shift_indices(const FloerData& data, int delta, const std::string& label)
{
    std::vector<CriticalOrbit> orbits = data.orbits();
    for (auto& o : orbits) o.index += delta;
    return FloerData(label, orbits, data.coeffs());
}

FloerData floer_from_json(const nlohmann::json& j, const std::string& path)
{
    using namespace json_util;
    std::string label = as_string(field(j, "label", path), path + ".label");
    std::vector<CriticalOrbit> orbits;
    const auto& jo = as_array(field(j, "orbits", path), path + ".orbits");
    for (std::size_t i = 0; i < jo.size(); ++i) {
        std::string p = at(path + ".orbits", i);
        orbits.push_back({as_string(field(jo[i], "id", p), p + ".id"),
                          static_cast<int>(as_int(field(jo[i], "index", p), p + ".index")),
                          as_bool(field(jo[i], "reducible", p), p + ".reducible")});
    }
    CoefficientSystem cs;
    auto pairs = [&](const char* name, std::map<OrbitPair, long>& out) {
        std::string p = path + "." + name;
        const auto& arr = as_array(field(j, name, path), p);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string q = at(p, i);
            if (!arr[i].is_array() || arr[i].size() != 3) throw ParseError(q + ": expected [string, string, int]");
            OrbitPair key{as_string(arr[i][0], q + "[0]"), as_string(arr[i][1], q + "[1]")};
            long val = as_int(arr[i][2], q + "[2]");
            if (out.count(key)) throw ConstraintError(std::string(name) + " key " + pair_name(key) + " repeated");
            out[key] = val;
        }
    };
    auto singles = [&](const char* name, std::map<std::string, long>& out) {
        std::string p = path + "." + name;
        const auto& arr = as_array(field(j, name, path), p);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string q = at(p, i);
            if (!arr[i].is_array() || arr[i].size() != 2) throw ParseError(q + ": expected [string, int]");
            std::string key = as_string(arr[i][0], q + "[0]");
            long val = as_int(arr[i][1], q + "[1]");
            if (out.count(key)) throw ConstraintError(std::string(name) + " key " + key + " repeated");
            out[key] = val;
        }
    };
    pairs("n", cs.n);
    pairs("m", cs.m);
    singles("u", cs.u);
    singles("v", cs.v);
    return FloerData(std::move(label), std::move(orbits), std::move(cs));
}

nlohmann::ordered_json floer_to_json(const FloerData& data)
{
    nlohmann::ordered_json j;
    j["label"] = data.label();
    j["orbits"] = nlohmann::ordered_json::array();
    for (const auto& o : data.orbits()) {
        nlohmann::ordered_json e;
        e["id"] = o.id;
        e["index"] = o.index;
        e["reducible"] = o.reducible;
        j["orbits"].push_back(e);
    }
    auto pairs = [](const std::map<OrbitPair, long>& m) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [k, v] : m) arr.push_back({k.first, k.second, v});
        return arr;
    };
    auto singles = [](const std::map<std::string, long>& m) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [k, v] : m) arr.push_back({k, v});
        return arr;
    };
    j["n"] = pairs(data.coeffs().n);
    j["m"] = pairs(data.coeffs().m);
    j["u"] = singles(data.coeffs().u);
    j["v"] = singles(data.coeffs().v);
    return j;
}

FloerData parse_floer(const std::string& bytes)
{
    return floer_from_json(json_util::parse_bytes(bytes));
}

std::string serialize_floer(const FloerData& data)
{
    return floer_to_json(data).dump();
}

}  // namespace swf
