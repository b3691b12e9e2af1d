#include "swf/complexes.hpp"

#include "swf/errors.hpp"

#include <algorithm>

namespace swf {

void add_term(GenVector& v, const EquivariantGenerator& g, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = v.emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

int degree(const FloerData& data, const EquivariantGenerator& g)
{
    int mu = data.index(g.orbit);
    return mu + 2 * g.power + (g.kind == GenKind::one ? 1 : 0);
}

std::string label(const EquivariantGenerator& g)
{
    std::string pw = "O^" + std::to_string(g.power) + "*";
    switch (g.kind) {
    case GenKind::eta: return pw + "eta(" + g.orbit + ")";
    case GenKind::one: return pw + "1(" + g.orbit + ")";
    case GenKind::theta: return pw + "theta";
    }
    return pw;
}

std::vector<EquivariantGenerator> equivariant_generators(const FloerData& data, int max_power)
{
    std::vector<EquivariantGenerator> gens;
    for (const auto& o : data.orbits())
        for (int p = 0; p <= max_power; ++p) {
            if (o.reducible) {
                gens.push_back({GenKind::theta, o.id, p});
            } else {
                gens.push_back({GenKind::eta, o.id, p});
                gens.push_back({GenKind::one, o.id, p});
            }
        }
    std::stable_sort(gens.begin(), gens.end(), [&](const auto& a, const auto& b) {
        int da = degree(data, a), db = degree(data, b);
        if (da != db) return da < db;
        return data.position(a.orbit) < data.position(b.orbit);
    });
    return gens;
}

GenVector equivariant_boundary(const FloerData& data, const EquivariantGenerator& g)
{
    GenVector out;
    const int p = g.power;
    switch (g.kind) {
    case GenKind::one:
        for (const auto& [b, c] : data.n_from(g.orbit)) add_term(out, {GenKind::one, b, p}, -c);
        break;
    case GenKind::eta: {
        for (const auto& [b, c] : data.n_from(g.orbit)) add_term(out, {GenKind::eta, b, p}, c);
        for (const auto& [c, k] : data.m_from(g.orbit)) add_term(out, {GenKind::one, c, p}, k);
        if (p >= 1) add_term(out, {GenKind::one, g.orbit, p - 1}, -1);
        const CriticalOrbit* theta = data.reducible();
        if (theta && data.index(g.orbit) - theta->index == 1)
            add_term(out, {GenKind::theta, theta->id, p}, data.v(g.orbit));
        break;
    }
    case GenKind::theta:
        for (const auto& [c, k] : data.coeffs().u) add_term(out, {GenKind::one, c, p}, k);
        break;
    }
    return out;
}

GenVector equivariant_boundary(const FloerData& data, const GenVector& x)
{
    GenVector out;
    for (const auto& [g, c] : x)
        for (const auto& [h, k] : equivariant_boundary(data, g)) add_term(out, h, c * k);
    return out;
}

DegreeRange certified_range(const FloerData& data, TruncationPolicy policy)
{
    auto gens = equivariant_generators(data, policy.max_power);
    if (gens.empty()) return {};
    int lo = degree(data, gens.front());
    int top = degree(data, gens.back());
    int hi = std::min(2 * policy.max_power + *data.min_index() - 1, top - 1);
    return {lo, hi};
}

std::map<int, std::vector<EquivariantGenerator>> equivariant_basis(const FloerData& data, TruncationPolicy policy)
{
    std::map<int, std::vector<EquivariantGenerator>> out;
    for (const auto& g : equivariant_generators(data, policy.max_power)) out[degree(data, g)].push_back(g);
    return out;
}

void require_admissible(const FloerData& data)
{
    ValidationReport r = validate(data);
    if (r.ok) return;
    const Violation& v = r.violations.front();
    std::string w;
    for (const auto& s : v.witness) w += (w.empty() ? "" : ",") + s;
    throw AdmissibilityError("data violates " + v.constraint + " at (" + w + ") with residual " + to_string(v.residual) +
                             " (" + std::to_string(r.violations.size()) + " violation(s) in total)");
}

ChainComplex build_generated(const FloerData& data, const std::vector<EquivariantGenerator>& gens,
                             DegreeRange certified)
{
    std::map<int, std::vector<EquivariantGenerator>> by_degree;
    for (const auto& g : gens) by_degree[degree(data, g)].push_back(g);
    if (by_degree.empty()) return ChainComplex(0, {}, {}, DegreeRange{});
    for (auto& [d, list] : by_degree)
        std::stable_sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
            return data.position(a.orbit) < data.position(b.orbit);
        });
    const int lo = by_degree.begin()->first;
    const int hi = by_degree.rbegin()->first;

    std::vector<std::vector<std::string>> basis(hi - lo + 1);
    std::map<EquivariantGenerator, std::size_t> slot;
    for (const auto& [d, list] : by_degree)
        for (std::size_t i = 0; i < list.size(); ++i) {
            basis[d - lo].push_back(label(list[i]));
            slot[list[i]] = i;
        }
    std::vector<SparseMatrix> boundary;
    for (int d = lo; d <= hi; ++d) {
        SparseMatrix m(d == lo ? 0 : basis[d - lo - 1].size(), basis[d - lo].size());
        auto it = by_degree.find(d);
        if (it != by_degree.end())
            for (std::size_t j = 0; j < it->second.size(); ++j)
                for (const auto& [h, c] : equivariant_boundary(data, it->second[j])) {
                    auto s = slot.find(h);
                    if (s == slot.end()) throw std::invalid_argument("generator set is not closed under D: " + label(h));
                    m.add(s->second, j, c);
                }
        boundary.push_back(std::move(m));
    }
    return ChainComplex(lo, std::move(basis), std::move(boundary), certified);
}

std::vector<Rational> coordinates(const std::vector<EquivariantGenerator>& basis, const GenVector& x)
{
    std::vector<Rational> out(basis.size(), 0);
    std::size_t found = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = x.find(basis[i]);
        if (it == x.end()) continue;
        out[i] = it->second;
        ++found;
    }
    if (found != x.size()) throw std::invalid_argument("vector has terms outside the given basis");
    return out;
}

ChainComplex build_equivariant_unchecked(const FloerData& data, TruncationPolicy policy)
{
    if (policy.max_power < 0) throw std::invalid_argument("max power must be nonnegative");
    return build_generated(data, equivariant_generators(data, policy.max_power), certified_range(data, policy));
}

ChainComplex build_equivariant(const FloerData& data, TruncationPolicy policy)
{
    require_admissible(data);
    return build_equivariant_unchecked(data, policy);
}

HomologyTable equivariant_homology(const FloerData& data, TruncationPolicy policy)
{
    return homology(build_equivariant(data, policy));
}

ChainComplex build_nonequivariant(const FloerData& data)
{
    require_admissible(data);
    auto free = data.free_orbits();
    if (free.empty()) return ChainComplex(0, {}, {}, DegreeRange{});
    const int lo = free.front().index;
    const int hi = free.back().index;
    std::vector<std::vector<std::string>> basis(hi - lo + 1);
    std::map<std::string, std::size_t> slot;
    for (const auto& o : free) {
        slot[o.id] = basis[o.index - lo].size();
        basis[o.index - lo].push_back(o.id);
    }
    std::vector<SparseMatrix> boundary;
    for (int d = lo; d <= hi; ++d) {
        SparseMatrix m(d == lo ? 0 : basis[d - lo - 1].size(), basis[d - lo].size());
        for (std::size_t j = 0; j < basis[d - lo].size(); ++j)
            for (const auto& [b, c] : data.n_from(basis[d - lo][j])) m.add(slot.at(b), j, c);
        boundary.push_back(std::move(m));
    }
    return ChainComplex(lo, std::move(basis), std::move(boundary), DegreeRange{lo, hi});
}

HomologyTable swf_homology(const FloerData& data)
{
    return homology(build_nonequivariant(data));
}

long casson(const FloerData& data)
{
    return euler_characteristic(build_nonequivariant(data));
}

}  // namespace swf
