#include "swf/comparison.hpp"

#include "swf/errors.hpp"
#include "swf/json_util.hpp"
#include "swf/linalg.hpp"
#include "swf/reports_json.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace swf {

namespace {

// Position of every generator inside its degree for the standard layout of gens.
std::map<EquivariantGenerator, std::size_t> slots(const FloerData& data, const std::vector<EquivariantGenerator>& gens)
{
    std::map<int, std::vector<EquivariantGenerator>> by_degree;
    for (const auto& g : gens) by_degree[degree(data, g)].push_back(g);
    std::map<EquivariantGenerator, std::size_t> out;
    for (auto& [d, list] : by_degree) {
        std::stable_sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
            return data.position(a.orbit) < data.position(b.orbit);
        });
        for (std::size_t i = 0; i < list.size(); ++i) out[list[i]] = i;
    }
    return out;
}

std::map<int, std::vector<EquivariantGenerator>> by_degree(const FloerData& data,
                                                           const std::vector<EquivariantGenerator>& gens)
{
    std::map<int, std::vector<EquivariantGenerator>> out;
    for (const auto& g : gens) out[degree(data, g)].push_back(g);
    for (auto& [d, list] : out)
        std::stable_sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
            return data.position(a.orbit) < data.position(b.orbit);
        });
    return out;
}

std::size_t dense_rank(const std::vector<std::vector<Rational>>& m)
{
    if (m.empty()) return 0;
    return rank(SparseMatrix::from_dense(m));
}

}  // namespace

ChainMap chain_map_i(const FloerData& data, TruncationPolicy policy)
{
    auto cu = std::make_shared<const ChainComplex>(build_equivariant(data, policy));
    auto c = std::make_shared<const ChainComplex>(build_nonequivariant(data));
    std::map<int, SparseMatrix> blocks;
    for (const auto& [d, list] : equivariant_basis(data, policy)) {
        SparseMatrix m(c->dim(d), list.size());
        for (std::size_t j = 0; j < list.size(); ++j) {
            const auto& g = list[j];
            if (g.kind == GenKind::eta && g.power == 0) m.add(*c->index_of(d, g.orbit), j, 1);
        }
        blocks.emplace(d, std::move(m));
    }
    return ChainMap(cu, c, 0, std::move(blocks));
}

std::vector<EquivariantGenerator> q_generators(const FloerData& data, TruncationPolicy policy)
{
    std::vector<EquivariantGenerator> out;
    for (const auto& g : equivariant_generators(data, policy.max_power))
        if (!(g.kind == GenKind::eta && g.power == 0)) out.push_back(g);
    return out;
}

ChainComplex q_complex(const FloerData& data, TruncationPolicy policy)
{
    require_admissible(data);
    return build_generated(data, q_generators(data, policy), certified_range(data, policy));
}

HomologyTable q_homology(const FloerData& data, TruncationPolicy policy)
{
    return homology(q_complex(data, policy));
}

ShortExactSequence comparison_sequence(const FloerData& data, TruncationPolicy policy)
{
    ChainMap i = chain_map_i(data, policy);
    auto q = std::make_shared<const ChainComplex>(q_complex(data, policy));
    auto qgens = q_generators(data, policy);
    auto qpos = by_degree(data, qgens);
    auto upos = slots(data, equivariant_generators(data, policy.max_power));
    std::map<int, SparseMatrix> blocks;
    for (const auto& [d, list] : qpos) {
        SparseMatrix m(i.source().dim(d), list.size());
        for (std::size_t j = 0; j < list.size(); ++j) m.add(upos.at(list[j]), j, 1);
        blocks.emplace(d, std::move(m));
    }
    return {ChainMap(q, i.source_ptr(), 0, std::move(blocks)), i};
}

ExactSequenceReport exact_sequence_report(const FloerData& data, TruncationPolicy policy)
{
    ShortExactSequence ses = comparison_sequence(data, policy);
    check_exact(ses);
    const ChainComplex& q = ses.inclusion.source();
    const ChainComplex& cu = ses.inclusion.target();
    const ChainComplex& c = ses.projection.target();

    ExactSequenceReport rep;
    rep.range = cu.certified().intersect(q.certified());
    if (rep.range.empty()) return rep;
    HomologyTable hq = homology(q), hu = homology(cu), hc = homology(c);

    const int lo = rep.range.lo, hi = rep.range.hi;
    const int n = hi - lo + 1;
    std::vector<std::size_t> a(n), b(n), delta(n + 1);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < 2 * n + 1; ++t) {
        if (t < n) {
            a[t] = induced_rank(ses.inclusion, lo + t);
            b[t] = induced_rank(ses.projection, lo + t);
        } else {
            int k = t - n;
            delta[k] = dense_rank(connecting_map_oracle(ses, lo + k, LiftPolicy::minimal, false).matrix);
        }
    }
    for (int t = 0; t < n; ++t) {
        const int d = lo + t;
        LesNode nq{d, "Q", hq.rank(d), delta[t + 1], a[t], false};
        nq.exact = nq.dim - nq.rank_out == nq.rank_in;
        LesNode nu{d, "equivariant", hu.rank(d), a[t], b[t], false};
        nu.exact = nu.dim - nu.rank_out == nu.rank_in;
        LesNode nc{d, "plain", hc.rank(d), b[t], delta[t], false};
        nc.exact = nc.dim - nc.rank_out == nc.rank_in;
        for (auto& node : {nq, nu, nc}) {
            rep.ok = rep.ok && node.exact;
            rep.nodes.push_back(node);
        }
    }
    if (const CriticalOrbit* theta = data.reducible()) {
        for (int e = lo; e + 1 <= hi; ++e) {
            if (e % 2 != 0 || e < theta->index) continue;
            LesRelation r;
            r.k = e / 2;
            r.lhs = static_cast<long>(hc.rank(e)) - static_cast<long>(hc.rank(e + 1));
            r.rhs = static_cast<long>(hu.rank(e)) - static_cast<long>(hu.rank(e + 1)) - 1;
            r.holds = r.lhs == r.rhs;
            rep.ok = rep.ok && r.holds;
            rep.relations.push_back(r);
        }
    }
    return rep;
}

ExactSequenceReport long_exact_sequence(const FloerData& data, TruncationPolicy policy)
{
    ExactSequenceReport rep = exact_sequence_report(data, policy);
    for (const auto& node : rep.nodes)
        if (!node.exact)
            throw ExactnessFailureError("long exact sequence fails at " + node.space + " node of degree " +
                                        std::to_string(node.degree));
    for (const auto& r : rep.relations)
        if (!r.holds)
            throw ExactnessFailureError("dimension relation fails at degree " + std::to_string(2 * r.k));
    return rep;
}

std::vector<Rational> plain_coordinates(const FloerData& data, const Cycle& z)
{
    auto ids = data.free_at_index(z.degree);
    std::vector<Rational> x(ids.size(), 0);
    for (const auto& [id, c] : z.coefficients) {
        auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end())
            throw NonCycleError("cycle coefficient " + id + " is not a free orbit of index " + std::to_string(z.degree));
        x[it - ids.begin()] = c;
    }
    return x;
}

GenVector theta_cycle(const FloerData& data, int k)
{
    const CriticalOrbit* theta = data.reducible();
    if (!theta) throw ConstraintError("no reducible orbit");
    GenVector out;
    add_term(out, {GenKind::theta, theta->id, k}, 1);
    std::map<std::string, Rational> w;
    for (const auto& [c, val] : data.coeffs().u) w[c] = val;
    for (int i = 0; !w.empty(); ++i) {
        std::map<std::string, Rational> next;
        for (const auto& [e, val] : w) {
            add_term(out, {GenKind::eta, e, k + 1 + i}, val);
            for (const auto& [f, mef] : data.m_from(e)) next[f] += val * mef;
        }
        std::erase_if(next, [](const auto& p) { return p.second == 0; });
        w = std::move(next);
    }
    return out;
}

Rational delta_closed_form(const FloerData& data, const Cycle& z)
{
    Rational total = 0;
    std::map<std::string, Rational> w(z.coefficients.begin(), z.coefficients.end());
    while (!w.empty()) {
        std::map<std::string, Rational> next;
        for (const auto& [a, x] : w) {
            total += x * data.v(a);
            for (const auto& [c, mac] : data.m_from(a)) next[c] += x * mac;
        }
        std::erase_if(next, [](const auto& p) { return p.second == 0; });
        w = std::move(next);
    }
    return total;
}

DeltaResult connecting_delta(const FloerData& data, const Cycle& z, TruncationPolicy policy)
{
    require_admissible(data);
    const CriticalOrbit* theta = data.reducible();
    if (!theta) throw ConstraintError("connecting map needs a reducible orbit");
    auto x = plain_coordinates(data, z);
    ChainComplex plain = build_nonequivariant(data);
    if (!is_cycle(plain, z.degree, x)) throw NonCycleError("input is not a cycle of the non-equivariant complex");

    GenVector r;
    for (const auto& [a, c] : z.coefficients)
        for (const auto& [g, k] : equivariant_boundary(data, EquivariantGenerator{GenKind::eta, a, 0}))
            add_term(r, g, c * k);

    const int bound = (*data.max_index() - *data.min_index()) / 2 + 1;
    DeltaResult out;
    while (true) {
        std::vector<EquivariantGenerator> ones;
        for (const auto& [g, c] : r)
            if (g.kind == GenKind::one) ones.push_back(g);
        if (ones.empty()) break;
        if (out.rounds == bound)
            throw NonTerminationError("chase did not clear the 1-components within " + std::to_string(bound) +
                                      " rounds");
        ++out.rounds;
        std::stable_sort(ones.begin(), ones.end(), [&](const auto& a, const auto& b) {
            int ia = data.index(a.orbit), ib = data.index(b.orbit);
            if (ia != ib) return ia > ib;
            return data.position(a.orbit) < data.position(b.orbit);
        });
        for (const auto& g : ones) {
            auto it = r.find(g);
            if (it == r.end()) continue;
            Rational y = it->second;
            if (g.power + 1 > policy.max_power)
                throw UncertifiedRangeError("chase needs Omega power " + std::to_string(g.power + 1) +
                                            " beyond the truncation " + std::to_string(policy.max_power));
            for (const auto& [h, k] : equivariant_boundary(data, EquivariantGenerator{GenKind::eta, g.orbit, g.power + 1}))
                add_term(r, h, y * k);
        }
    }

    const int offset = z.degree - 1 - theta->index;
    if (offset >= 0 && offset % 2 == 0) {
        out.theta_power = offset / 2;
        auto it = r.find({GenKind::theta, theta->id, *out.theta_power});
        out.coefficient = it == r.end() ? Rational(0) : it->second;
        GenVector expected;
        for (const auto& [g, c] : theta_cycle(data, *out.theta_power)) add_term(expected, g, c * out.coefficient);
        if (expected != r) throw std::logic_error("chase ended away from the corrected theta cycle");
    } else {
        out.coefficient = 0;
        if (!r.empty()) throw std::logic_error("chase left terms in a degree where the target group vanishes");
    }
    out.representative = std::move(r);
    return out;
}

namespace {

struct Filtered {
    ChainComplex complex;
    std::map<int, std::vector<int>> filtration;  // degree -> per-slot filtration index
};

Filtered filtered_complex(const FloerData& data, TruncationPolicy policy, Filtration which)
{
    Filtered f;
    if (which == Filtration::plain) {
        f.complex = build_nonequivariant(data);
        DegreeRange r = f.complex.degrees();
        for (int d = r.lo; d <= r.hi; ++d) f.filtration[d].assign(f.complex.dim(d), d);
        return f;
    }
    std::vector<EquivariantGenerator> gens;
    if (which == Filtration::q) {
        f.complex = q_complex(data, policy);
        gens = q_generators(data, policy);
    } else {
        f.complex = build_equivariant(data, policy);
        gens = equivariant_generators(data, policy.max_power);
    }
    for (const auto& [d, list] : by_degree(data, gens))
        for (const auto& g : list) f.filtration[d].push_back(data.index(g.orbit));
    return f;
}

SparseMatrix restrict_block(const SparseMatrix& m, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols)
{
    SparseMatrix out(rows.size(), cols.size());
    std::map<std::size_t, std::size_t> rpos;
    for (std::size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = i;
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, v] : m.column(cols[j]))
            if (auto it = rpos.find(r); it != rpos.end()) out.add(it->second, j, v);
    return out;
}

}  // namespace

std::pair<SpectralPage, SpectralPage> spectral_pages(const FloerData& data, TruncationPolicy policy, Filtration which)
{
    Filtered f = filtered_complex(data, policy, which);
    SpectralPage e0, e1;
    e0.page = 0;
    e1.page = 1;
    e0.certified = e1.certified = f.complex.certified();

    auto slots_of = [&](int d, int k) {
        std::vector<std::size_t> out;
        auto it = f.filtration.find(d);
        if (it == f.filtration.end()) return out;
        for (std::size_t i = 0; i < it->second.size(); ++i)
            if (it->second[i] == k) out.push_back(i);
        return out;
    };

    std::vector<std::pair<int, int>> cells;  // (k, d)
    for (const auto& [d, ks] : f.filtration) {
        std::set<int> seen(ks.begin(), ks.end());
        for (int k : seen) {
            e0.entries[{k, d - k}] = slots_of(d, k).size();
            cells.emplace_back(k, d);
        }
    }
    // rank of d0 from (k, d) to (k, d - 1), and from (k, d + 1) into (k, d)
    std::vector<std::size_t> out_rank(cells.size()), in_rank(cells.size());
    const long n = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < n; ++t) {
        auto [k, d] = cells[t];
        auto here = slots_of(d, k);
        out_rank[t] = rank(restrict_block(f.complex.boundary(d), slots_of(d - 1, k), here));
        in_rank[t] = rank(restrict_block(f.complex.boundary(d + 1), here, slots_of(d + 1, k)));
    }
    for (long t = 0; t < n; ++t) {
        auto [k, d] = cells[t];
        std::size_t dim = e0.entries[{k, d - k}];
        std::size_t h = dim - out_rank[t] - in_rank[t];
        if (h) e1.entries[{k, d - k}] = h;
    }
    std::erase_if(e0.entries, [](const auto& p) { return p.second == 0; });
    return {e0, e1};
}

Cycle cycle_from_json(const nlohmann::json& j, const std::string& path)
{
    using namespace json_util;
    Cycle z;
    z.degree = static_cast<int>(as_int(field(j, "degree", path), path + ".degree"));
    const auto& coeffs = field(j, "coefficients", path);
    if (!coeffs.is_object()) throw ParseError(path + ".coefficients: expected an object");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
        Rational c = rational_from_json(it.value(), path + ".coefficients." + it.key());
        if (c != 0) z.coefficients[it.key()] = c;
    }
    return z;
}

nlohmann::ordered_json to_json(const ExactSequenceReport& r)
{
    nlohmann::ordered_json j;
    j["certified"] = range_json(r.range);
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : r.nodes) {
        nlohmann::ordered_json e;
        e["degree"] = n.degree;
        e["space"] = n.space;
        e["dim"] = n.dim;
        e["rank_in"] = n.rank_in;
        e["rank_out"] = n.rank_out;
        e["exact"] = n.exact;
        j["nodes"].push_back(e);
    }
    j["relations"] = nlohmann::ordered_json::array();
    for (const auto& rel : r.relations) {
        nlohmann::ordered_json e;
        e["k"] = rel.k;
        e["plain_difference"] = rel.lhs;
        e["equivariant_difference_minus_one"] = rel.rhs;
        e["holds"] = rel.holds;
        j["relations"].push_back(e);
    }
    j["ok"] = r.ok;
    return j;
}

nlohmann::ordered_json to_json(const SpectralPage& p)
{
    nlohmann::ordered_json j;
    j["page"] = p.page;
    j["certified"] = range_json(p.certified);
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& [kl, rank] : p.entries) {
        if (!p.certified.contains(kl.first + kl.second)) continue;
        j["entries"].push_back({{"k", kl.first}, {"l", kl.second}, {"rank", rank}});
    }
    return j;
}

}  // namespace swf
