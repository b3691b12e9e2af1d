#include "crossing_model.hpp"
#include "swf/errors.hpp"
#include "swf/linalg.hpp"

#include <algorithm>
#include <random>

namespace swf {

using namespace detail;

namespace {

using Rng = std::mt19937_64;

struct Unknowns {
    std::vector<std::string> names;
    Affine fresh(const std::string& name)
    {
        names.push_back(name);
        return Affine::variable(names.size() - 1);
    }
};

// Symbolic I (side0 -> side1) with every index-admissible family key unknown; theta -> theta pinned to 1.
Model0 unknown_I(const FloerData& src, const FloerData& tgt, int shift, Unknowns& u)
{
    Model0 f;
    f.src = &src;
    f.tgt = &tgt;
    f.shift = shift;
    f.theta_theta = Affine(1);
    const int ts = src.reducible()->index;
    const int tt = tgt.reducible()->index;
    for (const auto& a : src.free_orbits()) {
        for (const auto& b : tgt.free_at_index(a.index)) f.n[{a.id, b}] = u.fresh("I.n");
        for (const auto& b : tgt.free_at_index(a.index - 1)) f.m[{a.id, b}] = u.fresh("I.m");
        if (a.index == tt) f.r[a.id] = u.fresh("I.r");
        if (a.index + 1 == tt) f.one_theta[a.id] = u.fresh("I.one_theta");
    }
    for (const auto& b : tgt.free_at_index(ts - 1)) f.s[b] = u.fresh("I.s");
    for (const auto& a : tgt.free_at_index(ts)) f.theta_eta[a] = u.fresh("I.theta_eta");
    return f;
}

ModelH unknown_H(const FloerData& side, Unknowns& u)
{
    ModelH f;
    f.side = &side;
    const int t = side.reducible()->index;
    for (const auto& a : side.free_orbits()) {
        for (const auto& b : side.free_at_index(a.index + 1)) f.n[{a.id, b}] = u.fresh("H.n");
        for (const auto& c : side.free_at_index(a.index)) f.m[{a.id, c}] = u.fresh("H.m");
        if (a.index == t - 1) f.eta_theta[a.id] = u.fresh("H.eta_theta");
    }
    for (const auto& b : side.free_at_index(t)) f.theta_one[b] = u.fresh("H.theta_one");
    for (const auto& a : side.free_at_index(t + 1)) f.theta_eta[a] = u.fresh("H.theta_eta");
    return f;
}

void collect(const FormVector& x, std::vector<SparseVector>& rows, std::vector<Rational>& rhs)
{
    for (const auto& [g, f] : x) {
        if (f.is_constant()) {
            if (f.constant != 0) {
                rows.emplace_back();
                rhs.push_back(-f.constant);
            }
            continue;
        }
        SparseVector row(f.terms.begin(), f.terms.end());
        rows.push_back(std::move(row));
        rhs.push_back(-f.constant);
    }
}

Rational value(const Affine& f, const std::vector<Rational>& x)
{
    Rational out = f.constant;
    for (const auto& [v, c] : f.terms) out += c * x[v];
    return out;
}

long to_count(const Rational& q)
{
    if (!is_integral(q) || !q.get_num().fits_slong_p()) throw GenerationFailure("non-integral crossing coefficient");
    return q.get_num().get_si();
}

template <class K>
std::map<K, long> numeric(const std::map<K, Affine>& m, const std::vector<Rational>& x)
{
    std::map<K, long> out;
    for (const auto& [k, f] : m) {
        long c = to_count(value(f, x));
        if (c != 0) out[k] = c;
    }
    return out;
}

}  // namespace

CrossingMaps solve_crossing_maps(const FloerData& side0, const FloerData& side1, int sf_c,
                                 const DegreeZeroFamilies& J, std::uint64_t seed, int max_power)
{
    CrossingData shell{"", side0, side1, sf_c, std::nullopt};
    check_crossing(shell);
    const int shift = theta_shift_I(shell);

    Unknowns u;
    Model0 mi = unknown_I(side0, side1, shift, u);
    ModelH mh = unknown_H(side0, u);
    Model0 mj = constant_model(J, side1, side0, -shift);

    for (const auto& g : equivariant_generators(side1, max_power))
        if (!residual_JD_DJ(mj, g).empty()) throw GenerationFailure("supplied J is not a chain map at " + label(g));

    std::vector<SparseVector> rows;
    std::vector<Rational> rhs;
    for (const auto& g : equivariant_generators(side0, max_power)) {
        collect(residual_ID_DI(mi, g), rows, rhs);
        collect(residual_homotopy(mi, mj, mh, g), rows, rhs);
    }
    for (const auto& f : identity_forms(side0, side1, sf_c, mi, mj)) collect({{EquivariantGenerator{}, f.form}}, rows, rhs);

    auto sol = solve_affine(rows, rhs, u.names.size());
    if (!sol) throw GenerationFailure("crossing identities are inconsistent for the supplied J");

    Rng rng(seed);
    std::vector<Rational> x = sol->particular;
    auto integral = [&] { return std::all_of(x.begin(), x.end(), is_integral); };
    for (int tries = 0; !integral() && tries < 64; ++tries) {
        x = sol->particular;
        const int spread = tries < 32 ? 1 : 2;
        for (const auto& k : sol->kernel) {
            int c = std::uniform_int_distribution<int>(-spread, spread)(rng);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * k[i];
        }
    }
    if (!integral()) throw GenerationFailure("no integral solution for the crossing maps");

    // move off the particular solution so I and H carry more than the forced terms
    auto small = [&](const std::vector<Rational>& y) {
        return std::all_of(y.begin(), y.end(), [](const Rational& q) { return is_integral(q) && abs(q) <= 3; });
    };
    for (int tries = 0; tries < 8 && !sol->kernel.empty(); ++tries) {
        std::vector<Rational> y = x;
        for (const auto& k : sol->kernel) {
            int c = std::uniform_int_distribution<int>(-1, 1)(rng);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * k[i];
        }
        if (small(y)) {
            x = y;
            break;
        }
    }

    CrossingMaps out;
    out.J = J;
    out.I.n = numeric(mi.n, x);
    out.I.m = numeric(mi.m, x);
    out.I.r = numeric(mi.r, x);
    out.I.s = numeric(mi.s, x);
    out.I.theta_eta = numeric(mi.theta_eta, x);
    out.I.one_theta = numeric(mi.one_theta, x);
    out.I.theta_theta = 1;
    out.H.n = numeric(mh.n, x);
    out.H.m = numeric(mh.m, x);
    out.H.eta_theta = numeric(mh.eta_theta, x);
    out.H.theta_one = numeric(mh.theta_one, x);
    out.H.theta_eta = numeric(mh.theta_eta, x);
    return out;
}

namespace {

std::string primed(const std::string& id) { return !id.empty() && id[0] == 'x' ? "y" + id.substr(1) : id + "'"; }

// Free part of a generated datum plus a decoupled reducible at index 0.
FloerData free_part(std::uint64_t seed, GeneratorProfile profile)
{
    profile.with_reducible = false;
    return generate_admissible(seed, profile);
}

struct Extra {
    std::vector<CriticalOrbit> orbits;
    CoefficientSystem coeffs;
};

// Renamed copy of the free orbits of x, a reducible at theta_index, and extra orbits/coefficients.
FloerData assemble(const FloerData& x, bool rename, int theta_index, const Extra& extra, const std::string& label)
{
    auto name = [&](const std::string& id) { return rename ? primed(id) : id; };
    std::vector<CriticalOrbit> orbits;
    for (const auto& o : x.free_orbits()) orbits.push_back({name(o.id), o.index, false});
    orbits.push_back({"theta", theta_index, true});
    for (const auto& o : extra.orbits) orbits.push_back(o);
    CoefficientSystem cs = extra.coeffs;
    for (const auto& [k, c] : x.coeffs().n) cs.n[{name(k.first), name(k.second)}] = c;
    for (const auto& [k, c] : x.coeffs().m) cs.m[{name(k.first), name(k.second)}] = c;
    return FloerData(label, orbits, cs);
}

DegreeZeroFamilies identity_J(const FloerData& x)
{
    DegreeZeroFamilies j;
    for (const auto& o : x.free_orbits()) j.n[{primed(o.id), o.id}] = 1;
    return j;
}

using Dense = std::vector<std::vector<long>>;

Dense identity_matrix(std::size_t n)
{
    Dense d(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

CrossingData same_chamber(std::uint64_t seed, const GeneratorProfile& profile)
{
    GeneratorProfile p = profile;
    p.with_reducible = true;
    FloerData side0 = generate_admissible(seed, p);
    Rng rng(seed ^ 0x5bd1e995ULL);

    // unimodular P per index level: P = E1 E2 ..., Pinv = ... E2^-1 E1^-1
    auto free = side0.free_orbits();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < free.size(); ++i) pos[free[i].id] = i;
    Dense P = identity_matrix(free.size()), Pinv = P;
    std::map<int, std::vector<std::size_t>> levels;
    for (std::size_t i = 0; i < free.size(); ++i) levels[free[i].index].push_back(i);
    for (const auto& [k, ids] : levels) {
        if (ids.size() < 2) continue;
        const int ops = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int t = 0; t < ops; ++t) {
            std::size_t i = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
            std::size_t j = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
            if (i == j) continue;
            const long c = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
            // P <- P (I + c e_ij): column j += c * column i
            for (auto& row : P) row[j] += c * row[i];
            // Pinv <- (I - c e_ij) Pinv: row i -= c * row j
            for (std::size_t col = 0; col < free.size(); ++col) Pinv[i][col] -= c * Pinv[j][col];
        }
    }

    const std::size_t n = free.size();
    auto coeff = [&](const std::map<OrbitPair, long>& m) {
        Dense d(n, std::vector<long>(n, 0));
        for (const auto& [k, c] : m) d[pos.at(k.first)][pos.at(k.second)] = c;
        return d;
    };
    auto mul = [&](const Dense& a, const Dense& b) {
        Dense c(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (a[i][k])
                    for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    Dense n1 = mul(mul(Pinv, coeff(side0.coeffs().n)), P);
    Dense m1 = mul(mul(Pinv, coeff(side0.coeffs().m)), P);

    std::vector<CriticalOrbit> orbits;
    for (const auto& o : free) orbits.push_back({primed(o.id), o.index, false});
    orbits.push_back({"theta", 0, true});
    CoefficientSystem cs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (n1[i][j]) cs.n[{primed(free[i].id), primed(free[j].id)}] = n1[i][j];
            if (m1[i][j]) cs.m[{primed(free[i].id), primed(free[j].id)}] = m1[i][j];
        }
        long v = 0, u = 0;
        for (std::size_t k = 0; k < n; ++k) {
            v += Pinv[i][k] * side0.v(free[k].id);
            u += side0.u(free[k].id) * P[k][i];
        }
        if (v) cs.v[primed(free[i].id)] = v;
        if (u) cs.u[primed(free[i].id)] = u;
    }
    FloerData side1("same chamber image seed=" + std::to_string(seed), orbits, cs);

    DegreeZeroFamilies J;
    J.theta_theta = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (Pinv[i][j]) J.n[{primed(free[i].id), free[j].id}] = Pinv[i][j];

    CrossingData cd{"same chamber seed=" + std::to_string(seed), side0, side1, 0, std::nullopt};
    cd.maps = solve_crossing_maps(side0, side1, 0, J, seed);
    return cd;
}

}  // namespace

CrossingData generate_crossing(std::uint64_t seed, const GeneratorProfile& profile, CrossingKind kind)
{
    if (kind == CrossingKind::same_chamber) return same_chamber(seed, profile);

    FloerData x = free_part(seed, profile);
    const std::string tag = " seed=" + std::to_string(seed);
    DegreeZeroFamilies J = identity_J(x);
    CrossingData cd;
    switch (kind) {
    case CrossingKind::disappear: {
        Extra e0;
        e0.orbits.push_back({"g", 1, false});
        e0.coeffs.v["g"] = 1;
        cd = {"disappear" + tag, assemble(x, false, 0, e0, "before" + tag), assemble(x, true, 2, {}, "after" + tag), -1,
              std::nullopt};
        J.s["g"] = 1;
        J.theta_theta = 0;
        break;
    }
    case CrossingKind::appear: {
        Extra e1;
        e1.orbits.push_back({"g", 0, false});
        e1.coeffs.u["g"] = 1;
        cd = {"appear" + tag, assemble(x, false, 0, {}, "before" + tag), assemble(x, true, 2, e1, "after" + tag), -1,
              std::nullopt};
        J.r["g"] = 1;
        J.theta_theta = 0;
        break;
    }
    case CrossingKind::mirror: {
        Extra e1;
        e1.orbits.push_back({"g", -1, false});
        e1.coeffs.v["g"] = 1;
        cd = {"mirror" + tag, assemble(x, false, 0, {}, "before" + tag), assemble(x, true, -2, e1, "after" + tag), 1,
              std::nullopt};
        J.one_theta["g"] = 1;
        J.theta_theta = 1;
        break;
    }
    case CrossingKind::same_chamber:
        break;
    }
    cd.maps = solve_crossing_maps(cd.side0, cd.side1, cd.sf_c, J, seed);
    return cd;
}

CrossingData generate_double_crossing(std::uint64_t seed, const GeneratorProfile& profile)
{
    FloerData y = free_part(seed, profile);
    const std::string tag = " seed=" + std::to_string(seed);
    Extra e1;
    e1.orbits.push_back({"g", -1, false});
    e1.orbits.push_back({"h", -3, false});
    e1.coeffs.v["h"] = 1;
    e1.coeffs.m[{"g", "h"}] = 1;
    return {"double crossing" + tag, assemble(y, false, 0, {}, "before" + tag), assemble(y, true, -4, e1, "after" + tag),
            2, std::nullopt};
}

}  // namespace swf
