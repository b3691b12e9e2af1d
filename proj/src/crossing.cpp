#include "swf/crossing.hpp"

#include "crossing_model.hpp"
#include "swf/errors.hpp"
#include "swf/json_util.hpp"
#include "swf/reports_json.hpp"

#include <algorithm>
#include <functional>
#include <memory>

namespace swf {

namespace detail {

Affine operator*(const Affine& a, const Affine& b)
{
    if (!a.is_constant() && !b.is_constant()) throw std::logic_error("product of two unknown coefficients");
    const Affine& form = a.is_constant() ? b : a;
    const Rational& k = a.is_constant() ? a.constant : b.constant;
    Affine out;
    if (k == 0) return out;
    out.constant = form.constant * k;
    for (const auto& [v, c] : form.terms) out.terms[v] = c * k;
    return out;
}

void add_form(FormVector& x, const EquivariantGenerator& g, const Affine& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = x.emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) x.erase(it);
    }
}

FormVector constant_vector(const GenVector& v)
{
    FormVector out;
    for (const auto& [g, c] : v) out.emplace(g, Affine(c));
    return out;
}

GenVector evaluate(const FormVector& x)
{
    GenVector out;
    for (const auto& [g, f] : x) {
        if (!f.is_constant()) throw std::logic_error("unresolved coefficient");
        add_term(out, g, f.constant);
    }
    return out;
}

namespace {

template <class V>
std::map<OrbitPair, Affine> forms(const std::map<OrbitPair, V>& m)
{
    std::map<OrbitPair, Affine> out;
    for (const auto& [k, v] : m) out.emplace(k, Affine(Rational(v)));
    return out;
}

template <class V>
std::map<std::string, Affine> forms(const std::map<std::string, V>& m)
{
    std::map<std::string, Affine> out;
    for (const auto& [k, v] : m) out.emplace(k, Affine(Rational(v)));
    return out;
}

template <class F>
void each_from(const std::map<OrbitPair, Affine>& m, const std::string& a, F&& f)
{
    for (auto it = m.lower_bound({a, std::string()}); it != m.end() && it->first.first == a; ++it)
        f(it->first.second, it->second);
}

const Affine* find(const std::map<std::string, Affine>& m, const std::string& k)
{
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
}

}  // namespace

Model0 constant_model(const DegreeZeroFamilies& f, const FloerData& src, const FloerData& tgt, int shift)
{
    Model0 out;
    out.src = &src;
    out.tgt = &tgt;
    out.shift = shift;
    out.n = forms(f.n);
    out.m = forms(f.m);
    out.r = forms(f.r);
    out.s = forms(f.s);
    out.theta_eta = forms(f.theta_eta);
    out.one_theta = forms(f.one_theta);
    out.theta_theta = Affine(Rational(f.theta_theta));
    return out;
}

ModelH constant_model(const HomotopyFamilies& f, const FloerData& side)
{
    ModelH out;
    out.side = &side;
    out.n = forms(f.n);
    out.m = forms(f.m);
    out.eta_theta = forms(f.eta_theta);
    out.theta_one = forms(f.theta_one);
    out.theta_eta = forms(f.theta_eta);
    return out;
}

FormVector image(const Model0& f, const EquivariantGenerator& g)
{
    FormVector out;
    const int p = g.power;
    const CriticalOrbit* ttgt = f.tgt->reducible();
    switch (g.kind) {
    case GenKind::eta:
        each_from(f.n, g.orbit, [&](const std::string& b, const Affine& c) { add_form(out, {GenKind::eta, b, p}, c); });
        each_from(f.m, g.orbit, [&](const std::string& b, const Affine& c) { add_form(out, {GenKind::one, b, p}, c); });
        if (const Affine* c = find(f.r, g.orbit)) add_form(out, {GenKind::theta, ttgt->id, p}, *c);
        break;
    case GenKind::one:
        each_from(f.n, g.orbit, [&](const std::string& b, const Affine& c) { add_form(out, {GenKind::one, b, p}, c); });
        if (const Affine* c = find(f.one_theta, g.orbit)) add_form(out, {GenKind::theta, ttgt->id, p}, *c);
        break;
    case GenKind::theta:
        if (p + f.shift >= 0) add_form(out, {GenKind::theta, ttgt->id, p + f.shift}, f.theta_theta);
        for (const auto& [b, c] : f.s) add_form(out, {GenKind::one, b, p}, c);
        for (const auto& [a, c] : f.theta_eta) add_form(out, {GenKind::eta, a, p}, c);
        break;
    }
    return out;
}

FormVector image(const ModelH& f, const EquivariantGenerator& g)
{
    FormVector out;
    const int p = g.power;
    const CriticalOrbit* theta = f.side->reducible();
    switch (g.kind) {
    case GenKind::eta:
        each_from(f.n, g.orbit, [&](const std::string& b, const Affine& c) { add_form(out, {GenKind::eta, b, p}, c); });
        each_from(f.m, g.orbit, [&](const std::string& b, const Affine& c) { add_form(out, {GenKind::one, b, p}, c); });
        if (const Affine* c = find(f.eta_theta, g.orbit)) add_form(out, {GenKind::theta, theta->id, p}, *c);
        break;
    case GenKind::one:
        each_from(f.n, g.orbit,
                  [&](const std::string& b, const Affine& c) { add_form(out, {GenKind::one, b, p}, c * Affine(-1)); });
        break;
    case GenKind::theta:
        for (const auto& [b, c] : f.theta_one) add_form(out, {GenKind::one, b, p}, c);
        for (const auto& [a, c] : f.theta_eta) add_form(out, {GenKind::eta, a, p}, c);
        break;
    }
    return out;
}

namespace {

template <class M>
FormVector apply_vector(const M& f, const FormVector& x)
{
    FormVector out;
    for (const auto& [g, c] : x)
        for (const auto& [h, k] : image(f, g)) add_form(out, h, c * k);
    return out;
}

}  // namespace

FormVector image(const Model0& f, const FormVector& x) { return apply_vector(f, x); }
FormVector image(const ModelH& f, const FormVector& x) { return apply_vector(f, x); }

FormVector boundary(const FloerData& side, const FormVector& x)
{
    FormVector out;
    for (const auto& [g, c] : x)
        for (const auto& [h, k] : equivariant_boundary(side, g)) add_form(out, h, c * Affine(k));
    return out;
}

FormVector subtract(FormVector a, const FormVector& b)
{
    for (const auto& [g, c] : b) add_form(a, g, c * Affine(-1));
    return a;
}

FormVector residual_ID_DI(const Model0& I, const EquivariantGenerator& g)
{
    FormVector dg = constant_vector(equivariant_boundary(*I.src, g));
    FormVector ig;
    for (const auto& [h, c] : image(I, g)) add_form(ig, h, c);
    return subtract(image(I, dg), boundary(*I.tgt, ig));
}

FormVector residual_JD_DJ(const Model0& J, const EquivariantGenerator& g)
{
    return residual_ID_DI(J, g);
}

FormVector residual_homotopy(const Model0& I, const Model0& J, const ModelH& H, const EquivariantGenerator& g)
{
    FormVector out;
    add_form(out, g, Affine(1));
    FormVector ig = image(I, g);
    out = subtract(out, image(J, ig));
    FormVector hg = image(H, g);
    out = subtract(out, boundary(*H.side, hg));
    FormVector dg = constant_vector(equivariant_boundary(*H.side, g));
    out = subtract(out, image(H, dg));
    return out;
}

std::vector<IdentityForm> identity_forms(const FloerData& side0, const FloerData& side1, int sf_c, const Model0& I,
                                         const Model0& J)
{
    std::vector<IdentityForm> out;
    if (sf_c != -1) return out;
    const int t0 = side0.reducible()->index;

    // C1: sum sJ(a) v0(a) + sum I.theta_eta(a') rJ(a') = 1
    Affine c1(-1);
    for (const auto& [a, c] : J.s)
        if (side0.has_orbit(a)) c1 += c * Affine(Rational(side0.v(a)));
    for (const auto& [a, c] : I.theta_eta)
        if (const Affine* r = find(J.r, a)) c1 += c * *r;
    out.push_back({"C1", "", c1});

    // C2 at each a3 of index theta0 + 3: sum m0(a3,a1) v0(a1) - sum n0(a3,a2) rI(a2) = 0
    for (const auto& a3 : side0.free_at_index(t0 + 3)) {
        Affine f;
        for (const auto& [a1, k] : side0.m_from(a3)) f += Affine(Rational(k) * side0.v(a1));
        for (const auto& [a2, k] : side0.n_from(a3))
            if (const Affine* r = find(I.r, a2)) f += Affine(Rational(-k)) * *r;
        out.push_back({"C2", a3, f});
    }
    // C3 at each c' of index theta0 - 2 on side1: sum sI(a') n1(a',c') - sum I.theta_eta(a') m1(a',c') = 0
    for (const auto& c : side1.free_at_index(t0 - 2)) {
        Affine f;
        for (const auto& [a, s] : I.s) f += s * Affine(Rational(side1.n(a, c)));
        for (const auto& [a, e] : I.theta_eta) f += e * Affine(Rational(-side1.m(a, c)));
        out.push_back({"C3", c, f});
    }
    return out;
}

}  // namespace detail

using namespace detail;

namespace {

std::string key_name(const OrbitPair& p) { return "(" + p.first + "," + p.second + ")"; }

const CriticalOrbit& free_in(const FloerData& side, const std::string& id, const std::string& family,
                             const std::string& key)
{
    if (!side.has_orbit(id)) throw IndexConstraintError(family + " key " + key + " names unknown orbit " + id);
    const CriticalOrbit& o = side.orbit(id);
    if (o.reducible) throw IndexConstraintError(family + " key " + key + " uses the reducible orbit " + id);
    return o;
}

void expect(bool ok, const std::string& family, const std::string& key, const std::string& rule)
{
    if (!ok) throw IndexConstraintError(family + " key " + key + " violates " + rule);
}

void check_degree_zero(const DegreeZeroFamilies& f, const FloerData& src, const FloerData& tgt, const std::string& name)
{
    const int ts = src.reducible()->index;
    const int tt = tgt.reducible()->index;
    for (const auto& [k, v] : f.n) {
        int a = free_in(src, k.first, name + ".n", key_name(k)).index;
        int b = free_in(tgt, k.second, name + ".n", key_name(k)).index;
        expect(a == b, name + ".n", key_name(k), "mu(a) = mu(a')");
    }
    for (const auto& [k, v] : f.m) {
        int a = free_in(src, k.first, name + ".m", key_name(k)).index;
        int b = free_in(tgt, k.second, name + ".m", key_name(k)).index;
        expect(a - b == 1, name + ".m", key_name(k), "mu(a) - mu(b') = 1");
    }
    for (const auto& [k, v] : f.r)
        expect(free_in(src, k, name + ".r", k).index == tt, name + ".r", k, "mu(a) = mu(theta_target)");
    for (const auto& [k, v] : f.s)
        expect(ts - free_in(tgt, k, name + ".s", k).index == 1, name + ".s", k, "mu(theta_source) - mu(b') = 1");
    for (const auto& [k, v] : f.theta_eta)
        expect(free_in(tgt, k, name + ".theta_eta", k).index == ts, name + ".theta_eta", k,
               "mu(a') = mu(theta_source)");
    for (const auto& [k, v] : f.one_theta)
        expect(free_in(src, k, name + ".one_theta", k).index + 1 == tt, name + ".one_theta", k,
               "mu(a) + 1 = mu(theta_target)");
}

void check_homotopy(const HomotopyFamilies& f, const FloerData& side)
{
    const int t = side.reducible()->index;
    for (const auto& [k, v] : f.n) {
        int a = free_in(side, k.first, "H.n", key_name(k)).index;
        int b = free_in(side, k.second, "H.n", key_name(k)).index;
        expect(a - b == -1, "H.n", key_name(k), "mu(a) - mu(b) = -1");
    }
    for (const auto& [k, v] : f.m) {
        int a = free_in(side, k.first, "H.m", key_name(k)).index;
        int b = free_in(side, k.second, "H.m", key_name(k)).index;
        expect(a == b, "H.m", key_name(k), "mu(a) = mu(c)");
    }
    for (const auto& [k, v] : f.eta_theta)
        expect(free_in(side, k, "H.eta_theta", k).index - t == -1, "H.eta_theta", k, "mu(a) - mu(theta) = -1");
    for (const auto& [k, v] : f.theta_one)
        expect(free_in(side, k, "H.theta_one", k).index == t, "H.theta_one", k, "mu(theta) = mu(b)");
    for (const auto& [k, v] : f.theta_eta)
        expect(free_in(side, k, "H.theta_eta", k).index == t + 1, "H.theta_eta", k, "mu(a) = mu(theta) + 1");
}

struct Models {
    Model0 I, J;
    ModelH H;
};

Models models_of(const CrossingData& cd)
{
    if (!cd.maps) throw ConstraintError("crossing data carries no I, J, H families");
    check_crossing(cd);
    return {constant_model(cd.maps->I, cd.side0, cd.side1, theta_shift_I(cd)),
            constant_model(cd.maps->J, cd.side1, cd.side0, theta_shift_J(cd)), constant_model(cd.maps->H, cd.side0)};
}

ChainMap map_matrix(const FloerData& src, const FloerData& tgt, int src_power, int tgt_power, int degree,
                    const std::function<GenVector(const EquivariantGenerator&)>& f)
{
    auto s = std::make_shared<const ChainComplex>(build_equivariant(src, {src_power}));
    auto t = std::make_shared<const ChainComplex>(build_equivariant(tgt, {tgt_power}));
    auto sb = equivariant_basis(src, {src_power});
    auto tb = equivariant_basis(tgt, {tgt_power});
    std::map<EquivariantGenerator, std::size_t> tpos;
    for (const auto& [d, list] : tb)
        for (std::size_t i = 0; i < list.size(); ++i) tpos[list[i]] = i;
    std::map<int, SparseMatrix> blocks;
    for (const auto& [d, list] : sb) {
        SparseMatrix m(t->dim(d + degree), list.size());
        for (std::size_t j = 0; j < list.size(); ++j)
            for (const auto& [h, c] : f(list[j])) m.add(tpos.at(h), j, c);
        blocks.emplace(d, std::move(m));
    }
    return ChainMap(s, t, degree, std::move(blocks));
}

Integer max_numerator(const FormVector& x, Integer best)
{
    for (const auto& [g, c] : evaluate(x)) {
        Integer a = abs(c.get_num());
        if (a > best) best = a;
    }
    return best;
}

}  // namespace

void check_crossing(const CrossingData& cd)
{
    const CriticalOrbit* t0 = cd.side0.reducible();
    const CriticalOrbit* t1 = cd.side1.reducible();
    if (!t0 || !t1) throw ConstraintError("both sides of a crossing need a reducible orbit");
    if (t0->index != 0) throw ConstraintError("side0 reducible must have index 0, got " + std::to_string(t0->index));
    if (t1->index != -2 * cd.sf_c)
        throw ConstraintError("side1 reducible must have index -2*sf_c = " + std::to_string(-2 * cd.sf_c) + ", got " +
                              std::to_string(t1->index));
    if (!cd.maps) return;
    check_degree_zero(cd.maps->I, cd.side0, cd.side1, "I");
    check_degree_zero(cd.maps->J, cd.side1, cd.side0, "J");
    check_homotopy(cd.maps->H, cd.side0);
}

int theta_shift_I(const CrossingData& cd) { return (cd.side0.reducible()->index - cd.side1.reducible()->index) / 2; }
int theta_shift_J(const CrossingData& cd) { return -theta_shift_I(cd); }

GenVector apply_I(const CrossingData& cd, const EquivariantGenerator& g) { return evaluate(image(models_of(cd).I, g)); }
GenVector apply_J(const CrossingData& cd, const EquivariantGenerator& g) { return evaluate(image(models_of(cd).J, g)); }
GenVector apply_H(const CrossingData& cd, const EquivariantGenerator& g) { return evaluate(image(models_of(cd).H, g)); }

ChainMap build_I(const CrossingData& cd, TruncationPolicy policy)
{
    Models md = models_of(cd);
    const int cap = policy.max_power + std::abs(cd.sf_c);
    return map_matrix(cd.side0, cd.side1, policy.max_power, cap, 0,
                      [&](const EquivariantGenerator& g) { return evaluate(image(md.I, g)); });
}

ChainMap build_J(const CrossingData& cd, TruncationPolicy policy)
{
    Models md = models_of(cd);
    const int cap = policy.max_power + std::abs(cd.sf_c);
    return map_matrix(cd.side1, cd.side0, policy.max_power, cap, 0,
                      [&](const EquivariantGenerator& g) { return evaluate(image(md.J, g)); });
}

ChainMap build_H(const CrossingData& cd, TruncationPolicy policy)
{
    Models md = models_of(cd);
    return map_matrix(cd.side0, cd.side0, policy.max_power, policy.max_power, 1,
                      [&](const EquivariantGenerator& g) { return evaluate(image(md.H, g)); });
}

CrossingReport verify_crossing(const CrossingData& cd, TruncationPolicy policy)
{
    require_admissible(cd.side0);
    require_admissible(cd.side1);
    Models md = models_of(cd);
    CrossingReport rep;
    auto g0 = equivariant_generators(cd.side0, policy.max_power);
    auto g1 = equivariant_generators(cd.side1, policy.max_power);

    std::vector<Integer> r1(g0.size()), r3(g0.size()), r2(g1.size());
    const long n0 = static_cast<long>(g0.size()), n1 = static_cast<long>(g1.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n0 + n1; ++k) {
        if (k < n0) {
            r1[k] = max_numerator(residual_ID_DI(md.I, g0[k]), 0);
            r3[k] = max_numerator(residual_homotopy(md.I, md.J, md.H, g0[k]), 0);
        } else {
            r2[k - n0] = max_numerator(residual_JD_DJ(md.J, g1[k - n0]), 0);
        }
    }
    for (const auto& x : r1) rep.residual_ID_DI = std::max(rep.residual_ID_DI, x);
    for (const auto& x : r2) rep.residual_JD_DJ = std::max(rep.residual_JD_DJ, x);
    for (const auto& x : r3) rep.residual_homotopy = std::max(rep.residual_homotopy, x);

    for (const auto& f : identity_forms(cd.side0, cd.side1, cd.sf_c, md.I, md.J)) {
        if (!f.form.is_constant()) throw std::logic_error("identity form with unknowns");
        IdentityCheck& c = f.name == "C1" ? rep.c1 : (f.name == "C2" ? rep.c2 : rep.c3);
        c.applicable = true;
        if (f.name == "C1") {
            c.value = Rational(f.form.constant + 1).get_num();
        } else {
            Integer a = abs(f.form.constant.get_num());
            if (a > c.value) c.value = a;
        }
        if (f.form.constant != 0) c.holds = false;
    }
    rep.ok = rep.residual_ID_DI == 0 && rep.residual_JD_DJ == 0 && rep.residual_homotopy == 0 && rep.c1.holds &&
             rep.c2.holds && rep.c3.holds;
    return rep;
}

long euler_from_equivariant(const HomologyTable& table, int theta_index)
{
    const DegreeRange cert = table.certified;
    if (cert.empty()) throw NoTailError("empty certified range");
    auto expected = [&](int d) -> std::size_t { return (d - theta_index) % 2 == 0 ? 1 : 0; };
    if (table.rank(cert.hi) != expected(cert.hi)) throw NoTailError("ranks at the top of the certified range do not follow the tail pattern");
    int s = cert.hi;
    while (s - 1 >= cert.lo && table.rank(s - 1) == expected(s - 1)) --s;
    // the tail must contain a full (even, odd) pair
    int first_even = (s - theta_index) % 2 == 0 ? s : s + 1;
    if (first_even + 1 > cert.hi)
        throw NoTailError("tail is not visible in the certified range [" + std::to_string(cert.lo) + ", " +
                          std::to_string(cert.hi) + "]");
    if (first_even < theta_index) first_even = theta_index + ((first_even - theta_index) % 2 == 0 ? 0 : 1);

    std::optional<long> result;
    for (int e = first_even; e + 1 <= cert.hi; e += 2) {
        if (e < theta_index) continue;
        const long M = (e - theta_index) / 2;
        long sum = 0;
        for (const auto& [d, k] : table.ranks)
            if (d <= e + 1) sum += ((d - theta_index) % 2 == 0 ? 1 : -1) * static_cast<long>(k);
        long value = sum - (M + 1);
        if (result && *result != value) throw std::logic_error("Euler sum depends on the cut-off");
        result = value;
    }
    if (!result) throw NoTailError("no cut-off at or above the reducible index inside the tail");
    return *result;
}

WallcrossReport wallcross_check(const CrossingData& cd, TruncationPolicy policy)
{
    check_crossing(cd);
    WallcrossReport rep;
    rep.sf_c = cd.sf_c;
    rep.ranks0 = equivariant_homology(cd.side0, policy);
    rep.ranks1 = equivariant_homology(cd.side1, policy);
    rep.casson0 = casson(cd.side0);
    rep.casson1 = casson(cd.side1);
    rep.casson_ok = rep.casson1 == rep.casson0 - cd.sf_c;
    rep.shared = rep.ranks0.certified.intersect(rep.ranks1.certified);
    for (int d = rep.shared.lo; d <= rep.shared.hi; ++d)
        if (rep.ranks0.rank(d) != rep.ranks1.rank(d)) rep.rank_mismatches.push_back(d);
    rep.rank_iso_ok = !rep.shared.empty() && rep.rank_mismatches.empty();
    try {
        rep.euler0 = euler_from_equivariant(rep.ranks0, cd.side0.reducible()->index);
        rep.euler1 = euler_from_equivariant(rep.ranks1, cd.side1.reducible()->index);
    } catch (const NoTailError&) {
        rep.euler0.reset();
        rep.euler1.reset();
    }
    rep.ok = rep.casson_ok && rep.rank_iso_ok;
    return rep;
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void read_pairs(const json& j, const std::string& path, std::map<OrbitPair, long>& out)
{
    using namespace json_util;
    const auto& arr = as_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string q = at(path, i);
        if (!arr[i].is_array() || arr[i].size() != 3) throw ParseError(q + ": expected [string, string, int]");
        OrbitPair k{as_string(arr[i][0], q + "[0]"), as_string(arr[i][1], q + "[1]")};
        if (out.count(k)) throw ConstraintError(path + " key " + key_name(k) + " repeated");
        long v = as_int(arr[i][2], q + "[2]");
        if (v != 0) out[k] = v;
    }
}

void read_singles(const json& j, const std::string& path, std::map<std::string, long>& out)
{
    using namespace json_util;
    const auto& arr = as_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string q = at(path, i);
        if (!arr[i].is_array() || arr[i].size() != 2) throw ParseError(q + ": expected [string, int]");
        std::string k = as_string(arr[i][0], q + "[0]");
        if (out.count(k)) throw ConstraintError(path + " key " + k + " repeated");
        long v = as_int(arr[i][1], q + "[1]");
        if (v != 0) out[k] = v;
    }
}

const std::vector<std::string> kZeroKeys = {"n", "m", "r", "s", "theta_eta", "one_theta", "theta_theta"};
const std::vector<std::string> kHKeys = {"n", "m", "eta_theta", "theta_one", "theta_eta"};

void reject_unknown(const json& j, const std::string& path, const std::vector<std::string>& known)
{
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw IndexConstraintError(path + " has unknown coefficient family " + it.key());
}

DegreeZeroFamilies read_zero(const json& j, const std::string& path, long default_theta)
{
    reject_unknown(j, path, kZeroKeys);
    DegreeZeroFamilies f;
    f.theta_theta = default_theta;
    if (auto p = json_util::optional_field(j, "n", path)) read_pairs(*p, path + ".n", f.n);
    if (auto p = json_util::optional_field(j, "m", path)) read_pairs(*p, path + ".m", f.m);
    if (auto p = json_util::optional_field(j, "r", path)) read_singles(*p, path + ".r", f.r);
    if (auto p = json_util::optional_field(j, "s", path)) read_singles(*p, path + ".s", f.s);
    if (auto p = json_util::optional_field(j, "theta_eta", path)) read_singles(*p, path + ".theta_eta", f.theta_eta);
    if (auto p = json_util::optional_field(j, "one_theta", path)) read_singles(*p, path + ".one_theta", f.one_theta);
    if (auto p = json_util::optional_field(j, "theta_theta", path))
        f.theta_theta = json_util::as_int(*p, path + ".theta_theta");
    return f;
}

HomotopyFamilies read_h(const json& j, const std::string& path)
{
    reject_unknown(j, path, kHKeys);
    HomotopyFamilies f;
    if (auto p = json_util::optional_field(j, "n", path)) read_pairs(*p, path + ".n", f.n);
    if (auto p = json_util::optional_field(j, "m", path)) read_pairs(*p, path + ".m", f.m);
    if (auto p = json_util::optional_field(j, "eta_theta", path)) read_singles(*p, path + ".eta_theta", f.eta_theta);
    if (auto p = json_util::optional_field(j, "theta_one", path)) read_singles(*p, path + ".theta_one", f.theta_one);
    if (auto p = json_util::optional_field(j, "theta_eta", path)) read_singles(*p, path + ".theta_eta", f.theta_eta);
    return f;
}

ordered_json pairs_json(const std::map<OrbitPair, long>& m)
{
    auto arr = ordered_json::array();
    for (const auto& [k, v] : m) arr.push_back({k.first, k.second, v});
    return arr;
}

ordered_json singles_json(const std::map<std::string, long>& m)
{
    auto arr = ordered_json::array();
    for (const auto& [k, v] : m) arr.push_back({k, v});
    return arr;
}

ordered_json zero_json(const DegreeZeroFamilies& f)
{
    ordered_json j;
    j["n"] = pairs_json(f.n);
    j["m"] = pairs_json(f.m);
    j["r"] = singles_json(f.r);
    j["s"] = singles_json(f.s);
    j["theta_eta"] = singles_json(f.theta_eta);
    j["one_theta"] = singles_json(f.one_theta);
    j["theta_theta"] = f.theta_theta;
    return j;
}

ordered_json h_json(const HomotopyFamilies& f)
{
    ordered_json j;
    j["n"] = pairs_json(f.n);
    j["m"] = pairs_json(f.m);
    j["eta_theta"] = singles_json(f.eta_theta);
    j["theta_one"] = singles_json(f.theta_one);
    j["theta_eta"] = singles_json(f.theta_eta);
    return j;
}

ordered_json check_json(const IdentityCheck& c)
{
    ordered_json j;
    j["applicable"] = c.applicable;
    j["value"] = integer_json(c.value);
    j["holds"] = c.holds;
    return j;
}

}  // namespace

CrossingData crossing_from_json(const nlohmann::json& j, const std::string& path)
{
    using namespace json_util;
    CrossingData cd;
    if (auto p = optional_field(j, "label", path)) cd.label = as_string(*p, path + ".label");
    cd.side0 = floer_from_json(field(j, "side0", path), path + ".side0");
    cd.side1 = floer_from_json(field(j, "side1", path), path + ".side1");
    cd.sf_c = static_cast<int>(as_int(field(j, "sf_c", path), path + ".sf_c"));
    const json* ji = optional_field(j, "I", path);
    const json* jj = optional_field(j, "J", path);
    const json* jh = optional_field(j, "H", path);
    if (ji || jj || jh) {
        if (!ji || !jj || !jh) throw ParseError(path + ": I, J and H must be given together");
        CrossingMaps maps;
        maps.I = read_zero(*ji, path + ".I", 1);
        maps.J = read_zero(*jj, path + ".J", cd.sf_c == 0 ? 1 : 0);
        maps.H = read_h(*jh, path + ".H");
        cd.maps = maps;
    }
    check_crossing(cd);
    return cd;
}

nlohmann::ordered_json crossing_to_json(const CrossingData& cd)
{
    ordered_json j;
    j["label"] = cd.label;
    j["side0"] = floer_to_json(cd.side0);
    j["side1"] = floer_to_json(cd.side1);
    j["sf_c"] = cd.sf_c;
    if (cd.maps) {
        j["I"] = zero_json(cd.maps->I);
        j["J"] = zero_json(cd.maps->J);
        j["H"] = h_json(cd.maps->H);
    }
    return j;
}

CrossingData parse_crossing(const std::string& bytes)
{
    return crossing_from_json(json_util::parse_bytes(bytes));
}

std::string serialize_crossing(const CrossingData& cd)
{
    return crossing_to_json(cd).dump();
}

nlohmann::ordered_json to_json(const CrossingReport& r)
{
    ordered_json j;
    j["residual_ID_DI"] = integer_json(r.residual_ID_DI);
    j["residual_JD_DJ"] = integer_json(r.residual_JD_DJ);
    j["residual_homotopy"] = integer_json(r.residual_homotopy);
    j["identity_checks"] = {{"C1", check_json(r.c1)}, {"C2", check_json(r.c2)}, {"C3", check_json(r.c3)}};
    j["ok"] = r.ok;
    return j;
}

nlohmann::ordered_json to_json(const WallcrossReport& r)
{
    ordered_json j;
    j["sf_c"] = r.sf_c;
    j["casson"] = {r.casson0, r.casson1};
    j["casson_ok"] = r.casson_ok;
    j["shared_certified"] = range_json(r.shared);
    j["rank_mismatches"] = r.rank_mismatches;
    j["rank_iso_ok"] = r.rank_iso_ok;
    j["ranks"] = {{"side0", to_json(r.ranks0)}, {"side1", to_json(r.ranks1)}};
    ordered_json e = ordered_json::array();
    e.push_back(r.euler0 ? ordered_json(*r.euler0) : ordered_json(nullptr));
    e.push_back(r.euler1 ? ordered_json(*r.euler1) : ordered_json(nullptr));
    j["euler_from_ranks"] = e;
    j["ok"] = r.ok;
    return j;
}

}  // namespace swf
