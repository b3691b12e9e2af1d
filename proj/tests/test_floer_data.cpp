#include "support.hpp"

#include <doctest.h>

using namespace swft;

namespace {

// Every coefficient slot that is admissible by index, for perturbation tests.
struct Slot {
    char family;
    std::string a, b;
};

std::vector<Slot> slots(const FloerData& d)
{
    std::vector<Slot> out;
    const CriticalOrbit* t = d.reducible();
    for (const auto& a : d.free_orbits()) {
        for (const auto& b : d.free_at_index(a.index - 1)) out.push_back({'n', a.id, b});
        for (const auto& c : d.free_at_index(a.index - 2)) out.push_back({'m', a.id, c});
        if (t && a.index - t->index == 1) out.push_back({'v', a.id, ""});
        if (t && t->index - a.index == 2) out.push_back({'u', a.id, ""});
    }
    return out;
}

FloerData perturbed(const FloerData& d, const Slot& s, long delta)
{
    CoefficientSystem cs = d.coeffs();
    auto bump = [&](auto& map, const auto& key) {
        long v = map.count(key) ? map.at(key) + delta : delta;
        if (v == 0) map.erase(key);
        else map[key] = v;
    };
    switch (s.family) {
    case 'n': bump(cs.n, OrbitPair{s.a, s.b}); break;
    case 'm': bump(cs.m, OrbitPair{s.a, s.b}); break;
    case 'v': bump(cs.v, s.a); break;
    default: bump(cs.u, s.a); break;
    }
    return FloerData(d.label(), d.orbits(), cs);
}

bool d_squared_zero(const FloerData& d, int n)
{
    return check_d_squared(build_equivariant_unchecked(d, {n})).ok;
}

}  // namespace

TEST_CASE("validate examples")
{
    CHECK(validate(load("ex0.json")).ok);
    CHECK(validate(load("ex1.json")).ok);
    auto rep = validate(load("a1-violation.json"));
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].constraint == "A1");
    CHECK(rep.violations[0].witness == std::vector<std::string>{"a", "c"});
    CHECK(rep.violations[0].residual == 1);
}

TEST_CASE("validate is pure")
{
    for (std::size_t i = 0; i < 20; ++i) {
        auto d = corpus_item(i);
        CHECK(validate(d) == validate(d));
    }
}

TEST_CASE("admissibility identities with the reducible term")
{
    // a(1) -> theta with v = 1, theta -> d(-2) with u = 1: A2 needs n.m - m.n = -1
    std::vector<CriticalOrbit> orbits = {
        {"theta", 0, true}, {"a", 1, false}, {"b", 0, false}, {"c", -1, false}, {"d", -2, false}};
    CoefficientSystem cs;
    cs.v["a"] = 1;
    cs.u["d"] = 1;
    auto rep = validate(FloerData("a2", orbits, cs));
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].constraint == "A2");
    CHECK(rep.violations[0].residual == 1);
    cs.n[{"a", "b"}] = 1;
    cs.m[{"b", "d"}] = -1;
    CHECK(validate(FloerData("a2", orbits, cs)).ok);
}

TEST_CASE("A3 and A4 witnesses")
{
    std::vector<CriticalOrbit> orbits = {{"theta", 0, true}, {"a", 2, false}, {"b", 1, false}, {"c", -2, false},
                                         {"d", -3, false}};
    CoefficientSystem cs;
    cs.n[{"a", "b"}] = 1;
    cs.v["b"] = 2;
    cs.u["c"] = 1;
    cs.n[{"c", "d"}] = 3;
    auto rep = validate(FloerData("a34", orbits, cs));
    std::map<std::string, Rational> by;
    for (const auto& v : rep.violations) by[v.constraint] = v.residual;
    CHECK(by.at("A3") == 2);
    CHECK(by.at("A4") == 3);
    // b(1) -> c(-2) also picks up v(b) u(c)
    CHECK(by.at("A2") == 2);
}

TEST_CASE("serialization round trip")
{
    for (const char* name : {"ex0.json", "ex1.json"}) {
        FloerData d = load(name);
        std::string bytes = serialize_floer(d);
        CHECK(parse_floer(bytes) == d);
        CHECK(serialize_floer(parse_floer(bytes)) == bytes);
    }
    CHECK(serialize_floer(load("ex1.json")).find("\"v\":[[\"a\",1]]") != std::string::npos);
    for (std::size_t i = 0; i < 30; ++i) {
        auto d = corpus_item(i);
        CHECK(parse_floer(serialize_floer(d)) == d);
    }
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(load("bad-index.json"), ConstraintError);
    try {
        load("bad-index.json");
    } catch (const ConstraintError& e) {
        CHECK(std::string(e.what()).find("(a,b)") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_floer("{\"label\": 1}"), ParseError);
    CHECK_THROWS_AS(parse_floer("not json"), ParseError);
    try {
        parse_floer(R"({"label":"x","orbits":[{"id":"a","index":"1","reducible":false}],"n":[],"m":[],"u":[],"v":[]})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("orbits[0].index") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_floer(R"({"label":"x","orbits":[{"id":"t","index":0,"reducible":true},{"id":"s","index":0,"reducible":true}],"n":[],"m":[],"u":[],"v":[]})"),
                    ConstraintError);
}

TEST_CASE("generator")
{
    GeneratorProfile empty;
    FloerData e = generate_admissible(1, empty);
    FloerData ex0 = load("ex0.json");
    CHECK(e.orbits() == ex0.orbits());
    CHECK(e.coeffs() == ex0.coeffs());

    GeneratorProfile p{6, -3, 3, true, 2};
    FloerData d7 = generate_admissible(7, p);
    CHECK(validate(d7).ok);
    CHECK(generate_admissible(7, p) == d7);

    p.with_reducible = false;
    FloerData d7p = generate_admissible(7, p);
    CHECK(validate(d7p).ok);
    CHECK(d7p.coeffs().u.empty());
    CHECK(d7p.coeffs().v.empty());
    CHECK_FALSE(d7p.has_reducible());

    for (std::size_t i = 0; i < 100; ++i) {
        auto d = corpus_item(i);
        CHECK(validate(d).ok);
        if (!corpus_profile(i).with_reducible) {
            CHECK(d.coeffs().u.empty());
            CHECK(d.coeffs().v.empty());
        }
    }
}

TEST_CASE("validate ok iff D squares to zero")
{
    std::mt19937_64 rng(99);
    int broken = 0;
    for (std::size_t i = 0; i < 80; ++i) {
        auto d = corpus_item(i);
        const int n = 2 + static_cast<int>(i % 3);
        CHECK(d_squared_zero(d, n));
        auto s = slots(d);
        if (s.empty()) continue;
        const Slot& pick = s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
        auto p = perturbed(d, pick, std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
        const bool ok = validate(p).ok;
        CHECK(ok == d_squared_zero(p, n));
        broken += !ok;
    }
    CHECK(broken > 0);
}
