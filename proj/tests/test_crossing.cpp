#include "support.hpp"

#include <doctest.h>

using namespace swft;

namespace {

CrossingData load_crossing(const std::string& name) { return parse_crossing(slurp(data_path(name))); }

bool all_zero(const CrossingReport& r)
{
    return r.residual_ID_DI == 0 && r.residual_JD_DJ == 0 && r.residual_homotopy == 0;
}

GeneratorProfile small_profile(std::size_t i)
{
    GeneratorProfile p = corpus_profile(i);
    p.orbit_count = i % 7;
    return p;
}

// J I induces an isomorphism on the certified homology of side0.
void check_homotopy_inverse(const CrossingData& cd, int n)
{
    ChainMap i = build_I(cd, {n});
    ChainMap j = build_J(cd, {n + std::abs(cd.sf_c)});
    std::map<int, SparseMatrix> blocks;
    auto src = i.source().degrees();
    for (int d = src.lo; d <= src.hi; ++d) {
        REQUIRE(i.target().basis(d) == j.source().basis(d));
        blocks[d] = j.block(d) * i.block(d);
    }
    ChainMap ji(i.source_ptr(), j.target_ptr(), 0, blocks);
    auto h = homology(i.source());
    for (int d = h.certified.lo; d <= h.certified.hi; ++d) CHECK(induced_rank(ji, d) == h.rank(d));
}

}  // namespace

TEST_CASE("trivial same-chamber crossing")
{
    auto cd = load_crossing("trivial-crossing.json");
    auto rep = verify_crossing(cd, {3});
    CHECK(rep.ok);
    CHECK(all_zero(rep));
    CHECK_FALSE(rep.c1.applicable);
    ChainMap i = build_I(cd, {2});
    ChainMap h = build_H(cd, {2});
    auto src = i.source().degrees();
    for (int d = src.lo; d <= src.hi; ++d) {
        CHECK(i.block(d) == SparseMatrix::identity(i.source().dim(d)));
        CHECK(h.block(d).is_zero());
    }
    auto w = wallcross_check(cd, {3});
    CHECK(w.ok);
}

TEST_CASE("single disk crossing")
{
    auto cd = load_crossing("ex1-crossing.json");
    CHECK(theta_shift_I(cd) == -1);
    GenVector at2 = apply_I(cd, {GenKind::theta, "theta", 2});
    GenVector want;
    add_term(want, {GenKind::theta, "theta", 1}, 1);
    CHECK(at2 == want);
    CHECK(apply_I(cd, {GenKind::theta, "theta", 0}).empty());

    auto rep = verify_crossing(cd, {4});
    CHECK(rep.ok);
    CHECK(all_zero(rep));
    CHECK(rep.c1.applicable);
    CHECK(rep.c1.value == 1);

    auto w = wallcross_check(cd, {4});
    CHECK(w.ok);
    CHECK(w.casson0 == -1);
    CHECK(w.casson1 == 0);
    CHECK(w.euler0 == -1);
    CHECK(w.euler1 == 0);
    for (int d : {2, 4, 6}) CHECK(w.ranks1.rank(d) == 1);
    CHECK(w.ranks1.rank(3) == 0);
}

TEST_CASE("crossing JSON")
{
    auto cd = load_crossing("ex1-crossing.json");
    CHECK(parse_crossing(serialize_crossing(cd)).maps->I.one_theta == cd.maps->I.one_theta);
    CHECK(serialize_crossing(parse_crossing(serialize_crossing(cd))) == serialize_crossing(cd));

    auto j = nlohmann::json::parse(slurp(data_path("ex1-crossing.json")));
    j["I"]["m"] = nlohmann::json::array({nlohmann::json::array({"a", "a", 1})});
    CHECK_THROWS_AS(crossing_from_json(j), IndexConstraintError);

    j = nlohmann::json::parse(slurp(data_path("ex1-crossing.json")));
    j["sf_c"] = 1;
    CHECK_THROWS_AS(crossing_from_json(j), ConstraintError);

    j = nlohmann::json::parse(slurp(data_path("ex1-crossing.json")));
    j.erase("H");
    CHECK_THROWS_AS(crossing_from_json(j), ParseError);
    j.erase("I");
    j.erase("J");
    auto bare = crossing_from_json(j);
    CHECK_FALSE(bare.maps);
    CHECK_THROWS_AS(verify_crossing(bare, {2}), ConstraintError);
    CHECK(wallcross_check(bare, {4}).ok);
}

TEST_CASE("Euler characteristic from equivariant ranks")
{
    CHECK(euler_from_equivariant(equivariant_homology(load("ex0.json"), {4})) == 0);
    CHECK(euler_from_equivariant(equivariant_homology(load("ex1.json"), {4})) == -1);
    HomologyTable flat = table_from({{0, 1}, {1, 1}, {2, 1}}, {0, 2});
    CHECK_THROWS_AS(euler_from_equivariant(flat), NoTailError);
    HomologyTable short_tail = table_from({{0, 1}}, {0, 0});
    CHECK_THROWS_AS(euler_from_equivariant(short_tail), NoTailError);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        auto t = random_tail_table(rng);
        const long e = euler_from_equivariant(t);
        for (int n = 1; n <= 3; ++n) CHECK(euler_from_equivariant(shifted(t, 2 * n)) == e - n);
    }
    for (std::size_t k = 0; k < 60; ++k) {
        auto d = corpus_item(k);
        if (!d.has_reducible()) continue;
        auto span = *d.max_index() - *d.min_index();
        auto h = equivariant_homology(d, {span / 2 + 4});
        CHECK(euler_from_equivariant(h) == casson(d));
    }
}

TEST_CASE("generated crossings verify")
{
    for (auto kind : {CrossingKind::same_chamber, CrossingKind::disappear, CrossingKind::appear, CrossingKind::mirror}) {
        for (std::size_t i = 0; i < 12; ++i) {
            CAPTURE(static_cast<int>(kind));
            CAPTURE(i);
            auto cd = generate_crossing(500 + i, small_profile(i), kind);
            REQUIRE(cd.maps);
            CHECK(validate(cd.side0).ok);
            CHECK(validate(cd.side1).ok);
            auto rep = verify_crossing(cd, {3});
            CHECK(rep.ok);
            CHECK(all_zero(rep));
            if (cd.sf_c == -1) {
                CHECK(rep.c1.applicable);
                CHECK(rep.c1.value == 1);
            }
            auto w = wallcross_check(cd, {4});
            CHECK(w.casson_ok);
            CHECK(w.rank_iso_ok);
            CHECK(parse_crossing(serialize_crossing(cd)).maps->H.theta_eta == cd.maps->H.theta_eta);
        }
    }
}

TEST_CASE("crossing maps are homotopy inverse on homology")
{
    for (auto kind : {CrossingKind::same_chamber, CrossingKind::disappear, CrossingKind::appear}) {
        for (std::size_t i = 0; i < 5; ++i) check_homotopy_inverse(generate_crossing(900 + i, small_profile(i), kind), 3);
    }
    check_homotopy_inverse(parse_crossing(slurp(data_path("ex1-crossing.json"))), 3);
}

TEST_CASE("residuals detect a broken map")
{
    auto cd = load_crossing("ex1-crossing.json");
    cd.maps->I.one_theta.clear();
    auto rep = verify_crossing(cd, {3});
    CHECK_FALSE(rep.ok);
    CHECK(rep.residual_ID_DI == 1);
    cd = load_crossing("ex1-crossing.json");
    cd.maps->J.s["a"] = 2;
    rep = verify_crossing(cd, {3});
    CHECK_FALSE(rep.ok);
    CHECK(rep.c1.value == 2);
}

TEST_CASE("double crossing")
{
    for (std::size_t i = 0; i < 10; ++i) {
        auto cd = generate_double_crossing(40 + i, small_profile(i));
        CHECK(cd.sf_c == 2);
        auto w = wallcross_check(cd, {5});
        CHECK(w.casson1 == w.casson0 - 2);
        CHECK(w.ok);
    }
}
