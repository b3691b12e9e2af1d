#include "support.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sys/wait.h>

using namespace swft;

namespace {

constexpr std::size_t kDataCount = 200;      // criterion 1 corpus size
constexpr int kMaxPower = 5;                 // largest truncation in criterion 1
constexpr double kTimeLimit1 = 60.0;         // seconds
constexpr std::size_t kDeltaData = 50;       // criterion 5
constexpr int kTailTables = 100;             // criterion 7
constexpr int kRandomPaths = 100;            // criterion 9
constexpr double kFlowTol = 1e-9;            // zero-eigenvalue threshold
constexpr double kTimeLimit9 = 30.0;         // seconds
constexpr std::size_t kCrossingsPerKind = 10;  // criterion 8

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
};

// Coefficient slot with an index-admissible key.
struct Slot {
    char family;
    std::string a, b;
};

std::vector<Slot> all_slots(const FloerData& d)
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

bool any_n_into(const FloerData& d, const std::string& x)
{
    for (const auto& [k, c] : d.coeffs().n)
        if (k.second == x) return true;
    return false;
}

bool any_m_into(const FloerData& d, const std::string& x)
{
    for (const auto& [k, c] : d.coeffs().m)
        if (k.second == x) return true;
    return false;
}

// The slot sits in some composite next to a nonzero coefficient.
bool participates(const FloerData& d, const Slot& s)
{
    const int t = d.has_reducible() ? d.reducible()->index : 0;
    switch (s.family) {
    case 'n':
        return !d.n_from(s.b).empty() || any_n_into(d, s.a) || !d.m_from(s.b).empty() || any_m_into(d, s.a) ||
               (d.has_reducible() && d.v(s.b) != 0) || (d.has_reducible() && d.u(s.a) != 0);
    case 'm':
        return any_n_into(d, s.a) || !d.n_from(s.b).empty();
    case 'v':
        return any_n_into(d, s.a) || !d.coeffs().u.empty();
    default:
        (void)t;
        return !d.n_from(s.a).empty() || !d.coeffs().v.empty();
    }
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

std::vector<FloerData> corpus(std::size_t count)
{
    std::vector<FloerData> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(corpus_item(i));
    return out;
}

Outcome criterion1()
{
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::size_t perturbed_count = 0;
    for (std::size_t i = 0; i < kDataCount; ++i) {
        FloerData d = corpus_item(i);
        const int n = static_cast<int>(i % (kMaxPower + 1));
        if (!validate(d).ok) o.fail("generated datum " + std::to_string(i) + " is not admissible");
        if (!check_d_squared(build_equivariant_unchecked(d, {n})).ok) o.fail("D^2 != 0 on datum " + std::to_string(i));
        auto slots = all_slots(d);
        if (slots.empty()) continue;
        std::vector<Slot> live;
        for (const auto& s : slots)
            if (participates(d, s)) live.push_back(s);
        const auto& pool = live.empty() ? slots : live;
        const Slot& s = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        FloerData p = perturbed(d, s, std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
        const bool inside = participates(d, s);
        const bool valid = validate(p).ok;
        const bool square = check_d_squared(build_equivariant_unchecked(p, {n})).ok;
        if (inside && (valid || square))
            o.fail("perturbation of a composite slot went unnoticed on datum " + std::to_string(i));
        if (valid != square) o.fail("validate and D^2 disagree on perturbed datum " + std::to_string(i));
        perturbed_count += inside;
    }
    const double secs = seconds_since(t0);
    if (secs > kTimeLimit1) o.fail("runtime " + std::to_string(secs) + " s");
    if (o.pass)
        o.detail = std::to_string(kDataCount) + " data, " + std::to_string(perturbed_count) +
                   " composite perturbations caught, " + std::to_string(secs).substr(0, 5) + " s";
    return o;
}

Outcome criterion2()
{
    Outcome o;
    FloerData ex1 = load("ex1.json");
    auto h = equivariant_homology(ex1, {4});
    const std::vector<std::size_t> want = {0, 0, 1, 0, 1, 0, 1, 0};
    for (int d = 0; d <= 7; ++d)
        if (h.rank(d) != want[d]) o.fail("equivariant rank at " + std::to_string(d));
    if (swf_homology(ex1).rank(1) != 1) o.fail("plain rank at 1");
    if (casson(ex1) != -1) o.fail("casson");
    auto cd = parse_crossing(slurp(data_path("ex1-crossing.json")));
    auto h1 = equivariant_homology(cd.side1, {4});
    for (int d : {2, 4, 6})
        if (h1.rank(d) != 1) o.fail("post-crossing rank at " + std::to_string(d));
    for (int d = h1.certified.lo; d <= h1.certified.hi; ++d)
        if (d % 2 != 0 && h1.rank(d) != 0) o.fail("post-crossing odd rank");
    auto w = wallcross_check(cd, {4});
    if (!w.ok || cd.sf_c != -1 || w.casson0 != -1 || w.casson1 != 0) o.fail("wallcross");
    if (o.pass) o.detail = "ranks (0,0,1,0,1,0,1,0), casson -1 -> 0";
    return o;
}

Outcome criterion3()
{
    Outcome o;
    std::size_t checked = 0, relations = 0;
    for (std::size_t i = 0; i < kDataCount; ++i) {
        FloerData d = corpus_item(i);
        if (!d.has_reducible()) continue;
        auto rep = exact_sequence_report(d, {static_cast<int>(2 + i % 3)});
        if (!rep.ok) o.fail("inexact node on datum " + std::to_string(i));
        for (const auto& r : rep.relations) {
            ++relations;
            if (!r.holds) o.fail("dimension relation at k=" + std::to_string(r.k) + " datum " + std::to_string(i));
        }
        ++checked;
    }
    if (o.pass) o.detail = std::to_string(checked) + " data, " + std::to_string(relations) + " relations";
    return o;
}

Outcome criterion4()
{
    Outcome o;
    std::size_t sphere = 0, free_only = 0;
    for (std::size_t i = 0; i < kDataCount; ++i) {
        FloerData d = corpus_item(i);
        const TruncationPolicy policy{static_cast<int>(2 + i % 3)};
        auto q = q_homology(d, policy);
        if (d.has_reducible()) {
            ++sphere;
            const int t = d.reducible()->index;
            for (int k = q.certified.lo; k <= q.certified.hi; ++k) {
                std::size_t want = (k >= t && (k - t) % 2 == 0) ? 1 : 0;
                if (q.rank(k) != want) o.fail("Q rank at " + std::to_string(k) + " datum " + std::to_string(i));
            }
        } else {
            ++free_only;
            for (int k = q.certified.lo; k <= q.certified.hi; ++k)
                if (q.rank(k) != 0) o.fail("Q not acyclic on datum " + std::to_string(i));
            auto he = equivariant_homology(d, policy);
            auto hp = swf_homology(d);
            ChainMap im = chain_map_i(d, policy);
            for (int k = he.certified.lo; k <= he.certified.hi; ++k) {
                if (he.rank(k) != hp.rank(k)) o.fail("rank mismatch at " + std::to_string(k));
                if (induced_rank(im, k) != hp.rank(k)) o.fail("i not an isomorphism at " + std::to_string(k));
            }
        }
    }
    if (o.pass) o.detail = std::to_string(sphere) + " with reducible, " + std::to_string(free_only) + " without";
    return o;
}

Outcome criterion5()
{
    Outcome o;
    std::mt19937_64 rng(55);
    std::size_t data = 0, cycles = 0;
    for (std::size_t i = 0; data < kDeltaData && i < 10 * kDeltaData; ++i) {
        FloerData d = corpus_item(i);
        if (!d.has_reducible() || d.free_orbits().empty()) continue;
        const TruncationPolicy policy{4};
        auto ses = comparison_sequence(d, policy);
        ChainComplex plain = build_nonequivariant(d);
        auto cert = certified_range(d, policy);
        bool any = false;
        for (int deg = std::max(plain.degrees().lo, cert.lo); deg <= std::min(plain.degrees().hi, cert.hi); ++deg) {
            if (deg % 2 == 0 || deg < 1) continue;
            auto x = random_cycle(plain, deg, rng);
            Cycle z = cycle_from_coords(plain, deg, x);
            if (delta_in_oracle_coords(d, ses, z, policy) != connecting_image(ses, deg, x))
                o.fail("delta differs from the oracle on datum " + std::to_string(i) + " degree " + std::to_string(deg));
            if (connecting_delta(d, z, policy).coefficient != delta_closed_form(d, z))
                o.fail("closed form differs on datum " + std::to_string(i));
            ++cycles;
            any = true;
        }
        data += any;
    }
    if (data < kDeltaData) o.fail("only " + std::to_string(data) + " data with odd certified cycles");
    if (o.pass) o.detail = std::to_string(data) + " data, " + std::to_string(cycles) + " cycles";
    return o;
}

Outcome criterion6()
{
    Outcome o;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < kDataCount; ++i) {
        FloerData d = corpus_item(i);
        if (d.has_reducible()) continue;
        const TruncationPolicy policy{3};
        auto [e0, e1] = spectral_pages(d, policy, Filtration::equivariant);
        auto [p0, p1] = spectral_pages(d, policy, Filtration::plain);
        const DegreeRange cert = e1.certified;
        if (certified_entries(e1, cert) != orbit_counts(d, cert)) o.fail("equivariant E1 on datum " + std::to_string(i));
        if (certified_entries(p1, cert) != certified_entries(e1, cert)) o.fail("plain E1 on datum " + std::to_string(i));
        ++checked;
    }
    if (o.pass) o.detail = std::to_string(checked) + " data without reducible";
    return o;
}

Outcome criterion7()
{
    Outcome o;
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < kTailTables; ++trial) {
        auto t = random_tail_table(rng);
        const long e = euler_from_equivariant(t);
        for (int n = 1; n <= 3; ++n)
            if (euler_from_equivariant(shifted(t, 2 * n)) != e - n) o.fail("shift by " + std::to_string(2 * n));
    }
    std::size_t data = 0;
    for (std::size_t i = 0; i < kDataCount; ++i) {
        FloerData d = corpus_item(i);
        if (!d.has_reducible()) continue;
        const int span = *d.max_index() - *d.min_index();
        auto h = equivariant_homology(d, {span / 2 + 4});
        if (euler_from_equivariant(h) != casson(d)) o.fail("Euler from ranks on datum " + std::to_string(i));
        ++data;
    }
    if (o.pass) o.detail = std::to_string(kTailTables) + " tables, " + std::to_string(data) + " data";
    return o;
}

Outcome criterion8()
{
    Outcome o;
    auto check = [&](const CrossingData& cd, const std::string& what) {
        auto r = verify_crossing(cd, {3});
        if (r.residual_ID_DI != 0 || r.residual_JD_DJ != 0 || r.residual_homotopy != 0) o.fail(what + ": residual");
        if (!r.c1.holds || !r.c2.holds || !r.c3.holds) o.fail(what + ": crossing identity");
        if (!r.ok) o.fail(what + ": report not ok");
    };
    check(parse_crossing(slurp(data_path("trivial-crossing.json"))), "trivial crossing");
    check(parse_crossing(slurp(data_path("ex1-crossing.json"))), "single disk crossing");
    std::size_t made = 0;
    const std::array<CrossingKind, 4> kinds = {CrossingKind::same_chamber, CrossingKind::disappear,
                                               CrossingKind::appear, CrossingKind::mirror};
    for (auto kind : kinds)
        for (std::size_t i = 0; i < kCrossingsPerKind; ++i) {
            GeneratorProfile p = corpus_profile(i);
            p.orbit_count = i % 8;
            try {
                check(generate_crossing(300 + i, p, kind), "generated crossing " + std::to_string(i));
                ++made;
            } catch (const GenerationFailure& e) {
                o.fail(std::string("solver failure: ") + e.what());
            }
        }
    if (o.pass) o.detail = "2 fixed + " + std::to_string(made) + " generated crossings";
    return o;
}

Outcome criterion9()
{
    Outcome o;
    auto t0 = Clock::now();
    HermitianPath up;
    up.tol = kFlowTol;
    up.samples = {{0.0, ComplexMatrix::Constant(1, 1, -1.0)}, {1.0, ComplexMatrix::Constant(1, 1, 1.0)}};
    if (spectral_flow(up) != 1) o.fail("diag(2t-1) flow");
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < kRandomPaths; ++trial) {
        auto a = random_path(4, 5, rng);
        auto b = random_path(4, 5, rng);
        a.tol = b.tol = kFlowTol;
        b.samples.front().matrix = a.samples.back().matrix;
        const long fa = spectral_flow(a), fb = spectral_flow(b);
        if (spectral_flow(concatenate(a, b)) != fa + fb) o.fail("additivity");
        if (spectral_flow(concatenate(a, reversed(a))) != 0) o.fail("reversal");
    }
    struct Row {
        double lp, g;
        int side, sign, delta, sf;
    };
    const std::array<Row, 4> table = {Row{1, 1, -1, 1, -1, 1}, Row{1, -1, 1, -1, -1, 1}, Row{-1, 1, 1, 1, 1, -1},
                                      Row{-1, -1, -1, -1, 1, -1}};
    for (const auto& r : table) {
        auto k = kuranishi_crossing({r.lp, r.g});
        if (k.branch_side != r.side || k.branch_sign != r.sign || k.delta_lambda != r.delta || k.sf_c != r.sf ||
            k.delta_lambda != -k.sf_c)
            o.fail("sign table row lambda'=" + std::to_string(r.lp) + " gamma=" + std::to_string(r.g));
    }
    const double secs = seconds_since(t0);
    if (secs > kTimeLimit9) o.fail("runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail = std::to_string(kRandomPaths) + " random paths, " + std::to_string(secs).substr(0, 5) + " s";
    return o;
}

struct Run {
    std::string out;
    int code;
};

Run run_cli(const std::string& args)
{
    std::string cmd = std::string(SWF_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {"", -1};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

Outcome criterion10()
{
    Outcome o;
    auto d = [](const std::string& f) { return data_path(f); };
    const std::vector<std::pair<std::string, int>> runs = {
        {"validate " + d("ex0.json"), 0},
        {"validate " + d("ex1.json"), 0},
        {"validate " + d("a1-violation.json"), 1},
        {"validate " + d("bad-index.json"), 2},
        {"homology " + d("ex1.json") + " --max-power 4 --equivariant", 0},
        {"homology " + d("ex1.json") + " --max-power 4 --plain", 0},
        {"homology " + d("a1-violation.json") + " --max-power 2", 1},
        {"compare " + d("ex1.json") + " --max-power 3", 0},
        {"delta " + d("ex1.json") + " --cycle " + d("cycle-a.json") + " --max-power 4", 0},
        {"wallcross " + d("ex1-crossing.json") + " --max-power 4", 0},
        {"morphisms " + d("ex1-crossing.json") + " --max-power 4", 0},
        {"morphisms " + d("trivial-crossing.json") + " --max-power 3", 0},
        {"specflow " + d("path-up.json"), 0},
        {"specflow " + d("path-swap.json"), 0},
        {"specflow " + d("path-wall.json"), 3},
        {"kuranishi --lambda-prime 1 --gamma -1", 0},
        {"kuranishi --lambda-prime 0 --gamma 1", 2},
        {"generate --seed 7 --orbits 6 --index-min -3 --index-max 3", 0},
        {"generate --seed 7 --orbits 6 --index-min -3 --index-max 3 --no-reducible", 0},
    };
    for (const auto& [args, code] : runs) {
        Run a = run_cli(args), b = run_cli(args);
        if (a.out != b.out) o.fail("non-deterministic output: " + args);
        if (a.code != code || b.code != code)
            o.fail("exit code " + std::to_string(a.code) + " (expected " + std::to_string(code) + "): " + args);
    }
    if (o.pass) o.detail = std::to_string(runs.size()) + " invocations run twice";
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                            criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
