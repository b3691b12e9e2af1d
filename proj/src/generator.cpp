#include "swf/errors.hpp"
#include "swf/floer_data.hpp"
#include "swf/linalg.hpp"

#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

namespace swf {

namespace {

using Rng = std::mt19937_64;

// Scales a rational vector to a primitive integer vector.
std::vector<Integer> primitive(const std::vector<Rational>& v)
{
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        out[i] = s.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

std::vector<std::vector<Integer>> integer_kernel(const SparseMatrix& a)
{
    std::vector<std::vector<Integer>> out;
    for (const auto& k : kernel_basis(a)) out.push_back(primitive(k));
    return out;
}

int coin(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random small combination of the basis vectors, entries bounded by bound; zero vector on failure.
std::vector<long> sample_combination(const std::vector<std::vector<Integer>>& basis, std::size_t len,
                                          long bound, Rng& rng)
{
    std::vector<long> zero(len, 0);
    if (basis.empty() || coin(rng, 0, 9) < 3) return zero;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<Integer> acc(len, 0);
        for (const auto& b : basis) {
            int c = coin(rng, -1, 1);
            if (c == 0) continue;
            for (std::size_t i = 0; i < len; ++i) acc[i] += c * b[i];
        }
        bool fits = true;
        std::vector<long> out(len);
        for (std::size_t i = 0; i < len && fits; ++i) {
            if (abs(acc[i]) > bound) fits = false;
            else out[i] = acc[i].get_si();
        }
        if (fits) return out;
    }
    return zero;
}

std::string orbit_name(std::size_t i)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "x%02zu", i);
    return buf;
}

}  // namespace

FloerData generate_admissible(std::uint64_t seed, const GeneratorProfile& profile)
{
    if (profile.index_min > profile.index_max) throw std::invalid_argument("empty index range");
    Rng rng(seed);
    std::vector<CriticalOrbit> orbits;
    for (std::size_t i = 0; i < profile.orbit_count; ++i)
        orbits.push_back({orbit_name(i), coin(rng, profile.index_min, profile.index_max), false});
    const int theta = 0;
    if (profile.with_reducible) orbits.push_back({"theta", theta, true});

    const std::string label = "generated seed=" + std::to_string(seed);
    FloerData shape(label, orbits, {});
    const long bound = std::max<long>(1, profile.magnitude);

    CoefficientSystem cs;
    // n level by level; rows of each block lie in the left kernel of the block below
    std::map<int, SparseMatrix> blocks;
    for (int k = profile.index_min + 1; k <= profile.index_max; ++k) {
        auto rows = shape.free_at_index(k);
        auto cols = shape.free_at_index(k - 1);
        SparseMatrix nk(rows.size(), cols.size());
        if (!rows.empty() && !cols.empty()) {
            std::vector<std::vector<Integer>> allowed;
            auto below = blocks.find(k - 1);
            if (below == blocks.end() || below->second.cols() == 0) {
                for (std::size_t j = 0; j < cols.size(); ++j) {
                    std::vector<Integer> e(cols.size(), 0);
                    e[j] = 1;
                    allowed.push_back(e);
                }
            } else {
                allowed = integer_kernel(below->second.transpose());
            }
            for (std::size_t r = 0; r < rows.size(); ++r) {
                auto row = sample_combination(allowed, cols.size(), bound, rng);
                for (std::size_t j = 0; j < cols.size(); ++j)
                    if (row[j] != 0) {
                        cs.n[{rows[r], cols[j]}] = row[j];
                        nk.add(r, j, row[j]);
                    }
            }
        }
        blocks[k] = nk;
    }
    auto block = [&](int k) {
        auto it = blocks.find(k);
        if (it != blocks.end()) return it->second;
        return SparseMatrix(shape.free_at_index(k).size(), shape.free_at_index(k - 1).size());
    };

    // pairs carrying an m unknown
    std::vector<OrbitPair> unknowns;
    std::map<OrbitPair, std::size_t> slot;
    for (const auto& a : shape.free_orbits())
        for (const auto& c : shape.free_at_index(a.index - 2)) {
            slot[{a.id, c}] = unknowns.size();
            unknowns.push_back({a.id, c});
        }

    const int max_attempts = 24;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        CoefficientSystem trial = cs;
        if (profile.with_reducible) {
            auto ups = shape.free_at_index(theta + 1);
            auto lows = shape.free_at_index(theta - 2);
            // v in the kernel of the block from theta+2 to theta+1
            SparseMatrix above = block(theta + 2);
            std::vector<std::vector<Integer>> vk =
                above.rows() ? integer_kernel(above) : std::vector<std::vector<Integer>>{};
            if (!above.rows())
                for (std::size_t j = 0; j < ups.size(); ++j) {
                    std::vector<Integer> e(ups.size(), 0);
                    e[j] = 1;
                    vk.push_back(e);
                }
            // u in the left kernel of the block from theta-2 to theta-3
            SparseMatrix below = block(theta - 2);
            std::vector<std::vector<Integer>> uk =
                below.cols() ? integer_kernel(below.transpose()) : std::vector<std::vector<Integer>>{};
            if (!below.cols())
                for (std::size_t j = 0; j < lows.size(); ++j) {
                    std::vector<Integer> e(lows.size(), 0);
                    e[j] = 1;
                    uk.push_back(e);
                }
            auto vv = sample_combination(vk, ups.size(), bound, rng);
            auto uu = sample_combination(uk, lows.size(), bound, rng);
            // later attempts fall back to decoupled theta
            if (attempt >= max_attempts / 2) std::fill(uu.begin(), uu.end(), 0);
            for (std::size_t i = 0; i < ups.size(); ++i)
                if (vv[i]) trial.v[ups[i]] = vv[i];
            for (std::size_t i = 0; i < lows.size(); ++i)
                if (uu[i]) trial.u[lows[i]] = uu[i];
        }

        // (A2) as a linear system in m
        std::vector<SparseVector> rows;
        std::vector<Rational> rhs;
        for (const auto& a : shape.free_orbits())
            for (const auto& d : shape.free_at_index(a.index - 3)) {
                std::map<std::size_t, Rational> eq;
                for (auto it = cs.n.lower_bound({a.id, std::string()}); it != cs.n.end() && it->first.first == a.id;
                     ++it)
                    eq[slot.at({it->first.second, d})] += it->second;
                for (const auto& [key, ncd] : cs.n)
                    if (key.second == d && shape.index(key.first) == a.index - 2) eq[slot.at({a.id, key.first})] -= ncd;
                Rational constant = 0;
                if (profile.with_reducible && a.index == theta + 1) {
                    auto vi = trial.v.find(a.id);
                    auto ui = trial.u.find(d);
                    if (vi != trial.v.end() && ui != trial.u.end()) constant = Rational(vi->second) * ui->second;
                }
                SparseVector row;
                for (auto& [s, c] : eq)
                    if (c != 0) row.emplace_back(s, c);
                if (row.empty() && constant == 0) continue;
                rows.push_back(std::move(row));
                rhs.push_back(-constant);
            }
        auto sol = solve_affine(rows, rhs, unknowns.size());
        if (!sol) continue;

        std::vector<Rational> x = sol->particular;
        bool integral = std::all_of(x.begin(), x.end(), is_integral);
        for (int tries = 0; !integral && tries < 32; ++tries) {
            x = sol->particular;
            for (const auto& k : sol->kernel) {
                int c = coin(rng, -2, 2);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * k[i];
            }
            integral = std::all_of(x.begin(), x.end(), is_integral);
        }
        if (!integral) continue;
        std::vector<std::vector<Integer>> ik;
        for (const auto& k : sol->kernel) ik.push_back(primitive(k));
        auto step = sample_combination(ik, unknowns.size(), bound, rng);
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            Rational val = x[i] + step[i];
            if (val != 0) trial.m[unknowns[i]] = val.get_num().get_si();
        }

        FloerData out(label, orbits, trial);
        if (!validate(out).ok) throw std::logic_error("sampler produced inadmissible data");
        return out;
    }
    throw GenerationFailure("no admissible coefficient system found for seed " + std::to_string(seed) + " within " +
                            std::to_string(max_attempts) + " attempts");
}

}  // namespace swf
