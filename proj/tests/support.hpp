#pragma once

#include "swf/comparison.hpp"
#include "swf/crossing.hpp"
#include "swf/linalg.hpp"
#include "swf/smith.hpp"
#include "swf/snake.hpp"
#include "swf/spectral_flow.hpp"
#include "swf/errors.hpp"
#include "swf/reports_json.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace swft {

using namespace swf;

inline std::string data_path(const std::string& name) { return std::string(SWF_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline FloerData load(const std::string& name) { return parse_floer(slurp(data_path(name))); }

// Mixed corpus: orbit counts 0..12, index windows inside [-4, 4], every third datum without reducible.
inline GeneratorProfile corpus_profile(std::size_t i)
{
    std::mt19937_64 rng(1000 + i);
    GeneratorProfile p;
    p.orbit_count = i % 13;
    int a = std::uniform_int_distribution<int>(-4, 0)(rng);
    int b = std::uniform_int_distribution<int>(0, 4)(rng);
    p.index_min = a;
    p.index_max = b;
    p.with_reducible = i % 3 != 2;
    p.magnitude = 2;
    return p;
}

inline FloerData corpus_item(std::size_t i) { return generate_admissible(7919 * i + 11, corpus_profile(i)); }

// Plain Gaussian elimination on a dense rational matrix, independent of the sparse kernels.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline SparseMatrix random_integer_matrix(std::size_t rows, std::size_t cols, double density, int mag,
                                          std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-mag, mag);
    SparseMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (u(rng) < density) m.add(r, c, v(rng));
    return m;
}

// Homology ranks straight from dims and dense ranks of the stored boundaries.
inline std::map<int, std::size_t> oracle_ranks(const ChainComplex& c)
{
    std::map<int, std::size_t> out;
    auto deg = c.degrees();
    if (deg.empty()) return out;
    for (int d = deg.lo; d <= deg.hi; ++d) {
        std::size_t out_rank = dense_rank(c.boundary(d).to_dense());
        std::size_t in_rank = d + 1 <= deg.hi ? dense_rank(c.boundary(d + 1).to_dense()) : 0;
        out[d] = c.dim(d) - out_rank - in_rank;
    }
    return out;
}

// Coordinates of x in degree d of a complex whose basis labels come from label().
inline std::vector<Rational> coords_by_label(const ChainComplex& c, int d, const GenVector& x)
{
    std::vector<Rational> out(c.dim(d), 0);
    for (const auto& [g, k] : x) {
        auto i = c.index_of(d, label(g));
        if (!i) throw std::runtime_error("generator " + label(g) + " missing from degree " + std::to_string(d));
        out[*i] += k;
    }
    return out;
}

inline Cycle cycle_from_coords(const ChainComplex& plain, int d, const std::vector<Rational>& x)
{
    Cycle z;
    z.degree = d;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) z.coefficients[plain.basis(d)[i]] = x[i];
    return z;
}

// Random cycle: combination of homology representatives plus a boundary.
inline std::vector<Rational> random_cycle(const ChainComplex& c, int d, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> k(-2, 2);
    std::vector<Rational> z(c.dim(d), 0);
    for (const auto& h : homology_basis(c, d)) {
        int s = k(rng);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += s * h[i];
    }
    if (c.dim(d + 1) > 0) {
        std::vector<Rational> y(c.dim(d + 1));
        for (auto& e : y) e = k(rng);
        auto b = c.boundary(d + 1).apply(y);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += b[i];
    }
    return z;
}

// connecting_delta read in the oracle's coordinates of H_{d-1}(Q).
inline std::vector<Rational> delta_in_oracle_coords(const FloerData& data, const ShortExactSequence& ses, const Cycle& z,
                                                    TruncationPolicy policy)
{
    const ChainComplex& q = ses.inclusion.source();
    const int d = z.degree - 1;
    auto basis = homology_basis(q, d);
    auto r = connecting_delta(data, z, policy);
    if (!r.theta_power || r.coefficient == 0) return std::vector<Rational>(basis.size(), 0);
    GenVector t;
    for (const auto& [g, c] : theta_cycle(data, *r.theta_power)) add_term(t, g, c * r.coefficient);
    return homology_coordinates(q, d, basis, coords_by_label(q, d, t));
}

// Page entries whose total degree is certified.
inline std::map<std::pair<int, int>, std::size_t> certified_entries(const SpectralPage& p, DegreeRange cert)
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& [kl, r] : p.entries)
        if (cert.contains(kl.first + kl.second)) out[kl] = r;
    return out;
}

// Free orbit counts per index placed at l = 0, restricted to certified degrees.
inline std::map<std::pair<int, int>, std::size_t> orbit_counts(const FloerData& d, DegreeRange cert)
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& o : d.free_orbits())
        if (cert.contains(o.index)) ++out[{o.index, 0}];
    return out;
}

inline HomologyTable table_from(std::map<int, std::size_t> ranks, DegreeRange cert)
{
    HomologyTable t;
    t.ranks = std::move(ranks);
    t.certified = cert;
    return t;
}

// Rank table of a tail-stabilized complex: random head below s, then 1 at even, 0 at odd up to hi.
inline HomologyTable random_tail_table(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> r(0, 3);
    const int lo = std::uniform_int_distribution<int>(-6, 0)(rng);
    const int s = 2 * std::uniform_int_distribution<int>(0, 3)(rng);
    const int hi = s + 2 * std::uniform_int_distribution<int>(1, 4)(rng) + 1;
    std::map<int, std::size_t> ranks;
    for (int d = lo; d < s; ++d) ranks[d] = r(rng);
    for (int d = s; d <= hi; ++d) ranks[d] = d % 2 == 0 ? 1 : 0;
    return table_from(ranks, {lo, hi});
}

inline HomologyTable shifted(const HomologyTable& t, int by)
{
    std::map<int, std::size_t> ranks;
    for (const auto& [d, k] : t.ranks) ranks[d + by] = k;
    return table_from(ranks, {t.certified.lo + by, t.certified.hi + by});
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0, 1);
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return (a + a.adjoint()) * 0.5;
}

// Random piecewise-linear path with off-wall endpoints.
inline HermitianPath random_path(std::size_t n, std::size_t samples, std::mt19937_64& rng)
{
    HermitianPath p;
    p.tol = 1e-9;
    for (std::size_t i = 0; i < samples; ++i) {
        ComplexMatrix m = random_hermitian(n, rng);
        p.samples.push_back({static_cast<double>(i) / (samples - 1), m});
    }
    return p;
}

// Fine-grid oracle: signature change between consecutive grid points of the interpolated path.
inline long dense_flow_oracle(const HermitianPath& p, int per_segment)
{
    auto negatives = [&](const ComplexMatrix& m) {
        long k = 0;
        for (double x : eigenvalues(m))
            if (x < 0) ++k;
        return k;
    };
    long flow = 0;
    long prev = negatives(p.samples.front().matrix);
    for (std::size_t i = 0; i + 1 < p.samples.size(); ++i)
        for (int s = 1; s <= per_segment; ++s) {
            double w = static_cast<double>(s) / per_segment;
            ComplexMatrix m = p.samples[i].matrix * (1 - w) + p.samples[i + 1].matrix * w;
            long now = negatives(m);
            flow += prev - now;
            prev = now;
        }
    return flow;
}

}  // namespace swft
