#include "swf/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace swf {

namespace {

std::size_t eliminate(std::vector<SparseVector> rows, std::size_t ncols, bool parallel)
{
    std::vector<std::vector<std::size_t>> buckets(ncols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].empty()) buckets[rows[i].front().first].push_back(i);

    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        auto& bucket = buckets[c];
        if (bucket.empty()) continue;
        std::sort(bucket.begin(), bucket.end());

        // sparsest row wins the pivot, ties to the lowest row id
        std::size_t best = 0;
        for (std::size_t k = 1; k < bucket.size(); ++k)
            if (rows[bucket[k]].size() < rows[bucket[best]].size()) best = k;
        const std::size_t p = bucket[best];
        ++r;

        std::vector<std::size_t> others;
        others.reserve(bucket.size() - 1);
        for (std::size_t k = 0; k < bucket.size(); ++k)
            if (k != best) others.push_back(bucket[k]);

        const SparseVector& pivot = rows[p];
        const long n = static_cast<long>(others.size());
#pragma omp parallel for schedule(dynamic) if (parallel && n > 1)
        for (long k = 0; k < n; ++k) {
            SparseVector& row = rows[others[k]];
            Rational f = -row.front().second / pivot.front().second;
            row = axpy(row, f, pivot);
        }
        for (auto k : others)
            if (!rows[k].empty()) buckets[rows[k].front().first].push_back(k);
        bucket.clear();
        bucket.shrink_to_fit();
    }
    return r;
}

}  // namespace

std::size_t rank_serial(const SparseMatrix& m)
{
    // eliminate along the shorter dimension
    if (m.cols() < m.rows()) return eliminate(m.transpose().row_vectors(), m.rows(), false);
    return eliminate(m.row_vectors(), m.cols(), false);
}

std::size_t rank_parallel(const SparseMatrix& m)
{
    if (m.cols() < m.rows()) return eliminate(m.transpose().row_vectors(), m.rows(), true);
    return eliminate(m.row_vectors(), m.cols(), true);
}

std::size_t rank(const SparseMatrix& m)
{
    if (m.nonzeros() < 4096) return rank_serial(m);
    return rank_parallel(m);
}

SparseVector IncrementalSpan::reduce(const SparseVector& v) const
{
    SparseVector r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        auto it = std::lower_bound(r.begin(), r.end(), pivots_[k],
                                   [](const auto& e, std::size_t c) { return e.first < c; });
        if (it == r.end() || it->first != pivots_[k]) continue;
        Rational f = -it->second;
        r = axpy(r, f, rows_[k]);
    }
    return r;
}

bool IncrementalSpan::contains(const SparseVector& v) const
{
    return reduce(v).empty();
}

bool IncrementalSpan::add(const SparseVector& v)
{
    SparseVector r = reduce(v);
    if (r.empty()) return false;
    Rational lead = r.front().second;
    for (auto& e : r) e.second /= lead;
    const std::size_t p = r.front().first;
    for (auto& row : rows_) {
        auto it = std::lower_bound(row.begin(), row.end(), p, [](const auto& e, std::size_t c) { return e.first < c; });
        if (it == row.end() || it->first != p) continue;
        Rational f = -it->second;
        row = axpy(row, f, r);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(r));
    return true;
}

std::optional<AffineSolution> solve_affine(const std::vector<SparseVector>& rows, const std::vector<Rational>& rhs,
                                           std::size_t n)
{
    if (rows.size() != rhs.size()) throw std::invalid_argument("right-hand side length mismatch");
    IncrementalSpan span(n + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseVector aug = rows[i];
        if (!aug.empty() && aug.back().first >= n) throw std::out_of_range("equation references unknown out of range");
        if (rhs[i] != 0) aug.emplace_back(n, rhs[i]);
        span.add(aug);
    }
    const auto& piv = span.pivots();
    if (!piv.empty() && piv.back() == n) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(n, 0);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        is_pivot[piv[k]] = true;
        const auto& row = span.rows()[k];
        if (row.back().first == n) sol.particular[piv[k]] = row.back().second;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        sol.free_columns.push_back(f);
        std::vector<Rational> k(n, 0);
        k[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            const auto& row = span.rows()[i];
            auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, std::size_t c) { return e.first < c; });
            if (it != row.end() && it->first == f) k[piv[i]] = -it->second;
        }
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

std::optional<AffineSolution> solve_affine(const SparseMatrix& a, const std::vector<Rational>& rhs)
{
    return solve_affine(a.row_vectors(), rhs, a.cols());
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& a)
{
    return solve_affine(a, std::vector<Rational>(a.rows(), 0))->kernel;
}

SparseVector to_sparse(const std::vector<Rational>& dense)
{
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) v.emplace_back(i, dense[i]);
    return v;
}

std::vector<Rational> to_dense(const SparseVector& v, std::size_t n)
{
    std::vector<Rational> d(n, 0);
    for (const auto& [i, x] : v) d.at(i) = x;
    return d;
}

}  // namespace swf
