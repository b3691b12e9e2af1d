#pragma once

#include "swf/sparse_matrix.hpp"

#include <optional>

namespace swf {

// Exact rank by sparse Gaussian elimination. The serial version is the reference; the
// parallel version eliminates the rows sharing a pivot column concurrently.
std::size_t rank_serial(const SparseMatrix& m);
std::size_t rank_parallel(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);

// Maintains a fully reduced row echelon basis of a growing span.
class IncrementalSpan {
public:
    explicit IncrementalSpan(std::size_t ncols) : ncols_(ncols) {}

    // Adds v to the span; returns false when v was already in it.
    bool add(const SparseVector& v);
    bool contains(const SparseVector& v) const;
    SparseVector reduce(const SparseVector& v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    const std::vector<SparseVector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t ncols_;
    std::vector<SparseVector> rows_;     // sorted by pivot column, pivot entry 1
    std::vector<std::size_t> pivots_;
};

struct AffineSolution {
    std::vector<Rational> particular;           // free variables set to zero
    std::vector<std::vector<Rational>> kernel;  // one basis vector per free variable
    std::vector<std::size_t> free_columns;
};

// Solves rows * x = rhs where each row is a sparse vector over n unknowns.
std::optional<AffineSolution> solve_affine(const std::vector<SparseVector>& rows, const std::vector<Rational>& rhs,
                                           std::size_t n);
std::optional<AffineSolution> solve_affine(const SparseMatrix& a, const std::vector<Rational>& rhs);

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& a);

SparseVector to_sparse(const std::vector<Rational>& dense);
std::vector<Rational> to_dense(const SparseVector& v, std::size_t n);

}  // namespace swf
