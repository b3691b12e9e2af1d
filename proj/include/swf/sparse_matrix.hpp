#pragma once

#include "swf/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace swf {

// Sorted (index, value) list with no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rational value;
};

// Column-compressed matrix over the rationals. Column j holds the image of basis vector j.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries);
    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, const Rational& v);
    Rational at(std::size_t r, std::size_t c) const;
    const SparseVector& column(std::size_t c) const { return data_[c]; }
    void set_column(std::size_t c, SparseVector v);

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    // Entries in (row, col) order.
    std::vector<Triplet> triplets() const;
    // Row-major sparse rows.
    std::vector<SparseVector> row_vectors() const;
    SparseMatrix transpose() const;
    std::vector<Rational> apply(const std::vector<Rational>& x) const;
    std::vector<std::vector<Rational>> to_dense() const;

    // "rows cols nnz" header followed by one "row col value" line per entry.
    std::string to_triplet_text() const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVector> data_;
};

// a + s*b on sorted sparse vectors.
SparseVector axpy(const SparseVector& a, const Rational& s, const SparseVector& b);

}  // namespace swf
