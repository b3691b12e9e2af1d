#include "swf/sparse_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace swf {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries)
{
    SparseMatrix m(rows, cols);
    for (const auto& t : entries) m.add(t.row, t.col, t.value);
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows)
{
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    SparseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t j = 0; j < c; ++j)
            if (rows[i][j] != 0) m.data_[j].emplace_back(i, rows[i][j]);
    }
    return m;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v)
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix entry out of range");
    if (v == 0) return;
    auto& col = data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != col.end() && it->first == r) {
        it->second += v;
        if (it->second == 0) col.erase(it);
    } else {
        col.insert(it, {r, v});
    }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& col = data_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != col.end() && it->first == r) return it->second;
    return 0;
}

void SparseMatrix::set_column(std::size_t c, SparseVector v)
{
    data_.at(c) = std::move(v);
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : data_) n += c.size();
    return n;
}

std::vector<Triplet> SparseMatrix::triplets() const
{
    std::vector<Triplet> out;
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : data_[j]) out.push_back({i, j, v});
    std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const
{
    std::vector<SparseVector> rows(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : data_[j]) rows[i].emplace_back(j, v);
    return rows;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_);
    t.data_ = row_vectors();
    return t;
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& x) const
{
    if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (x[j] == 0) continue;
        for (const auto& [i, v] : data_[j]) y[i] += v * x[j];
    }
    return y;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const
{
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : data_[j]) d[i][j] = v;
    return d;
}

std::string SparseMatrix::to_triplet_text() const
{
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << ' ' << nonzeros() << '\n';
    for (const auto& t : triplets()) os << t.row << ' ' << t.col << ' ' << t.value.get_str() << '\n';
    return os.str();
}

SparseVector axpy(const SparseVector& a, const Rational& s, const SparseVector& b)
{
    SparseVector out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, s * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second + s * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) {
        SparseVector acc;
        for (const auto& [k, v] : b.data_[j]) acc = axpy(acc, v, a.data_[k]);
        c.data_[j] = std::move(acc);
    }
    return c;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    SparseMatrix c(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) c.data_[j] = axpy(a.data_[j], 1, b.data_[j]);
    return c;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    SparseMatrix c(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) c.data_[j] = axpy(a.data_[j], -1, b.data_[j]);
    return c;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace swf
