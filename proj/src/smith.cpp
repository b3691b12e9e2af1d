#include "swf/smith.hpp"

#include <stdexcept>
#include <utility>

namespace swf {

namespace {

// Position of the smallest nonzero |entry| in the trailing block starting at t, or false if the block is zero.
bool find_pivot(const IntegerMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc)
{
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < a.size(); ++i)
        for (std::size_t j = t; j < a[i].size(); ++j) {
            if (a[i][j] == 0) continue;
            Integer v = abs(a[i][j]);
            if (!found || v < best) {
                best = v;
                pr = i;
                pc = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

std::vector<Integer> smith_diagonal(IntegerMatrix a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(a, t, pr, pc)) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility: fold any entry not divisible by the pivot into row t
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) continue;
                    for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                    clean = false;
                    break;
                }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

std::size_t smith_rank(const IntegerMatrix& m)
{
    return smith_diagonal(m).size();
}

std::size_t smith_rank(const SparseMatrix& m)
{
    IntegerMatrix a(m.rows(), std::vector<Integer>(m.cols(), 0));
    for (const auto& t : m.triplets()) {
        if (!is_integral(t.value)) throw std::invalid_argument("smith_rank needs an integer matrix");
        a[t.row][t.col] = t.value.get_num();
    }
    return smith_rank(a);
}

}  // namespace swf
