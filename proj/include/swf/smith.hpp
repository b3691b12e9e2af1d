#pragma once

#include "swf/sparse_matrix.hpp"

#include <vector>

namespace swf {

using IntegerMatrix = std::vector<std::vector<Integer>>;

// Invariant factors d1 | d2 | ... of an integer matrix (nonzero ones only).
std::vector<Integer> smith_diagonal(IntegerMatrix a);

// Rank over the rationals read off the Smith normal form. Entries must be integers.
std::size_t smith_rank(const SparseMatrix& m);
std::size_t smith_rank(const IntegerMatrix& m);

}  // namespace swf
