#pragma once

#include "swf/chain_complex.hpp"

namespace swf {

// 0 -> sub -> mid -> quot -> 0 given by the inclusion and the projection.
struct ShortExactSequence {
    ChainMap inclusion;
    ChainMap projection;
};

// Throws NonExactnessError naming the first failing degree.
void check_exact(const ShortExactSequence& ses);

// How a preimage under the projection is chosen.
enum class LiftPolicy { minimal, shifted };

struct ConnectingMatrix {
    int degree = 0;                                   // source degree d in the quotient
    std::vector<std::vector<Rational>> source_basis;  // cycles of quot in degree d
    std::vector<std::vector<Rational>> target_basis;  // cycles of sub in degree d - 1
    std::vector<std::vector<Rational>> matrix;        // target_basis.size() rows
};

// Class of the connecting image of the cycle z in H_{d-1}(sub), in the homology_basis coordinates.
std::vector<Rational> connecting_image(const ShortExactSequence& ses, int d, const std::vector<Rational>& z,
                                       LiftPolicy policy = LiftPolicy::minimal);

// check = false skips the exactness check (the caller has already run check_exact).
ConnectingMatrix connecting_map_oracle(const ShortExactSequence& ses, int d, LiftPolicy policy = LiftPolicy::minimal,
                                       bool check = true);

}  // namespace swf
