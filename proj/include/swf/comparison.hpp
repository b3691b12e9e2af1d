#pragma once

#include "swf/complexes.hpp"
#include "swf/snake.hpp"

#include <json.hpp>

#include <optional>

namespace swf {

struct Cycle {
    int degree = 0;
    std::map<std::string, Rational> coefficients;  // free orbits of index == degree
};

ChainMap chain_map_i(const FloerData& data, TruncationPolicy policy);

// Generators of Q: everything except Omega^0 (x) eta_a.
std::vector<EquivariantGenerator> q_generators(const FloerData& data, TruncationPolicy policy);
ChainComplex q_complex(const FloerData& data, TruncationPolicy policy);
HomologyTable q_homology(const FloerData& data, TruncationPolicy policy);

// 0 -> Q -> C_U(1) -> C -> 0
ShortExactSequence comparison_sequence(const FloerData& data, TruncationPolicy policy);

struct LesNode {
    int degree = 0;
    std::string space;  // "Q", "equivariant" or "plain"
    std::size_t dim = 0;
    std::size_t rank_in = 0;
    std::size_t rank_out = 0;
    bool exact = false;
};

struct LesRelation {
    int k = 0;  // relation between degrees 2k and 2k+1
    long lhs = 0;
    long rhs = 0;
    bool holds = false;
};

struct ExactSequenceReport {
    DegreeRange range;
    std::vector<LesNode> nodes;
    std::vector<LesRelation> relations;
    bool ok = true;
};

// Exactness of H(Q) -> H(C_U(1)) -> H(C) -> H(Q)[-1] over the certified range, by ranks.
ExactSequenceReport exact_sequence_report(const FloerData& data, TruncationPolicy policy);
// Same, throwing ExactnessFailureError at the first inexact node.
ExactSequenceReport long_exact_sequence(const FloerData& data, TruncationPolicy policy);

struct DeltaResult {
    std::optional<int> theta_power;  // k with image c * [Theta_k]; empty when the target group vanishes
    Rational coefficient;
    int rounds = 0;
    GenVector representative;  // final cycle of Q reached by the chase
};

// Iterative chase: lift, apply D, cancel the 1-components with Q-elements Omega^{j+1} eta.
DeltaResult connecting_delta(const FloerData& data, const Cycle& z, TruncationPolicy policy);

// Sum of x . m . ... . m . v over descending chains.
Rational delta_closed_form(const FloerData& data, const Cycle& z);

// Omega^k theta + sum_i (u m^i)_e Omega^{k+1+i} eta_e : the cycle of Q with theta part Omega^k theta.
GenVector theta_cycle(const FloerData& data, int k);

// Dense coordinates of z in the non-equivariant complex.
std::vector<Rational> plain_coordinates(const FloerData& data, const Cycle& z);

enum class Filtration { equivariant, q, plain };

struct SpectralPage {
    int page = 0;
    std::map<std::pair<int, int>, std::size_t> entries;  // (k, l) -> rank, zero entries omitted
    DegreeRange certified;                               // total degrees k + l that are trustworthy
};

std::pair<SpectralPage, SpectralPage> spectral_pages(const FloerData& data, TruncationPolicy policy, Filtration which);

Cycle cycle_from_json(const nlohmann::json& j, const std::string& path = "$");

nlohmann::ordered_json to_json(const ExactSequenceReport& r);
nlohmann::ordered_json to_json(const SpectralPage& p);

}  // namespace swf
