#pragma once

#include "swf/chain_complex.hpp"
#include "swf/floer_data.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace swf {

enum class GenKind { eta = 0, one = 1, theta = 2 };

// Omega^power (x) eta_orbit, Omega^power (x) 1_orbit or Omega^power (x) theta (orbit is the reducible id).
struct EquivariantGenerator {
    GenKind kind = GenKind::eta;
    std::string orbit;
    int power = 0;

    friend bool operator<(const EquivariantGenerator& a, const EquivariantGenerator& b)
    {
        return std::tie(a.orbit, a.power, a.kind) < std::tie(b.orbit, b.power, b.kind);
    }
    friend bool operator==(const EquivariantGenerator& a, const EquivariantGenerator& b)
    {
        return a.kind == b.kind && a.orbit == b.orbit && a.power == b.power;
    }
};

using GenVector = std::map<EquivariantGenerator, Rational>;

void add_term(GenVector& v, const EquivariantGenerator& g, const Rational& c);

int degree(const FloerData& data, const EquivariantGenerator& g);
std::string label(const EquivariantGenerator& g);

// All generators with power <= max_power, by degree then orbit order.
std::vector<EquivariantGenerator> equivariant_generators(const FloerData& data, int max_power);

// D applied to one generator (no truncation needed: D never raises the power).
GenVector equivariant_boundary(const FloerData& data, const EquivariantGenerator& g);
GenVector equivariant_boundary(const FloerData& data, const GenVector& x);

struct TruncationPolicy {
    int max_power = 0;
};

// Degrees d <= 2N + min index - 1 (and below the top degree).
DegreeRange certified_range(const FloerData& data, TruncationPolicy policy);

// Generator behind each basis slot of an equivariant complex, same layout as the complex.
std::map<int, std::vector<EquivariantGenerator>> equivariant_basis(const FloerData& data, TruncationPolicy policy);

// Complex spanned by a D-closed set of generators, in the standard layout.
ChainComplex build_generated(const FloerData& data, const std::vector<EquivariantGenerator>& gens,
                             DegreeRange certified);

// Dense coordinates of x against an ordered list of generators (all terms must be listed).
std::vector<Rational> coordinates(const std::vector<EquivariantGenerator>& basis, const GenVector& x);

ChainComplex build_equivariant(const FloerData& data, TruncationPolicy policy);
// No admissibility check; used to observe D^2 on perturbed data.
ChainComplex build_equivariant_unchecked(const FloerData& data, TruncationPolicy policy);
HomologyTable equivariant_homology(const FloerData& data, TruncationPolicy policy);

ChainComplex build_nonequivariant(const FloerData& data);
HomologyTable swf_homology(const FloerData& data);
long casson(const FloerData& data);

// Throws AdmissibilityError naming the first violated instance.
void require_admissible(const FloerData& data);

}  // namespace swf
