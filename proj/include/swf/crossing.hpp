#pragma once

#include "swf/complexes.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>

namespace swf {

// Degree-0 map between the two sides (I: side0 -> side1, J: side1 -> side0).
struct DegreeZeroFamilies {
    std::map<OrbitPair, long> n;            // eta_a -> eta_a', 1_a -> 1_a'   mu(a) = mu(a')
    std::map<OrbitPair, long> m;            // eta_a -> 1_b'                  mu(a) - mu(b') = 1
    std::map<std::string, long> r;          // eta_a -> theta_tgt             mu(a) = mu(theta_tgt)
    std::map<std::string, long> s;          // theta_src -> 1_b'              mu(theta_src) - mu(b') = 1
    std::map<std::string, long> theta_eta;  // theta_src -> eta_a'            mu(a') = mu(theta_src)
    std::map<std::string, long> one_theta;  // 1_a -> theta_tgt               mu(a) + 1 = mu(theta_tgt)
    long theta_theta = 0;                   // theta_src -> Omega^shift theta_tgt
};

// Degree-1 self map of side0.
struct HomotopyFamilies {
    std::map<OrbitPair, long> n;            // eta_a -> eta_b, 1_a -> -1_b    mu(a) - mu(b) = -1
    std::map<OrbitPair, long> m;            // eta_a -> 1_c                   mu(a) = mu(c)
    std::map<std::string, long> eta_theta;  // eta_a -> theta                 mu(a) - mu(theta) = -1
    std::map<std::string, long> theta_one;  // theta -> 1_b                   mu(theta) = mu(b)
    std::map<std::string, long> theta_eta;  // theta -> eta_a                 mu(a) = mu(theta) + 1
};

struct CrossingMaps {
    DegreeZeroFamilies I;
    DegreeZeroFamilies J;
    HomotopyFamilies H;
};

struct CrossingData {
    std::string label;
    FloerData side0;
    FloerData side1;
    int sf_c = 0;
    std::optional<CrossingMaps> maps;  // absent: only the wall-crossing check applies
};

// theta_0 at index 0 on side0, theta_1 at -2 sf_c on side1, every family key within its index constraint.
void check_crossing(const CrossingData& cd);

// Omega-power shift of the theta -> theta component.
int theta_shift_I(const CrossingData& cd);
int theta_shift_J(const CrossingData& cd);

GenVector apply_I(const CrossingData& cd, const EquivariantGenerator& g);
GenVector apply_J(const CrossingData& cd, const EquivariantGenerator& g);
GenVector apply_H(const CrossingData& cd, const EquivariantGenerator& g);

// I: C(side0, N) -> C(side1, N + |sf_c|), J: C(side1, N) -> C(side0, N + |sf_c|), H: C(side0, N) -> C(side0, N).
ChainMap build_I(const CrossingData& cd, TruncationPolicy policy);
ChainMap build_J(const CrossingData& cd, TruncationPolicy policy);
ChainMap build_H(const CrossingData& cd, TruncationPolicy policy);

struct IdentityCheck {
    bool applicable = false;
    Integer value = 0;  // C1: the left-hand sum; C2, C3: largest absolute residual
    bool holds = true;
};

struct CrossingReport {
    Integer residual_ID_DI = 0;
    Integer residual_JD_DJ = 0;
    Integer residual_homotopy = 0;
    IdentityCheck c1, c2, c3;
    bool ok = false;
};

CrossingReport verify_crossing(const CrossingData& cd, TruncationPolicy policy);

// Alternating rank sum through degree 2M+1 minus M+1 once the tail (1 at even, 0 at odd) is visible.
// theta_index is the degree where the tail's tower starts counting from.
long euler_from_equivariant(const HomologyTable& table, int theta_index = 0);

struct WallcrossReport {
    int sf_c = 0;
    long casson0 = 0;
    long casson1 = 0;
    bool casson_ok = false;
    DegreeRange shared;
    std::vector<int> rank_mismatches;
    bool rank_iso_ok = false;
    HomologyTable ranks0, ranks1;
    std::optional<long> euler0, euler1;
    bool ok = false;
};

WallcrossReport wallcross_check(const CrossingData& cd, TruncationPolicy policy);

// Solves ID = DI and id - JI = DH + HD (and the crossing identities when sf_c = -1) for I and H
// with J fixed; I's theta -> theta coefficient is pinned to 1. Throws GenerationFailure when no
// integral solution is found.
CrossingMaps solve_crossing_maps(const FloerData& side0, const FloerData& side1, int sf_c,
                                 const DegreeZeroFamilies& J, std::uint64_t seed, int max_power = 3);

enum class CrossingKind { same_chamber, disappear, appear, mirror };

CrossingData generate_crossing(std::uint64_t seed, const GeneratorProfile& profile, CrossingKind kind);

// Sides of two successive sf_c = +1 crossings (no maps), sf_c = 2 overall.
CrossingData generate_double_crossing(std::uint64_t seed, const GeneratorProfile& profile);

CrossingData crossing_from_json(const nlohmann::json& j, const std::string& path = "$");
nlohmann::ordered_json crossing_to_json(const CrossingData& cd);
CrossingData parse_crossing(const std::string& bytes);
std::string serialize_crossing(const CrossingData& cd);

nlohmann::ordered_json to_json(const CrossingReport& r);
nlohmann::ordered_json to_json(const WallcrossReport& r);

}  // namespace swf
