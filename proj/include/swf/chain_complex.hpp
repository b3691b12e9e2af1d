#pragma once

#include "swf/report.hpp"
#include "swf/sparse_matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace swf {

struct DegreeRange {
    int lo = 0;
    int hi = -1;

    bool empty() const { return lo > hi; }
    bool contains(int d) const { return lo <= d && d <= hi; }
    DegreeRange intersect(const DegreeRange& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

inline bool operator==(const DegreeRange& a, const DegreeRange& b)
{
    return (a.empty() && b.empty()) || (a.lo == b.lo && a.hi == b.hi);
}

class ChainComplex {
public:
    ChainComplex() = default;
    // basis[k] lists the generators of degree lo + k; boundary[k] maps degree lo + k to lo + k - 1.
    // Without an explicit certified range the top degree is left uncertified.
    ChainComplex(int lo, std::vector<std::vector<std::string>> basis, std::vector<SparseMatrix> boundary,
                 std::optional<DegreeRange> certified = std::nullopt);

    DegreeRange degrees() const { return {lo_, lo_ + static_cast<int>(basis_.size()) - 1}; }
    DegreeRange certified() const { return certified_; }
    std::size_t dim(int d) const;
    const std::vector<std::string>& basis(int d) const;
    // d : C_d -> C_{d-1}; zero matrix of the right shape outside the stored range.
    SparseMatrix boundary(int d) const;
    std::size_t total_dim() const;
    std::optional<std::size_t> index_of(int d, const std::string& label) const;

private:
    int lo_ = 0;
    std::vector<std::vector<std::string>> basis_;
    std::vector<SparseMatrix> boundary_;
    DegreeRange certified_;
};

class ChainMap {
public:
    ChainMap() = default;
    ChainMap(std::shared_ptr<const ChainComplex> source, std::shared_ptr<const ChainComplex> target, int degree,
             std::map<int, SparseMatrix> blocks);

    const ChainComplex& source() const { return *source_; }
    const ChainComplex& target() const { return *target_; }
    std::shared_ptr<const ChainComplex> source_ptr() const { return source_; }
    std::shared_ptr<const ChainComplex> target_ptr() const { return target_; }
    int degree() const { return degree_; }
    // Block from source degree d to target degree d + degree().
    SparseMatrix block(int d) const;

private:
    std::shared_ptr<const ChainComplex> source_;
    std::shared_ptr<const ChainComplex> target_;
    int degree_ = 0;
    std::map<int, SparseMatrix> blocks_;
};

struct HomologyTable {
    std::map<int, std::size_t> ranks;  // every degree of the complex, zeros included
    DegreeRange certified;
    std::optional<long> euler;

    std::size_t rank(int d) const
    {
        auto it = ranks.find(d);
        return it == ranks.end() ? 0 : it->second;
    }
};

ValidationReport check_d_squared(const ChainComplex& c);

// Rank of every boundary map d_lo .. d_{hi+1}, computed concurrently per degree.
std::map<int, std::size_t> boundary_ranks(const ChainComplex& c);
std::map<int, std::size_t> boundary_ranks_serial(const ChainComplex& c);

HomologyTable homology(const ChainComplex& c);
HomologyTable homology_serial(const ChainComplex& c);

long euler_characteristic(const ChainComplex& c);

// Per source degree d: d_T F - F d_S. Zero everywhere exactly when F is a chain map.
std::map<int, SparseMatrix> chain_map_residual(const ChainMap& f);

// Cycle representatives extending a basis of the boundaries to a basis of the cycles.
std::vector<std::vector<Rational>> homology_basis(const ChainComplex& c, int d);

// Coordinates of the class of cycle z in the given homology basis.
std::vector<Rational> homology_coordinates(const ChainComplex& c, int d,
                                           const std::vector<std::vector<Rational>>& basis,
                                           const std::vector<Rational>& z);

bool is_cycle(const ChainComplex& c, int d, const std::vector<Rational>& z);

// Rank of the map induced on H_d.
std::size_t induced_rank(const ChainMap& f, int d);

}  // namespace swf
