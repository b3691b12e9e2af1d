#include "swf/chain_complex.hpp"

#include "swf/errors.hpp"
#include "swf/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace swf {

ChainComplex::ChainComplex(int lo, std::vector<std::vector<std::string>> basis, std::vector<SparseMatrix> boundary,
                           std::optional<DegreeRange> certified)
    : lo_(lo), basis_(std::move(basis)), boundary_(std::move(boundary))
{
    if (boundary_.size() != basis_.size()) throw std::invalid_argument("one boundary block per degree expected");
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        std::size_t below = k == 0 ? 0 : basis_[k - 1].size();
        if (boundary_[k].cols() != basis_[k].size() || boundary_[k].rows() != below)
            throw std::invalid_argument("boundary shape mismatch at degree " + std::to_string(lo_ + int(k)));
    }
    DegreeRange full = degrees();
    if (certified) {
        certified_ = certified->intersect(full);
    } else {
        certified_ = {full.lo, full.hi - 1};
    }
}

std::size_t ChainComplex::dim(int d) const
{
    if (!degrees().contains(d)) return 0;
    return basis_[d - lo_].size();
}

const std::vector<std::string>& ChainComplex::basis(int d) const
{
    static const std::vector<std::string> none;
    if (!degrees().contains(d)) return none;
    return basis_[d - lo_];
}

SparseMatrix ChainComplex::boundary(int d) const
{
    if (degrees().contains(d)) return boundary_[d - lo_];
    return SparseMatrix(dim(d - 1), dim(d));
}

std::size_t ChainComplex::total_dim() const
{
    std::size_t n = 0;
    for (const auto& b : basis_) n += b.size();
    return n;
}

std::optional<std::size_t> ChainComplex::index_of(int d, const std::string& label) const
{
    const auto& b = basis(d);
    auto it = std::find(b.begin(), b.end(), label);
    if (it == b.end()) return std::nullopt;
    return static_cast<std::size_t>(it - b.begin());
}

ChainMap::ChainMap(std::shared_ptr<const ChainComplex> source, std::shared_ptr<const ChainComplex> target, int degree,
                   std::map<int, SparseMatrix> blocks)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), blocks_(std::move(blocks))
{
    for (const auto& [d, m] : blocks_) {
        if (m.cols() != source_->dim(d) || m.rows() != target_->dim(d + degree_))
            throw std::invalid_argument("chain map block shape mismatch at degree " + std::to_string(d));
    }
}

SparseMatrix ChainMap::block(int d) const
{
    auto it = blocks_.find(d);
    if (it != blocks_.end()) return it->second;
    return SparseMatrix(target_->dim(d + degree_), source_->dim(d));
}

ValidationReport check_d_squared(const ChainComplex& c)
{
    ValidationReport report;
    DegreeRange r = c.degrees();
    for (int d = r.lo + 2; d <= r.hi; ++d) {
        SparseMatrix sq = c.boundary(d - 1) * c.boundary(d);
        for (const auto& t : sq.triplets()) {
            report.add({"d^2", {std::to_string(d), c.basis(d - 2)[t.row], c.basis(d)[t.col]}, t.value});
        }
    }
    return report;
}

namespace {

std::map<int, std::size_t> ranks_impl(const ChainComplex& c, bool parallel)
{
    DegreeRange r = c.degrees();
    std::map<int, std::size_t> out;
    if (r.empty()) return out;
    const int n = r.hi - r.lo + 2;  // d_lo .. d_{hi+1}
    std::vector<std::size_t> ranks(n, 0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < n; ++k) ranks[k] = rank_serial(c.boundary(r.lo + k));
    } else {
        for (int k = 0; k < n; ++k) ranks[k] = rank_serial(c.boundary(r.lo + k));
    }
    for (int k = 0; k < n; ++k) out[r.lo + k] = ranks[k];
    return out;
}

HomologyTable homology_impl(const ChainComplex& c, bool parallel)
{
    ValidationReport sq = check_d_squared(c);
    if (!sq.ok) {
        const auto& v = sq.violations.front();
        throw SquareNonzeroError("boundary squares to a nonzero map at degree " + v.witness.front());
    }
    HomologyTable t;
    t.certified = c.certified();
    auto br = ranks_impl(c, parallel);
    DegreeRange r = c.degrees();
    for (int d = r.lo; d <= r.hi; ++d) t.ranks[d] = c.dim(d) - br[d] - br[d + 1];

    bool supported = true;
    long chi = 0;
    for (const auto& [d, k] : t.ranks) {
        if (k == 0) continue;
        if (!t.certified.contains(d)) supported = false;
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k);
    }
    if (supported) t.euler = chi;
    return t;
}

}  // namespace

std::map<int, std::size_t> boundary_ranks(const ChainComplex& c) { return ranks_impl(c, true); }
std::map<int, std::size_t> boundary_ranks_serial(const ChainComplex& c) { return ranks_impl(c, false); }

HomologyTable homology(const ChainComplex& c) { return homology_impl(c, true); }
HomologyTable homology_serial(const ChainComplex& c) { return homology_impl(c, false); }

long euler_characteristic(const ChainComplex& c)
{
    long chi = 0;
    DegreeRange r = c.degrees();
    for (int d = r.lo; d <= r.hi; ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(d));
    return chi;
}

std::map<int, SparseMatrix> chain_map_residual(const ChainMap& f)
{
    std::map<int, SparseMatrix> out;
    DegreeRange r = f.source().degrees();
    for (int d = r.lo; d <= r.hi; ++d) {
        SparseMatrix lhs = f.target().boundary(d + f.degree()) * f.block(d);
        SparseMatrix rhs = f.block(d - 1) * f.source().boundary(d);
        out.emplace(d, lhs - rhs);
    }
    return out;
}

bool is_cycle(const ChainComplex& c, int d, const std::vector<Rational>& z)
{
    auto image = c.boundary(d).apply(z);
    return std::all_of(image.begin(), image.end(), [](const Rational& q) { return q == 0; });
}

std::vector<std::vector<Rational>> homology_basis(const ChainComplex& c, int d)
{
    const std::size_t n = c.dim(d);
    IncrementalSpan span(n);
    SparseMatrix above = c.boundary(d + 1);
    for (std::size_t j = 0; j < above.cols(); ++j) span.add(above.column(j));
    std::vector<std::vector<Rational>> basis;
    for (auto& z : kernel_basis(c.boundary(d))) {
        if (span.add(to_sparse(z))) basis.push_back(std::move(z));
    }
    return basis;
}

std::vector<Rational> homology_coordinates(const ChainComplex& c, int d,
                                           const std::vector<std::vector<Rational>>& basis,
                                           const std::vector<Rational>& z)
{
    if (!is_cycle(c, d, z)) throw NonCycleError("vector is not a cycle in degree " + std::to_string(d));
    const std::size_t n = c.dim(d);
    SparseMatrix above = c.boundary(d + 1);
    SparseMatrix system(n, basis.size() + above.cols());
    for (std::size_t i = 0; i < basis.size(); ++i) system.set_column(i, to_sparse(basis[i]));
    for (std::size_t j = 0; j < above.cols(); ++j) system.set_column(basis.size() + j, above.column(j));
    auto sol = solve_affine(system, z);
    if (!sol) throw std::logic_error("homology basis does not span the cycles in degree " + std::to_string(d));
    return std::vector<Rational>(sol->particular.begin(), sol->particular.begin() + basis.size());
}

std::size_t induced_rank(const ChainMap& f, int d)
{
    const int e = d + f.degree();
    SparseMatrix fd = f.block(d);
    SparseMatrix above = f.target().boundary(e + 1);
    IncrementalSpan span(f.target().dim(e));
    for (std::size_t j = 0; j < above.cols(); ++j) span.add(above.column(j));
    const std::size_t base = span.dim();
    for (const auto& z : kernel_basis(f.source().boundary(d))) span.add(to_sparse(fd.apply(z)));
    return span.dim() - base;
}

}  // namespace swf
