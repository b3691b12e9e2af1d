#include "swf/snake.hpp"

#include "swf/errors.hpp"
#include "swf/linalg.hpp"

namespace swf {

void check_exact(const ShortExactSequence& ses)
{
    const ChainMap& f = ses.inclusion;
    const ChainMap& g = ses.projection;
    if (f.degree() != 0 || g.degree() != 0) throw NonExactnessError("maps of a short exact sequence have degree 0");
    DegreeRange r = f.target().degrees();
    r.lo = std::min({r.lo, f.source().degrees().lo, g.target().degrees().lo});
    r.hi = std::max({r.hi, f.source().degrees().hi, g.target().degrees().hi});
    for (int d = r.lo; d <= r.hi; ++d) {
        auto fail = [d](const std::string& why) {
            throw NonExactnessError("sequence not exact at degree " + std::to_string(d) + ": " + why);
        };
        if (!(g.block(d) * f.block(d)).is_zero()) fail("composite is nonzero");
        const std::size_t rf = rank(f.block(d));
        const std::size_t rg = rank(g.block(d));
        if (rf != f.source().dim(d)) fail("inclusion is not injective");
        if (rg != g.target().dim(d)) fail("projection is not surjective");
        if (rf + rg != f.target().dim(d)) fail("middle is not exact");
    }
    for (const ChainMap* m : {&f, &g})
        for (const auto& [d, res] : chain_map_residual(*m))
            if (!res.is_zero()) throw NonExactnessError("map is not a chain map at degree " + std::to_string(d));
}

std::vector<Rational> connecting_image(const ShortExactSequence& ses, int d, const std::vector<Rational>& z,
                                       LiftPolicy policy)
{
    const ChainMap& f = ses.inclusion;
    const ChainMap& g = ses.projection;
    if (!is_cycle(g.target(), d, z)) throw NonCycleError("vector is not a cycle in degree " + std::to_string(d));

    auto lift = solve_affine(g.block(d), z);
    if (!lift) throw NonExactnessError("projection is not surjective at degree " + std::to_string(d));
    std::vector<Rational> y = lift->particular;
    if (policy == LiftPolicy::shifted) {
        for (std::size_t i = 0; i < lift->kernel.size(); ++i) {
            Rational c = static_cast<long>((i * 7 + 3) % 5) - 2;
            for (std::size_t k = 0; k < y.size(); ++k) y[k] += c * lift->kernel[i][k];
        }
    }
    std::vector<Rational> w = f.target().boundary(d).apply(y);
    auto pull = solve_affine(f.block(d - 1), w);
    if (!pull) throw NonExactnessError("boundary of the lift leaves the subcomplex at degree " + std::to_string(d - 1));
    auto basis = homology_basis(f.source(), d - 1);
    return homology_coordinates(f.source(), d - 1, basis, pull->particular);
}

ConnectingMatrix connecting_map_oracle(const ShortExactSequence& ses, int d, LiftPolicy policy, bool check)
{
    if (check) check_exact(ses);
    ConnectingMatrix out;
    out.degree = d;
    out.source_basis = homology_basis(ses.projection.target(), d);
    out.target_basis = homology_basis(ses.inclusion.source(), d - 1);
    out.matrix.assign(out.target_basis.size(), std::vector<Rational>(out.source_basis.size(), 0));
    for (std::size_t j = 0; j < out.source_basis.size(); ++j) {
        auto col = connecting_image(ses, d, out.source_basis[j], policy);
        for (std::size_t i = 0; i < col.size(); ++i) out.matrix[i][j] = col[i];
    }
    return out;
}

}  // namespace swf
