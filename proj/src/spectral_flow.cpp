#include "swf/spectral_flow.hpp"

#include "swf/errors.hpp"
#include "swf/json_util.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace swf {

void check_path(const HermitianPath& path)
{
    if (!(path.tol > 0)) throw ConstraintError("path tolerance must be positive");
    if (path.samples.empty()) throw ConstraintError("path has no samples");
    const Eigen::Index n = path.samples.front().matrix.rows();
    for (std::size_t i = 0; i < path.samples.size(); ++i) {
        const auto& s = path.samples[i];
        if (s.matrix.rows() != n || s.matrix.cols() != n)
            throw ConstraintError("sample " + std::to_string(i) + " is not " + std::to_string(n) + "x" + std::to_string(n));
        if (i > 0 && !(s.t > path.samples[i - 1].t))
            throw ConstraintError("sample " + std::to_string(i) + ": t is not strictly increasing");
        double skew = n ? (s.matrix - s.matrix.adjoint()).cwiseAbs().maxCoeff() : 0.0;
        if (skew > path.tol) throw ConstraintError("sample " + std::to_string(i) + " is not Hermitian within tol");
    }
}

std::vector<double> eigenvalues(const ComplexMatrix& m)
{
    if (m.rows() == 0) return {};
    ComplexMatrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

long count_crossings(const std::vector<std::vector<double>>& spectra, double tol)
{
    if (spectra.empty()) return 0;
    const std::size_t n = spectra.front().size();
    std::vector<int> last(n, 0);
    long flow = 0;
    for (const auto& ev : spectra)
        for (std::size_t i = 0; i < n; ++i) {
            int s = ev[i] > tol ? 1 : (ev[i] < -tol ? -1 : 0);
            if (s == 0) continue;
            if (last[i] != 0 && s != last[i]) flow += s;
            last[i] = s;
        }
    return flow;
}

namespace {

ComplexMatrix at_midpoint(const PathSample& a, const PathSample& b) { return (a.matrix + b.matrix) * 0.5; }

std::vector<std::vector<double>> spectra_of(const std::vector<PathSample>& samples, bool parallel)
{
    std::vector<std::vector<double>> out(samples.size());
    const long n = static_cast<long>(samples.size());
#pragma omp parallel for schedule(dynamic) if (parallel && n > 1)
    for (long i = 0; i < n; ++i) out[i] = eigenvalues(samples[i].matrix);
    return out;
}

}  // namespace

FlowResult spectral_flow_detail(const HermitianPath& path, const FlowOptions& options)
{
    check_path(path);
    const auto& first = path.samples.front();
    const auto& last = path.samples.back();
    if (wall_signature(first.matrix, path.tol) != 0) throw EndpointOnWallError("path starts on a wall (t = " + std::to_string(first.t) + ")");
    if (wall_signature(last.matrix, path.tol) != 0) throw EndpointOnWallError("path ends on a wall (t = " + std::to_string(last.t) + ")");

    std::vector<PathSample> samples = path.samples;
    std::vector<std::vector<double>> spectra = spectra_of(samples, options.parallel);
    std::vector<long> counts{count_crossings(spectra, path.tol)};
    int level = 0;
    while (true) {
        const std::size_t k = counts.size();
        if (k >= 3 && counts[k - 1] == counts[k - 2] && counts[k - 2] == counts[k - 3]) break;
        if (level >= options.max_levels || 2 * samples.size() - 1 > options.max_samples)
            throw ResolutionError("spectral flow did not stabilise within " + std::to_string(level) + " refinements");
        std::vector<PathSample> mids;
        for (std::size_t i = 0; i + 1 < samples.size(); ++i)
            mids.push_back({(samples[i].t + samples[i + 1].t) / 2, at_midpoint(samples[i], samples[i + 1])});
        auto mid_spectra = spectra_of(mids, options.parallel);
        std::vector<PathSample> merged;
        std::vector<std::vector<double>> merged_spectra;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            merged.push_back(std::move(samples[i]));
            merged_spectra.push_back(std::move(spectra[i]));
            if (i < mids.size()) {
                merged.push_back(std::move(mids[i]));
                merged_spectra.push_back(std::move(mid_spectra[i]));
            }
        }
        samples = std::move(merged);
        spectra = std::move(merged_spectra);
        counts.push_back(count_crossings(spectra, path.tol));
        ++level;
    }
    return {counts.back(), level, samples.size()};
}

long spectral_flow(const HermitianPath& path) { return spectral_flow_detail(path).flow; }

long spectral_flow_serial(const HermitianPath& path)
{
    FlowOptions o;
    o.parallel = false;
    return spectral_flow_detail(path, o).flow;
}

std::size_t wall_signature(const ComplexMatrix& m, double tol)
{
    std::size_t k = 0;
    for (double x : eigenvalues(m))
        if (std::abs(x) <= tol) ++k;
    return k;
}

HermitianPath concatenate(const HermitianPath& a, const HermitianPath& b)
{
    HermitianPath out;
    out.tol = std::min(a.tol, b.tol);
    const double a0 = a.samples.front().t, a1 = a.samples.back().t;
    const double b0 = b.samples.front().t, b1 = b.samples.back().t;
    for (const auto& s : a.samples) out.samples.push_back({0.5 * (s.t - a0) / (a1 - a0), s.matrix});
    for (std::size_t i = 1; i < b.samples.size(); ++i)
        out.samples.push_back({0.5 + 0.5 * (b.samples[i].t - b0) / (b1 - b0), b.samples[i].matrix});
    return out;
}

HermitianPath reversed(const HermitianPath& p)
{
    HermitianPath out;
    out.tol = p.tol;
    const double lo = p.samples.front().t, hi = p.samples.back().t;
    for (auto it = p.samples.rbegin(); it != p.samples.rend(); ++it) out.samples.push_back({lo + hi - it->t, it->matrix});
    return out;
}

KuranishiPrediction kuranishi_crossing(const LocalModelParams& p)
{
    if (p.lambda_prime == 0) throw DegenerateModelError("lambda_prime must be nonzero");
    if (p.gamma == 0) throw DegenerateModelError("gamma must be nonzero");
    if (!std::isfinite(p.lambda_prime) || !std::isfinite(p.gamma)) throw DegenerateModelError("model parameters must be finite");
    KuranishiPrediction k;
    // branch where t = -lambda'/(r^2 gamma)
    k.branch_side = (-p.lambda_prime / p.gamma) > 0 ? 1 : -1;
    k.sf_c = p.lambda_prime > 0 ? 1 : -1;
    k.branch_sign = k.sf_c * (k.branch_side < 0 ? 1 : -1);
    k.delta_lambda = -k.sf_c;
    return k;
}

HermitianPath path_from_json(const nlohmann::json& j, const std::string& path)
{
    using namespace json_util;
    HermitianPath out;
    const long dim = as_int(field(j, "dim", path), path + ".dim");
    if (dim < 0) throw ParseError(path + ".dim: must be nonnegative");
    if (auto t = optional_field(j, "tol", path)) out.tol = as_real(*t, path + ".tol");
    const auto& samples = as_array(field(j, "samples", path), path + ".samples");
    auto read = [&](const nlohmann::json& m, const std::string& p) {
        Eigen::MatrixXd out(dim, dim);
        const auto& rows = as_array(m, p);
        if (static_cast<long>(rows.size()) != dim) throw ParseError(p + ": expected " + std::to_string(dim) + " rows");
        for (long r = 0; r < dim; ++r) {
            const auto& row = as_array(rows[r], at(p, r));
            if (static_cast<long>(row.size()) != dim)
                throw ParseError(at(p, r) + ": expected " + std::to_string(dim) + " entries");
            for (long c = 0; c < dim; ++c) out(r, c) = as_real(row[c], at(at(p, r), c));
        }
        return out;
    };
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::string p = at(path + ".samples", i);
        PathSample s;
        s.t = as_real(field(samples[i], "t", p), p + ".t");
        Eigen::MatrixXd re = read(field(samples[i], "re", p), p + ".re");
        Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dim, dim);
        if (auto q = optional_field(samples[i], "im", p)) im = read(*q, p + ".im");
        s.matrix = ComplexMatrix(dim, dim);
        s.matrix.real() = re;
        s.matrix.imag() = im;
        out.samples.push_back(std::move(s));
    }
    check_path(out);
    return out;
}

nlohmann::ordered_json path_to_json(const HermitianPath& p)
{
    nlohmann::ordered_json j;
    j["dim"] = p.dim();
    j["tol"] = p.tol;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : p.samples) {
        auto re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
        for (Eigen::Index r = 0; r < s.matrix.rows(); ++r) {
            auto rr = nlohmann::ordered_json::array(), ii = nlohmann::ordered_json::array();
            for (Eigen::Index c = 0; c < s.matrix.cols(); ++c) {
                rr.push_back(s.matrix(r, c).real());
                ii.push_back(s.matrix(r, c).imag());
            }
            re.push_back(rr);
            im.push_back(ii);
        }
        arr.push_back({{"t", s.t}, {"re", re}, {"im", im}});
    }
    j["samples"] = arr;
    return j;
}

HermitianPath parse_path(const std::string& bytes) { return path_from_json(json_util::parse_bytes(bytes)); }

nlohmann::ordered_json to_json(const KuranishiPrediction& k)
{
    nlohmann::ordered_json j;
    j["branch_side"] = k.branch_side;
    j["branch_sign"] = k.branch_sign;
    j["delta_lambda"] = k.delta_lambda;
    j["sf_c"] = k.sf_c;
    return j;
}

}  // namespace swf
