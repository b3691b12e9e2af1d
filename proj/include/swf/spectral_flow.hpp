#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace swf {

using ComplexMatrix = Eigen::MatrixXcd;

struct PathSample {
    double t = 0;
    ComplexMatrix matrix;
};

// Piecewise-linear path of Hermitian matrices through the samples.
struct HermitianPath {
    std::vector<PathSample> samples;
    double tol = 1e-9;

    std::size_t dim() const { return samples.empty() ? 0 : static_cast<std::size_t>(samples.front().matrix.rows()); }
};

// t strictly increasing, equal square shapes, ||M - M^*||_max <= tol. Throws ConstraintError.
void check_path(const HermitianPath& path);

// Ascending eigenvalues of the Hermitian part.
std::vector<double> eigenvalues(const ComplexMatrix& m);

struct FlowOptions {
    int max_levels = 10;             // midpoint refinements beyond the input samples
    std::size_t max_samples = 65536;
    bool parallel = true;
};

struct FlowResult {
    long flow = 0;
    int levels = 0;           // refinements performed
    std::size_t samples = 0;  // samples in the finest level
};

// Net count of eigenvalues crossing zero upward minus downward. Refines by midpoints until the
// count agrees on three consecutive levels.
FlowResult spectral_flow_detail(const HermitianPath& path, const FlowOptions& options = {});
long spectral_flow(const HermitianPath& path);
long spectral_flow_serial(const HermitianPath& path);

// Count along a fixed list of spectra (sorted branches, last strict sign per branch).
long count_crossings(const std::vector<std::vector<double>>& spectra, double tol);

std::size_t wall_signature(const ComplexMatrix& m, double tol = 1e-9);

// a on [0, 1/2] followed by b on [1/2, 1]; the junction sample is taken from a.
HermitianPath concatenate(const HermitianPath& a, const HermitianPath& b);
HermitianPath reversed(const HermitianPath& p);

struct LocalModelParams {
    double lambda_prime = 0;
    double gamma = 0;
};

struct KuranishiPrediction {
    int branch_side = 0;   // sign of t where the irreducible branch lives
    int branch_sign = 0;   // its contribution to the Euler count before/after
    int delta_lambda = 0;  // predicted invariant after minus before
    int sf_c = 0;
};

KuranishiPrediction kuranishi_crossing(const LocalModelParams& p);

HermitianPath path_from_json(const nlohmann::json& j, const std::string& path = "$");
nlohmann::ordered_json path_to_json(const HermitianPath& p);
HermitianPath parse_path(const std::string& bytes);

nlohmann::ordered_json to_json(const KuranishiPrediction& k);

}  // namespace swf
