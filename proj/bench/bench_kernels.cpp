#include "swf/complexes.hpp"
#include "swf/linalg.hpp"
#include "swf/parallel.hpp"
#include "swf/spectral_flow.hpp"

#include <chrono>
#include <cstdio>
#include <random>

using namespace swf;

namespace {

template <class F>
double best_of(int reps, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

SparseMatrix product_matrix(std::size_t rows, std::size_t inner, std::size_t cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-2, 2);
    SparseMatrix a(rows, inner), b(inner, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < inner; ++c)
            if (u(rng) < 0.08) a.add(r, c, v(rng));
    for (std::size_t r = 0; r < inner; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (u(rng) < 0.08) b.add(r, c, v(rng));
    return a * b;
}

}  // namespace

int main(int argc, char** argv)
{
    const int threads = configure_threads_from_env();
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads %d\n", threads);

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial s", "parallel s", "check");
    for (std::size_t n : {60, 120, 200}) {
        SparseMatrix m = product_matrix(n, n / 2, n, n);
        std::size_t rs = 0, rp = 0;
        double ts = best_of(reps, [&] { rs = rank_serial(m); });
        double tp = best_of(reps, [&] { rp = rank_parallel(m); });
        char name[64];
        std::snprintf(name, sizeof name, "rank %zux%zu nnz=%zu", n, n, m.nonzeros());
        std::printf("%-28s %12.4f %12.4f %8s\n", name, ts, tp, rs == rp ? "ok" : "MISMATCH");
    }

    GeneratorProfile p{12, -4, 4, true, 2};
    FloerData d = generate_admissible(11, p);
    for (int n : {4, 8, 12}) {
        ChainComplex c = build_equivariant(d, {n});
        HomologyTable hs, hp;
        double ts = best_of(reps, [&] { hs = homology_serial(c); });
        double tp = best_of(reps, [&] { hp = homology(c); });
        char name[64];
        std::snprintf(name, sizeof name, "homology N=%d dim=%zu", n, c.total_dim());
        std::printf("%-28s %12.4f %12.4f %8s\n", name, ts, tp, hs.ranks == hp.ranks ? "ok" : "MISMATCH");
    }

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0, 1);
    HermitianPath path;
    for (int i = 0; i < 64; ++i) {
        ComplexMatrix a(24, 24);
        for (int r = 0; r < 24; ++r)
            for (int c = 0; c < 24; ++c) a(r, c) = {g(rng), g(rng)};
        path.samples.push_back({i / 63.0, (a + a.adjoint()) * 0.5});
    }
    long fs = 0, fp = 0;
    double ts = best_of(reps, [&] { fs = spectral_flow_serial(path); });
    double tp = best_of(reps, [&] { fp = spectral_flow(path); });
    std::printf("%-28s %12.4f %12.4f %8s\n", "spectral flow 24x24 x64", ts, tp, fs == fp ? "ok" : "MISMATCH");
    return 0;
}
