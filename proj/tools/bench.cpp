// Benchmark: production transforms (precomputed tables, OpenMP over shells)
// against the serial table-free reference implementation, plus the spectral
// operator kernels. Run with OMP_NUM_THREADS to vary the thread count;
// results are bitwise independent of it (no cross-thread reductions).

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vsh/grid.hpp"
#include "vsh/operators.hpp"
#include "vsh/random_fields.hpp"
#include "vsh/reference.hpp"

using namespace vsh;
using clk = std::chrono::steady_clock;

namespace {

template <typename F> double time_ms(int reps, F&& fn) {
    auto t0 = clk::now();
    for (int i = 0; i < reps; ++i) fn();
    auto t1 = clk::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_grid(int l_max, int n_r) {
    auto g = SphericalGrid::make_ball(l_max, n_r, 2.0);
    auto f = random_scalar_field(g, 1, {.l_limit = l_max, .radial_scale = 0.6});
    auto v = random_vector_field(g, 2, {.l_limit = l_max, .radial_scale = 0.6});
    auto fs = synthesize_scalar(f);
    auto vs = synthesize_vector(v);

    const int reps = l_max <= 8 ? 10 : 3;
    double t_as = time_ms(reps, [&] { (void)analyze_scalar(g, fs); });
    double t_as_ref = time_ms(1, [&] { (void)ref::analyze_scalar(g, fs); });
    double t_ss = time_ms(reps, [&] { (void)synthesize_scalar(f); });
    double t_ss_ref = time_ms(1, [&] { (void)ref::synthesize_scalar(f); });
    double t_av = time_ms(reps, [&] { (void)analyze_vector(g, vs); });
    double t_av_ref = time_ms(1, [&] { (void)ref::analyze_vector(g, vs); });
    double t_sv = time_ms(reps, [&] { (void)synthesize_vector(v); });
    double t_sv_ref = time_ms(1, [&] { (void)ref::synthesize_vector(v); });

    std::printf("grid l_max=%d n_r=%d\n", l_max, n_r);
    std::printf("  %-22s %10.3f ms   reference %10.3f ms   x%.1f\n",
                "analyze_scalar", t_as, t_as_ref, t_as_ref / t_as);
    std::printf("  %-22s %10.3f ms   reference %10.3f ms   x%.1f\n",
                "synthesize_scalar", t_ss, t_ss_ref, t_ss_ref / t_ss);
    std::printf("  %-22s %10.3f ms   reference %10.3f ms   x%.1f\n",
                "analyze_vector", t_av, t_av_ref, t_av_ref / t_av);
    std::printf("  %-22s %10.3f ms   reference %10.3f ms   x%.1f\n",
                "synthesize_vector", t_sv, t_sv_ref, t_sv_ref / t_sv);

    double t_grad = time_ms(reps, [&] { (void)gradient(f); });
    double t_curl = time_ms(reps, [&] { (void)curl(v); });
    double t_inv = time_ms(reps, [&] { (void)inverse_laplacian_value(f); });
    std::printf("  %-22s %10.3f ms\n", "gradient", t_grad);
    std::printf("  %-22s %10.3f ms\n", "curl", t_curl);
    std::printf("  %-22s %10.3f ms (cached Green matrices)\n",
                "inverse_laplacian", t_inv);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    bench_grid(8, 32);
    bench_grid(16, 64);
    return 0;
}
