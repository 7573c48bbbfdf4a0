// Serial vs. parallel timing of the two numeric workhorses: the
// componentwise bracket oracle and the circle-Laplacian eigensolve.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "cforge/numeric.hpp"

#ifdef CFORGE_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

double wall_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int trials = argc > 1 ? std::atoi(argv[1]) : 50;
    int grid = argc > 2 ? std::atoi(argv[2]) : 512;

#ifdef CFORGE_HAVE_OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif

    const std::vector<int> dims = {3, 4, 5};
    const std::uint64_t seed = 0x5eed0001ULL;

    std::size_t mismatches = 0;
    double t_serial = wall_ms([&] {
        mismatches += cforge::run_bracket_oracle(trials, dims, seed, false).size();
    });
    double t_par = wall_ms([&] {
        mismatches += cforge::run_bracket_oracle(trials, dims, seed, true).size();
    });
    std::printf("oracle  trials=%d  serial %8.1f ms  parallel %8.1f ms  speedup %.2fx\n",
                trials, t_serial, t_par, t_serial / t_par);

    cforge::CircleGrid g(grid);
    std::vector<double> ev;
    double g_serial = wall_ms([&] { ev = g.eigenvalues(12, false); });
    double g_par = wall_ms([&] { ev = g.eigenvalues(12, true); });
    std::printf("circle  n=%d      serial %8.1f ms  parallel %8.1f ms  speedup %.2fx\n",
                grid, g_serial, g_par, g_serial / g_par);

    if (mismatches != 0) {
        std::printf("oracle mismatches: %zu\n", mismatches);
        return 1;
    }
    return 0;
}
