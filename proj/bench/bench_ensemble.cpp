// Compares the serial reference trajectory ensemble against the OpenMP
// path: identical results by construction, wall time is the difference.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "srlab/sse.hpp"

using namespace srlab;

namespace {

double time_run(const SseConfig& config, ExecutionPolicy policy, double* checksum) {
    const auto start = std::chrono::steady_clock::now();
    const EnsembleStats stats = ensemble_stats(config, 40, policy);
    const auto stop = std::chrono::steady_clock::now();
    *checksum = stats.final_mean;
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    SseConfig config;
    config.split = make_split(3, 3, 0.5);
    config.d_tau = 1e-3;
    config.tau_max = 5.0;
    config.n_traj = argc > 1 ? static_cast<std::size_t>(std::atoll(argv[1])) : 2000;
    config.seed = 20260809;
    config.record_grid = {1.0, 5.0};

    double serial_mean = 0, parallel_mean = 0;
    const double t_serial = time_run(config, ExecutionPolicy::serial, &serial_mean);
    const double t_parallel = time_run(config, ExecutionPolicy::openmp, &parallel_mean);

    std::printf("trajectories        : %zu (N = 6, dg_tilde = 0.5, tau_max = %.1f, d_tau = %g)\n",
                config.n_traj, config.tau_max, config.d_tau);
    std::printf("serial reference    : %8.3f s   final mean %.12f\n", t_serial, serial_mean);
    std::printf("openmp (%2d threads) : %8.3f s   final mean %.12f\n", omp_get_max_threads(), t_parallel,
                parallel_mean);
    std::printf("speedup             : %8.2fx\n", t_serial / t_parallel);
    if (serial_mean != parallel_mean) {
        std::printf("MISMATCH between serial and parallel results\n");
        return 1;
    }
    std::printf("results identical   : yes\n");
    return 0;
}
