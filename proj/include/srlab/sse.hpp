#pragma once

#include <cstdint>
#include <vector>

#include "srlab/product_space.hpp"

namespace srlab {

struct SseConfig {
    TwoEnsembleSplit split;
    double d_tau = 1e-3;
    double tau_max = 5.0;
    std::size_t n_traj = 10000;
    std::uint64_t seed = 0;
    std::vector<double> record_grid; // tau values at which <Jz>/j is recorded

    void validate() const;
};

struct TrajectoryRecord {
    std::size_t seed_index = 0;
    std::vector<double> jz_over_j; // on the record grid
    double final_jz_over_j = 0;
};

enum class ExecutionPolicy { serial, openmp };

// One Euler-Maruyama step of the diffusive unraveling in rescaled time,
//   psi <- psi + D1(psi) d_tau + D2(psi) dW, then renormalize, with
//   D1 = (1/2J) (2 <Jp> Jm - Jp Jm - <Jp><Jm>) psi
//   D2 = (1/sqrt(J)) (Jm - <Jm>) psi
// where Jm is the collective lowering of the split and <Jp> = <Jm>*.
// Returns the signed pre-renormalization norm deviation (norm - 1).
// Scalar may be double (real amplitudes are closed under the dynamics) or
// std::complex<double>.
template <class Scalar>
double sse_step(const TwoGroupSpace& space, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& psi, double d_tau,
                double dw);

// Runs one trajectory from the fully excited product state. Deterministic
// in (config.seed, traj_index): the noise stream is derived per index.
TrajectoryRecord run_trajectory(const SseConfig& config, std::size_t traj_index);

// Same, from an arbitrary (normalized) initial state on the complex path.
TrajectoryRecord run_trajectory_from(const SseConfig& config, std::size_t traj_index,
                                     const Eigen::VectorXcd& psi0);

struct EnsembleStats {
    std::vector<TrajectoryRecord> trajectories; // ordered by seed_index
    std::vector<double> mean_jz_over_j;         // on the record grid
    std::vector<double> stderr_jz_over_j;
    double final_mean = 0;
    double final_std = 0;
    Histogram final_histogram;
};

// Ensemble of independent trajectories. The parallel and serial paths give
// identical results: each trajectory owns a derived noise stream and the
// reduction runs in index order.
EnsembleStats ensemble_stats(const SseConfig& config, std::size_t histogram_bins = 40,
                             ExecutionPolicy policy = ExecutionPolicy::openmp);

} // namespace srlab
