#include "srlab/sse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srlab/rng.hpp"

namespace srlab {

void SseConfig::validate() const {
    if (!(d_tau > 0)) throw ConfigError("sse: d_tau must be positive");
    if (n_traj < 1) throw ConfigError("sse: n_traj must be >= 1");
    for (double t : record_grid)
        if (t < 0 || t > tau_max + 1e-12) throw ConfigError("sse: record grid outside [0, tau_max]");
}

namespace {

// workspace variant: the trajectory loop calls this millions of times
template <class Scalar>
double sse_step_with(const TwoGroupSpace& space, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& psi,
                     double d_tau, double dw, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lowered,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& raised) {
    const double inv_2j = 1.0 / (2.0 * space.big_j());
    const double inv_sqrt_j = 1.0 / std::sqrt(space.big_j());

    space.apply_lowering(psi, lowered);
    const Scalar exp_m = psi.dot(lowered); // <Jm>
    Scalar exp_p;
    if constexpr (std::is_same_v<Scalar, double>)
        exp_p = exp_m;
    else
        exp_p = std::conj(exp_m);
    space.apply_raising(lowered, raised); // Jp Jm psi

    psi += (d_tau * inv_2j) * (2.0 * exp_p * lowered - raised - exp_p * exp_m * psi) +
           (dw * inv_sqrt_j) * (lowered - exp_m * psi);

    const double norm = psi.norm();
    if (!std::isfinite(norm) || norm == 0.0)
        throw NanDetected("sse_step: state norm is not finite");
    psi /= norm;
    return norm - 1.0;
}

} // namespace

template <class Scalar>
double sse_step(const TwoGroupSpace& space, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& psi, double d_tau,
                double dw) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lowered(psi.size()), raised(psi.size());
    return sse_step_with(space, psi, d_tau, dw, lowered, raised);
}

template double sse_step<double>(const TwoGroupSpace&, Eigen::VectorXd&, double, double);
template double sse_step<std::complex<double>>(const TwoGroupSpace&, Eigen::VectorXcd&, double, double);

namespace {

template <class Scalar>
TrajectoryRecord run_from(const SseConfig& config, std::size_t traj_index,
                          Eigen::Matrix<Scalar, Eigen::Dynamic, 1> psi) {
    const TwoGroupSpace space(config.split);
    NormalSampler noise(derive_stream_seed(config.seed, traj_index));
    const double sqrt_dt = std::sqrt(config.d_tau);
    const auto total_steps = static_cast<std::size_t>(std::llround(config.tau_max / config.d_tau));

    // map each record time onto a step count
    std::vector<std::size_t> record_steps(config.record_grid.size());
    for (std::size_t r = 0; r < config.record_grid.size(); ++r)
        record_steps[r] = std::min(total_steps,
                                   static_cast<std::size_t>(std::llround(config.record_grid[r] / config.d_tau)));

    auto jz_over_j = [&] {
        double jz = 0.0;
        for (long i = 0; i < psi.size(); ++i) jz += space.jz_diagonal()[i] * std::norm(psi[i]);
        return jz / space.j_max();
    };

    TrajectoryRecord rec;
    rec.seed_index = traj_index;
    rec.jz_over_j.resize(config.record_grid.size());
    for (std::size_t r = 0; r < record_steps.size(); ++r)
        if (record_steps[r] == 0) rec.jz_over_j[r] = jz_over_j();

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lowered(psi.size()), raised(psi.size());
    try {
        for (std::size_t step = 1; step <= total_steps; ++step) {
            const double dw = sqrt_dt * noise.next();
            sse_step_with(space, psi, config.d_tau, dw, lowered, raised);
            for (std::size_t r = 0; r < record_steps.size(); ++r)
                if (record_steps[r] == step) rec.jz_over_j[r] = jz_over_j();
        }
    } catch (const NanDetected& e) {
        throw NanDetected(std::string(e.what()) + " (trajectory " + std::to_string(traj_index) + ")");
    }
    rec.final_jz_over_j = jz_over_j();
    return rec;
}

} // namespace

TrajectoryRecord run_trajectory(const SseConfig& config, std::size_t traj_index) {
    config.validate();
    // amplitudes that start real stay real; the fully excited start does
    return run_from<double>(config, traj_index, TwoGroupSpace(config.split).fully_excited());
}

TrajectoryRecord run_trajectory_from(const SseConfig& config, std::size_t traj_index,
                                     const Eigen::VectorXcd& psi0) {
    config.validate();
    return run_from<std::complex<double>>(config, traj_index, psi0);
}

EnsembleStats ensemble_stats(const SseConfig& config, std::size_t histogram_bins, ExecutionPolicy policy) {
    config.validate();
    EnsembleStats stats;
    stats.trajectories.resize(config.n_traj);

    std::string failure;
    if (policy == ExecutionPolicy::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(config.n_traj); ++i) {
            try {
                stats.trajectories[i] = run_trajectory(config, static_cast<std::size_t>(i));
            } catch (const std::exception& e) {
#pragma omp critical
                if (failure.empty()) failure = e.what();
            }
        }
    } else {
        for (std::size_t i = 0; i < config.n_traj; ++i)
            stats.trajectories[i] = run_trajectory(config, i);
    }
    if (!failure.empty()) throw NanDetected(failure);

    // reductions in seed_index order, independent of scheduling
    const std::size_t n_grid = config.record_grid.size();
    stats.mean_jz_over_j.assign(n_grid, 0.0);
    stats.stderr_jz_over_j.assign(n_grid, 0.0);
    const double n = static_cast<double>(config.n_traj);
    for (const auto& rec : stats.trajectories)
        for (std::size_t r = 0; r < n_grid; ++r) stats.mean_jz_over_j[r] += rec.jz_over_j[r];
    for (std::size_t r = 0; r < n_grid; ++r) stats.mean_jz_over_j[r] /= n;
    for (const auto& rec : stats.trajectories)
        for (std::size_t r = 0; r < n_grid; ++r) {
            const double d = rec.jz_over_j[r] - stats.mean_jz_over_j[r];
            stats.stderr_jz_over_j[r] += d * d;
        }
    for (std::size_t r = 0; r < n_grid; ++r)
        stats.stderr_jz_over_j[r] = std::sqrt(stats.stderr_jz_over_j[r] / n) / std::sqrt(n);

    for (const auto& rec : stats.trajectories) stats.final_mean += rec.final_jz_over_j;
    stats.final_mean /= n;
    for (const auto& rec : stats.trajectories) {
        const double d = rec.final_jz_over_j - stats.final_mean;
        stats.final_std += d * d;
    }
    stats.final_std = std::sqrt(stats.final_std / n);

    auto& h = stats.final_histogram;
    h.edges.resize(histogram_bins + 1);
    for (std::size_t b = 0; b <= histogram_bins; ++b)
        h.edges[b] = -1.0 + 2.0 * static_cast<double>(b) / static_cast<double>(histogram_bins);
    h.counts.assign(histogram_bins, 0);
    for (const auto& rec : stats.trajectories) {
        const double v = rec.final_jz_over_j;
        auto b = static_cast<long long>(std::floor((v + 1.0) / 2.0 * static_cast<double>(histogram_bins)));
        b = std::clamp(b, 0LL, static_cast<long long>(histogram_bins) - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    h.density.resize(histogram_bins);
    const double width = 2.0 / static_cast<double>(histogram_bins);
    for (std::size_t b = 0; b < histogram_bins; ++b)
        h.density[b] = static_cast<double>(h.counts[b]) / (n * width);
    return stats;
}

} // namespace srlab
