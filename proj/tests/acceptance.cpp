// Acceptance suite: one pass/fail line per criterion, each implemented at
// its stated tolerance. Run all (default) or a single one with --only N.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "srlab/chip_coupling.hpp"
#include "srlab/constants.hpp"
#include "srlab/coupled_basis.hpp"
#include "srlab/dark_space.hpp"
#include "srlab/dicke_propagator.hpp"
#include "srlab/lindblad.hpp"
#include "srlab/perturbation.hpp"
#include "srlab/rng.hpp"
#include "srlab/sse.hpp"

using namespace srlab;
using std::complex;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

struct Check {
    bool ok = true;
    std::string first_failure;
    std::string note;

    void require(bool cond, const std::string& detail) {
        if (!cond && ok) {
            ok = false;
            first_failure = detail;
        }
    }
};

// ---------------------------------------------------------------- criterion 1
void algebra_cross_validation(Check& c) {
    double max_diff = 0.0;
    for (int tj1 = 0; tj1 <= 16; ++tj1)
        for (int tj2 = 0; tj2 <= 16 - tj1; ++tj2) {
            const HalfInt j1 = h(tj1), j2 = h(tj2);
            const CgTable table(j1, j2);
            for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2)
                for (int tm = -tj; tm <= tj; tm += 2)
                    for (int tjp = std::abs(tj1 - tj2); tjp <= tj1 + tj2; tjp += 2)
                        for (auto op : {LadderOp::minus_1, LadderOp::plus_minus_1, LadderOp::minus_2,
                                        LadderOp::plus_minus_2}) {
                            const bool lowering =
                                op == LadderOp::minus_1 || op == LadderOp::minus_2;
                            const int tmp = lowering ? tm + 2 : tm;
                            if (std::abs(tmp) > tjp) continue;
                            const double dec = table.ladder(h(tj), h(tm), h(tjp), h(tmp), op);
                            const double we = ladder_element({j1, j2, h(tj), h(tm)},
                                                             {j1, j2, h(tjp), h(tmp)}, op,
                                                             LadderMethod::wigner_eckart);
                            max_diff = std::max(max_diff, std::abs(dec - we));
                        }
        }
    c.note = "max |decouple - wigner_eckart| = " + std::to_string(max_diff);
    c.require(max_diff <= 1e-10, c.note);
}

// ---------------------------------------------------------------- criterion 2
void cg_sum_rules(Check& c) {
    double worst = 0.0;
    for (int tj1 = 0; tj1 <= 16; ++tj1)
        for (int tj2 = 0; tj2 <= 16; ++tj2) {
            const CgTable table(h(tj1), h(tj2));
            for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2)
                for (int tjp = std::abs(tj1 - tj2); tjp <= tj1 + tj2; tjp += 2)
                    for (int tm = -std::min(tj, tjp); tm <= std::min(tj, tjp); tm += 2) {
                        double sum = 0.0;
                        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                            sum += table.cg(h(tm1), h(tm - tm1), h(tj)) *
                                   table.cg(h(tm1), h(tm - tm1), h(tjp));
                        worst = std::max(worst, std::abs(sum - (tj == tjp ? 1.0 : 0.0)));
                    }
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                    double sum = 0.0;
                    for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2) {
                        const double v = table.cg(h(tm1), h(tm2), h(tj));
                        sum += v * v;
                    }
                    worst = std::max(worst, std::abs(sum - 1.0));
                }
        }
    c.note = "max sum-rule residual = " + std::to_string(worst);
    c.require(worst <= 1e-12, c.note);
}

// ---------------------------------------------------------------- criterion 3
void coupling_profile(Check& c) {
    CircuitSpec circuit;
    circuit.inductance = 1e-12;
    circuit.omega = constants::two_pi * 6.834e9;
    circuit.d = 10e-6;
    circuit.quality = 1000;
    const auto loop = LoopGeometry::square(circuit.d);
    auto g_at = [&](double z) { return coupling({5e-6, 5e-6, z}, circuit, loop); };
    const double g4 = g_at(4e-6), g5 = g_at(5e-6), g6 = g_at(6e-6);
    const double r45 = g4 / g5, r65 = g6 / g5;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "ratios %.4f (ref 1.299), %.4f (ref 0.765); absolute -g/2pi at 5 um = %.1f Hz "
                  "(chip numbers quote 388 Hz there; absolute normalization flagged, ratios are "
                  "the validated quantity)",
                  r45, r65, -g5 / constants::two_pi);
    c.note = buf;
    c.require(std::abs(r45 - 1.299) <= 0.005, c.note);
    c.require(std::abs(r65 - 0.765) <= 0.005, c.note);
}

// ---------------------------------------------------------------- criterion 4
void regime_bounds(Check& c) {
    using namespace constants;
    TrapSpec trap;
    trap.omega_trap = {two_pi * 1e3, two_pi * 1e3, two_pi * 1e3};
    trap.center = {5e-6, 5e-6, 5e-6};
    trap.temperature = 1e-6;
    trap.mass = mass_rb87;
    const double g = two_pi * 400.0;

    CircuitSpec lossy;
    lossy.inductance = 1e-12;
    lossy.omega = two_pi * 6.834e9;
    lossy.d = 10e-6;
    lossy.kappa = two_pi * 1e6; // kappa/g = 2500
    const double n_upper = regime_check(lossy, trap, 100.0, g).n_upper;

    CircuitSpec high_q = lossy;
    high_q.kappa = high_q.omega / 5e5; // the several-kHz high-quality regime
    const double n_lower = regime_check(high_q, trap, 100.0, g).n_lower;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "N_upper = %.3g (ref 1e7), N_lower = %.3g (ref 20)", n_upper,
                  n_lower);
    c.note = buf;
    c.require(n_upper >= 0.5e7 && n_upper <= 2e7, c.note);
    c.require(n_lower >= 10.0 && n_lower <= 40.0, c.note);
}

// ---------------------------------------------------------------- criterion 5
void propagator_checks(Check& c) {
    // two-level relaxation
    for (double tau : {0.25, 1.0, 3.0, 10.0}) {
        BlockDensity two_level = BlockDensity::zero({h(1), h(1), h(0)});
        two_level.at(h(1)) = 1.0;
        const auto out = propagate_block(two_level, tau, 1.0);
        c.require(std::abs(out.at(h(1)).real() - std::exp(-tau)) <= 1e-10,
                  "two-level decay off at tau = " + std::to_string(tau));
    }
    // trace conservation and column stochasticity up to j = 20
    for (int tj : {9, 24, 40}) {
        const Sector x{h(tj), h(tj), h(0)};
        const double J = x.j.value() + 0.5;
        for (double tau : {1.0, 10.0}) {
            const Eigen::MatrixXd d = propagator_matrix(x, tau, J);
            for (int col = 0; col < x.size(); ++col) {
                c.require(std::abs(d.col(col).sum() - 1.0) <= 1e-9, "column sum breaks at 2j = " +
                                                                        std::to_string(tj));
                c.require(d.col(col).minCoeff() >= -1e-9,
                          "negative propagator entry at 2j = " + std::to_string(tj));
            }
        }
    }
    // coherence-from-probability identity vs direct integration, j <= 3
    double worst = 0.0;
    for (int tj = 0; tj <= 6; ++tj)
        for (int tjp = 0; tjp <= 6; tjp += 2)
            for (int tk = -5; tk <= 5; ++tk) {
                const int tjp_eff = tj - tjp >= 0 ? tj - tjp : tj + tjp; // scan j' = j +- {0,1,2,3}
                if (tjp_eff < 0 || tjp_eff > 6) continue;
                const Sector x{h(tj), h(tjp_eff), h(tk)};
                if (((tj - tjp_eff) & 1) != 0) continue;
                if (x.m_lo() > x.m_hi()) continue;
                const double J = x.j.value() + 0.5;
                const double tau = 0.8;
                const Eigen::MatrixXd direct = propagator_matrix(x, tau, J);
                for (HalfInt n = x.m_lo(); n <= x.m_hi(); n += h(2))
                    for (HalfInt m = x.m_lo(); m <= n; m += h(2)) {
                        const double via = propagate_coherence_via_probability(x, m, n, tau, J);
                        worst = std::max(worst,
                                         std::abs(via - direct(x.index_of(m), x.index_of(n))));
                    }
            }
    c.note = "identity residual = " + std::to_string(worst);
    c.require(worst <= 1e-8, "coherence identity residual " + std::to_string(worst));
}

// ---------------------------------------------------------------- criterion 6
void fig3_reproduction(Check& c) {
    const std::vector<std::pair<int, int>> splits = {{2, 1}, {3, 2}, {3, 1}, {4, 1}};
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);

    std::vector<std::vector<double>> curves;
    double worst = 0.0;
    for (auto [n1, n2] : splits) {
        const PerturbationEngine engine(n1, n2);
        auto result = engine.evolve(engine.top_state(), grid);
        curves.push_back(result.jz1);

        // finite-difference oracle from the exact master equation
        const double eps = 1e-4;
        const TwoGroupSpace space(make_split(n1, n2, 0.0));
        const Eigen::VectorXcd psi0 = space.fully_excited().cast<complex<double>>();
        const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();
        const auto with = lindblad_jz_curve(make_split(n1, n2, eps), rho0, grid);
        const auto without = lindblad_jz_curve(make_split(n1, n2, 0.0), rho0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(result.jz1[i] - (with[i] - without[i]) / eps));

        c.require(result.jz1.front() == 0.0, "curve does not start at zero");
        const double tail = engine.jz_first(engine.top_state(), 10.0);
        c.require(std::abs(tail) <= 1e-3 * engine.j_max().value(),
                  "tail at tau = 10 too large: " + std::to_string(tail));
    }
    c.note = "max |perturbation - finite difference| = " + std::to_string(worst);
    c.require(worst <= 1e-2, c.note);

    // ordering top-to-bottom at the deepest curve's dip
    std::size_t dip = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (curves[3][i] < curves[3][dip]) dip = i;
    for (int k = 0; k < 3; ++k)
        c.require(curves[k][dip] > curves[k + 1][dip], "curve ordering violated at the dip");
}

// ---------------------------------------------------------------- criterion 7
void first_order_null(Check& c) {
    for (int n : {2, 3}) {
        const PerturbationEngine engine(n, n);
        // fully excited top state and a top-irrep superposition
        std::vector<Eigen::VectorXcd> states;
        states.push_back(engine.top_state());
        Eigen::VectorXcd mixed = Eigen::VectorXcd::Zero(engine.top_state().size());
        mixed[engine.psi_index(engine.j_max())] = std::sqrt(0.5);
        mixed[engine.psi_index(engine.j_max() - h(2))] = std::sqrt(0.3);
        mixed[engine.psi_index(engine.j_max() - h(4))] = std::sqrt(0.2);
        states.push_back(mixed);
        for (const auto& psi0 : states) {
            const auto result = engine.evolve(psi0, {2.0});
            const double norm = result.rho1.norm();
            c.require(norm <= 1e-12,
                      "||rho1|| = " + std::to_string(norm) + " for balanced n = " + std::to_string(n));
        }
    }
}

// ---------------------------------------------------------------- criterion 8
void sse_endpoints(Check& c) {
    // the module's default step; note that at tau = 5 the exact N = 6
    // homogeneous inversion still carries a ~1e-2 relaxation tail, so the
    // +-0.01 band around -1 is tight (the exact value is printed alongside)
    auto run = [&](int n1, int n2, double dgt) {
        SseConfig config;
        config.split = make_split(n1, n2, dgt);
        config.d_tau = 1e-3;
        config.tau_max = 5.0;
        config.n_traj = 10000;
        config.seed = 60914;
        config.record_grid = {5.0};
        return ensemble_stats(config).final_mean;
    };
    const double homog = run(3, 3, 0.0);
    const double balanced = run(3, 3, 1.0);
    const double lopsided = run(4, 2, 1.0);

    const TwoGroupSpace space(make_split(3, 3, 0.0));
    const Eigen::VectorXcd psi0 = space.fully_excited().cast<complex<double>>();
    const double exact_homog =
        lindblad_jz_curve(make_split(3, 3, 0.0), psi0 * psi0.adjoint(), {5.0})[0] / 3.0;

    char buf[220];
    std::snprintf(buf, sizeof(buf),
                  "means: %.4f (ref -1; exact tau=5 value %.5f), %.4f (ref 0), %.4f (ref -1/3)",
                  homog, exact_homog, balanced, lopsided);
    c.note = buf;
    c.require(std::abs(homog + 1.0) <= 0.01, c.note);
    c.require(std::abs(balanced) <= 0.01, c.note);
    c.require(std::abs(lopsided + 1.0 / 3.0) <= 0.02, c.note);
}

// ---------------------------------------------------------------- criterion 9
void sse_vs_oracle(Check& c) {
    SseConfig config;
    config.split = make_split(3, 3, 0.5);
    config.d_tau = 5e-4;
    config.tau_max = 5.0;
    config.n_traj = 10000;
    config.seed = 421;
    config.record_grid = {0.5, 1.0, 2.0, 5.0};
    const auto stats = ensemble_stats(config);

    const TwoGroupSpace space(config.split);
    const Eigen::VectorXcd psi0 = space.fully_excited().cast<complex<double>>();
    const auto oracle = lindblad_jz_curve(config.split, psi0 * psi0.adjoint(), config.record_grid);

    std::string detail = "max |mean - oracle| / (3 SE):";
    for (std::size_t r = 0; r < config.record_grid.size(); ++r) {
        const double mean = stats.mean_jz_over_j[r] * space.j_max();
        const double se = stats.stderr_jz_over_j[r] * space.j_max();
        const double pull = std::abs(mean - oracle[r]) / (3.0 * se);
        detail += " " + std::to_string(pull);
        c.require(pull <= 1.0, "mean outside 3 SE at tau = " +
                                   std::to_string(config.record_grid[r]) + " (pull*3SE = " +
                                   std::to_string(pull) + ")");
    }
    c.note = detail;
}

// --------------------------------------------------------------- criterion 10
void quadratic_onset(Check& c) {
    auto final_mean = [&](double dgt) {
        SseConfig config;
        config.split = make_split(3, 3, dgt);
        config.d_tau = 5e-4;
        config.tau_max = 5.0;
        config.n_traj = 30000;
        config.seed = 98765;
        config.record_grid = {5.0};
        return ensemble_stats(config).final_mean;
    };
    const double base = final_mean(0.0);
    const std::vector<double> dgs = {0.05, 0.1, 0.2};
    std::vector<double> shifts;
    for (double d : dgs) shifts.push_back(final_mean(d) - base);

    // least-squares slope of log(shift) vs log(dg~)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < dgs.size(); ++i) {
        c.require(shifts[i] > 0, "shift not positive at dg~ = " + std::to_string(dgs[i]));
        if (shifts[i] <= 0) return;
        const double x = std::log(dgs[i]), y = std::log(shifts[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(dgs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "shifts %.4g %.4g %.4g, power-law exponent %.3f (ref 2.0 +- 0.2)",
                  shifts[0], shifts[1], shifts[2], slope);
    c.note = buf;
    c.require(std::abs(slope - 2.0) <= 0.2, c.note);
}

// --------------------------------------------------------------- criterion 11
void dark_states(Check& c) {
    for (int n = 1; n <= 6; ++n) {
        const auto kernel = dark_space(full_spin_space_lowering(n, std::vector<double>(n, 1.0)));
        c.require(static_cast<std::uint64_t>(kernel.cols()) == dfs_dimension(n),
                  "full-space kernel count off at n = " + std::to_string(n));
    }

    // rotated singlet (the state annihilated by g1 sigma-(1) + g2 sigma-(2))
    const double dgt = 0.5;
    const auto split = make_split(1, 1, dgt);
    const auto kernel = dark_space(build_collective_lowering(split));
    const double g1 = 1.0 + dgt, g2 = 1.0 - dgt;
    Eigen::VectorXd singlet = Eigen::VectorXd::Zero(4);
    singlet[2] = g2 / std::sqrt(g1 * g1 + g2 * g2);  // |1>_1 |0>_2
    singlet[1] = -g1 / std::sqrt(g1 * g1 + g2 * g2); // |0>_1 |1>_2
    const double fidelity = (kernel.transpose() * singlet).norm();
    c.require(fidelity >= 1.0 - 1e-10, "rotated-singlet fidelity = " + std::to_string(fidelity));

    // kernel-initialized trajectories stay put
    SseConfig config;
    config.split = split;
    config.d_tau = 1e-3;
    config.tau_max = 5.0;
    config.n_traj = 1;
    config.seed = 5;
    config.record_grid = {1.0, 3.0, 5.0};
    for (int col = 0; col < kernel.cols(); ++col) {
        const Eigen::VectorXcd dark = kernel.col(col).cast<complex<double>>();
        const TwoGroupSpace space(split);
        double jz0 = 0;
        for (int i = 0; i < space.dim(); ++i) jz0 += space.jz_diagonal()[i] * std::norm(dark[i]);
        const auto rec = run_trajectory_from(config, 0, dark);
        for (double v : rec.jz_over_j)
            c.require(std::abs(v - jz0 / space.j_max()) <= 1e-9, "kernel trajectory drifted");
    }
}

// --------------------------------------------------------------- criterion 12
void moment_matching(Check& c) {
    Xoshiro256ss rng(314159);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        TwoEnsembleSplit s;
        const int n = 2 + static_cast<int>(rng.next() % 99);
        s.n1 = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n - 1));
        s.n2 = n - s.n1;
        s.g2 = -3.0 + 6.0 * rng.uniform();
        s.g1 = s.g2 + 0.05 + 4.0 * rng.uniform();
        const auto m = forward_moments(s);
        const auto rec = match_two_ensembles(m, n);
        c.require(rec.n1 == s.n1, "n1 mismatch in round trip");
        worst = std::max(worst, std::abs(rec.g1 - s.g1) / std::max(1.0, std::abs(s.g1)));
        worst = std::max(worst, std::abs(rec.g2 - s.g2) / std::max(1.0, std::abs(s.g2)));
    }
    c.require(worst <= 1e-9, "round-trip relative error " + std::to_string(worst));

    // printed closed form at <g> = 0
    for (int trial = 0; trial < 200; ++trial) {
        Moments m;
        m.mean_g = 0.0;
        m.var_g = 0.05 + rng.uniform();
        m.skew_g = -1.0 + 2.0 * rng.uniform();
        const auto split = match_two_ensembles(m, 60);
        const double disc = std::sqrt(4.0 * m.var_g * m.var_g * m.var_g + m.skew_g * m.skew_g);
        const double g1_printed = (m.skew_g + disc) / (2.0 * m.var_g);
        const double g2_printed = (m.skew_g - disc) / (2.0 * m.var_g);
        c.require(std::abs(split.g1 - g1_printed) <= 1e-9, "printed g1 deviates at <g> = 0");
        c.require(std::abs(split.g2 - g2_printed) <= 1e-9, "printed g2 deviates at <g> = 0");
    }
    c.note = "1000 round trips, worst relative error " + std::to_string(worst);
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Check&)> body;
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc - 1; ++i)
        if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);

    const std::vector<Criterion> criteria = {
        {1, "algebra cross-validation (decouple vs Wigner-Eckart, jmax <= 8)", 30, algebra_cross_validation},
        {2, "CG sum rules (orthogonality + completeness, j <= 8)", 10, cg_sum_rules},
        {3, "on-axis coupling ratios 504/388 and 297/388", 1, coupling_profile},
        {4, "regime bounds N << ~1e7 and N >> ~20", 1, regime_bounds},
        {5, "propagator: two-level decay, stochasticity, coherence identity", 60, propagator_checks},
        {6, "first-order inversion curves vs finite-difference oracle", 300, fig3_reproduction},
        {7, "balanced split gives vanishing first-order correction", 10, first_order_null},
        {8, "SSE endpoint means at tau = 5", 600, sse_endpoints},
        {9, "SSE ensemble mean vs exact master equation", 600, sse_vs_oracle},
        {10, "quadratic onset of the final-inversion shift", 900, quadratic_onset},
        {11, "dark-state counts, rotated singlet, trapped trajectories", 60, dark_states},
        {12, "moment-matching round trips and <g> = 0 closed form", 5, moment_matching},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && only != criterion.id) continue;
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.require(elapsed <= criterion.budget_s,
                      "runtime " + std::to_string(elapsed) + " s exceeds budget");
        if (check.ok) {
            std::printf("[PASS] criterion %2d: %s (%.1f s)%s%s\n", criterion.id, criterion.name, elapsed,
                        check.note.empty() ? "" : " -- ", check.note.c_str());
        } else {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s (%.1f s) -- %s\n", criterion.id, criterion.name, elapsed,
                        check.first_failure.c_str());
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
