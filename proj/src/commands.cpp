#include "srlab/commands.hpp"

#include <cmath>
#include <filesystem>

#include "srlab/constants.hpp"
#include "srlab/dark_space.hpp"
#include "srlab/dicke_propagator.hpp"
#include "srlab/output.hpp"
#include "srlab/perturbation.hpp"

namespace srlab {

namespace {

namespace fs = std::filesystem;

fs::path prepare_out_dir(const Scenario& sc) {
    fs::path dir(sc.output_dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> finish(const Scenario& sc, const fs::path& dir, const std::string& command,
                                std::vector<std::string> outputs) {
    RunManifest manifest;
    manifest.tool_version = tool_version;
    manifest.constants_version = constants::table_version;
    manifest.scenario_hash = sc.hash();
    manifest.seed = sc.seed;
    manifest.command = command;
    manifest.outputs = outputs;
    manifest.write(dir);
    outputs.push_back((dir / "manifest.json").string());
    return outputs;
}

const CircuitSpec& need_circuit(const Scenario& sc) {
    if (!sc.circuit) throw ConfigError("this command needs a [circuit] section");
    return *sc.circuit;
}

const TrapSpec& need_trap(const Scenario& sc) {
    if (!sc.trap) throw ConfigError("this command needs a [trap] section");
    return *sc.trap;
}

} // namespace

std::vector<std::string> cmd_field_map(const Scenario& sc, const FieldMapOptions& opt, std::ostream& log) {
    const CircuitSpec& circuit = need_circuit(sc);
    const LoopGeometry loop = sc.loop_or_default();
    if (opt.nx < 1 || opt.nz < 1) throw ConfigError("field-map: empty grid request");

    const double x_min = opt.x_min.value_or(0.0);
    const double x_max = opt.x_max.value_or(circuit.d);
    const double z_min = opt.z_min.value_or(0.1 * circuit.d);
    const double z_max = opt.z_max.value_or(circuit.d);
    const double y = 0.5 * circuit.d;

    const auto dir = prepare_out_dir(sc);
    CsvWriter csv(dir / "field_map.csv", {"x_m", "z_m", "g_over_2pi_hz"});
    for (int iz = 0; iz < opt.nz; ++iz) {
        const double z = opt.nz == 1 ? z_min : z_min + (z_max - z_min) * iz / (opt.nz - 1.0);
        for (int ix = 0; ix < opt.nx; ++ix) {
            const double x = opt.nx == 1 ? x_min : x_min + (x_max - x_min) * ix / (opt.nx - 1.0);
            const double g = coupling({x, y, z}, circuit, loop);
            csv.row({x, z, g / constants::two_pi});
        }
    }
    const double g_ref = coupling({0.5 * circuit.d, y, 0.5 * circuit.d}, circuit, loop);
    log << "field-map: " << opt.nx << " x " << opt.nz << " grid at y = d/2; "
        << "g/2pi at (d/2, d/2, d/2) = " << g_ref / constants::two_pi << " Hz\n"
        << "note: the absolute scale of g is the exact evaluation of the loop model; "
           "position ratios are the validated quantity\n";
    return finish(sc, dir, "field-map", {(dir / "field_map.csv").string()});
}

std::vector<std::string> cmd_coupling_dist(const Scenario& sc, const CouplingDistOptions& opt,
                                           std::ostream& log) {
    const CircuitSpec& circuit = need_circuit(sc);
    const TrapSpec& trap = need_trap(sc);
    const LoopGeometry loop = sc.loop_or_default();
    if (!sc.ensemble) throw ConfigError("coupling-dist: [ensemble] with n_total or n1/n2 required");
    const int n_atoms =
        sc.ensemble->from_moments ? sc.ensemble->n_total : sc.ensemble->n1 + sc.ensemble->n2;
    if (opt.samples < 1000) throw ConfigError("coupling-dist: need at least 1000 samples");

    const auto hist = coupling_distribution(trap, circuit, loop, opt.samples, sc.seed, opt.bins);
    const double scale = coupling_scale(circuit);

    // moments in physical units from the same sample stream
    const auto positions = sample_positions(trap, opt.samples, sc.seed);
    std::vector<double> g_values(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        g_values[i] = coupling(positions[i], circuit, loop);
    const Moments moments = sample_moments(g_values);
    const TwoEnsembleSplit split = match_two_ensembles(moments, n_atoms);

    const auto dir = prepare_out_dir(sc);
    {
        CsvWriter csv(dir / "coupling_dist.csv", {"g_over_G", "probability_density"});
        for (std::size_t b = 0; b < hist.density.size(); ++b)
            csv.row({0.5 * (hist.edges[b] + hist.edges[b + 1]), hist.density[b]});
    }
    {
        CsvWriter csv(dir / "moments_split.csv",
                      {"mean_g", "var_g", "skew_g", "n1", "n2", "g1", "g2", "g_ref", "dg_tilde"});
        csv.row({moments.mean_g, moments.var_g, moments.skew_g, static_cast<double>(split.n1),
                 static_cast<double>(split.n2), split.g1, split.g2, split.g_ref, split.dg_tilde});
    }
    log << "coupling-dist: " << opt.samples << " samples, <g>/2pi = " << moments.mean_g / constants::two_pi
        << " Hz, sqrt(var)/2pi = " << std::sqrt(moments.var_g) / constants::two_pi << " Hz\n"
        << "matched split: n1 = " << split.n1 << ", n2 = " << split.n2
        << ", g1/G = " << split.g1 / scale << ", g2/G = " << split.g2 / scale
        << ", dg_tilde = " << split.dg_tilde << "\n";
    return finish(sc, dir, "coupling-dist",
                  {(dir / "coupling_dist.csv").string(), (dir / "moments_split.csv").string()});
}

std::vector<std::string> cmd_regime_check(const Scenario& sc, const RegimeOptions& opt, std::ostream& log) {
    const CircuitSpec& circuit = need_circuit(sc);
    const TrapSpec& trap = need_trap(sc);
    if (!sc.ensemble) throw ConfigError("regime-check: [ensemble] with atom numbers required");
    const int n_atoms =
        sc.ensemble->from_moments ? sc.ensemble->n_total : sc.ensemble->n1 + sc.ensemble->n2;

    double g_typ;
    if (opt.g_typ_hz)
        g_typ = constants::two_pi * *opt.g_typ_hz;
    else
        g_typ = std::abs(coupling(trap.center, circuit, sc.loop_or_default()));

    const RegimeReport report = regime_check(circuit, trap, n_atoms, g_typ, opt.threshold);

    const auto dir = prepare_out_dir(sc);
    {
        CsvWriter csv(dir / "regime.csv", {"check", "ratio", "threshold", "pass"});
        for (const auto& c : report.checks)
            csv.raw_row({c.name, format_double(c.ratio), format_double(c.threshold), c.pass ? "1" : "0"});
    }
    log << "regime-check with N = " << n_atoms << ", g/2pi = " << g_typ / constants::two_pi << " Hz\n";
    for (const auto& c : report.checks)
        log << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  ratio = " << c.ratio << "\n";
    log << "  bounds: N << " << report.n_upper << ", N >> " << report.n_lower << ", T << " << report.t_upper
        << " K\n";
    return finish(sc, dir, "regime-check", {(dir / "regime.csv").string()});
}

std::vector<std::string> cmd_propagate(const Scenario& sc, const PropagateOptions& opt, std::ostream& log) {
    Sector sector{HalfInt::from_twice(opt.two_j), HalfInt::from_twice(opt.two_jp),
                  HalfInt::from_twice(opt.two_k)};
    try {
        sector.validate();
    } catch (const InvalidQuantumNumber& e) {
        throw ConfigError(std::string("propagate: ") + e.what());
    }
    const double J = opt.big_j.value_or(sector.j.value() + 0.5);
    if (opt.taus.empty()) throw ConfigError("propagate: need at least one tau");

    const auto dir = prepare_out_dir(sc);
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < opt.taus.size(); ++i) {
        const double tau = opt.taus[i];
        if (tau < 0) throw ConfigError("propagate: tau must be >= 0");
        const Eigen::MatrixXd d = propagator_matrix(sector, tau, J);
        const auto name = "propagator_" + std::to_string(i) + ".csv";
        CsvWriter csv(dir / name, {"m", "n", "D"});
        for (int col = 0; col < sector.size(); ++col)
            for (int row = 0; row < sector.size(); ++row) {
                const double m = sector.m_lo().value() + row;
                const double n = sector.m_lo().value() + col;
                csv.row({m, n, d(row, col)});
            }
        outputs.push_back((dir / name).string());
        log << "propagate: sector (j, j', k) = (" << sector.j << ", " << sector.jp << ", " << sector.k
            << "), tau = " << tau << " -> " << name << "\n";
    }
    return finish(sc, dir, "propagate", outputs);
}

std::vector<std::string> cmd_inversion(const Scenario& sc, const InversionOptions& opt, std::ostream& log) {
    const TwoEnsembleSplit split = sc.split();
    if (opt.steps < 2) throw ConfigError("inversion: need at least two grid points");
    const PerturbationEngine engine(split.n1, split.n2);

    std::vector<double> grid(opt.steps);
    for (int i = 0; i < opt.steps; ++i) grid[i] = opt.tau_max * i / (opt.steps - 1.0);

    const auto result = engine.evolve(engine.top_state(), grid);

    const auto dir = prepare_out_dir(sc);
    CsvWriter csv(dir / "inversion.csv", {"tau", "jz0", "jz1_per_dgtilde"});
    for (std::size_t i = 0; i < result.taus.size(); ++i)
        csv.row({result.taus[i], result.jz0[i], result.jz1[i]});
    log << "inversion: (n1, n2) = (" << split.n1 << ", " << split.n2 << "), " << opt.steps
        << " points on [0, " << opt.tau_max << "]\n";
    return finish(sc, dir, "inversion", {(dir / "inversion.csv").string()});
}

std::vector<std::string> cmd_sse(const Scenario& sc, const SseRunOptions& opt, std::ostream& log) {
    SseConfig config = sc.sse_config();
    const auto policy = opt.serial ? ExecutionPolicy::serial : ExecutionPolicy::openmp;
    const EnsembleStats stats = ensemble_stats(config, sc.sse_n_bins, policy);

    const auto dir = prepare_out_dir(sc);
    std::vector<std::string> outputs;
    {
        CsvWriter csv(dir / "sse_histogram.csv", {"bin_left", "bin_right", "count"});
        for (std::size_t b = 0; b < stats.final_histogram.counts.size(); ++b)
            csv.row({stats.final_histogram.edges[b], stats.final_histogram.edges[b + 1],
                     static_cast<double>(stats.final_histogram.counts[b])});
        outputs.push_back((dir / "sse_histogram.csv").string());
    }
    {
        CsvWriter csv(dir / "sse_mean.csv", {"tau", "mean_jz_over_j", "stderr_jz_over_j"});
        for (std::size_t r = 0; r < config.record_grid.size(); ++r)
            csv.row({config.record_grid[r], stats.mean_jz_over_j[r], stats.stderr_jz_over_j[r]});
        outputs.push_back((dir / "sse_mean.csv").string());
    }
    for (std::size_t t = 0; t < std::min(opt.dump_trajectories, config.n_traj); ++t) {
        const auto name = "trajectory_" + std::to_string(t) + ".csv";
        CsvWriter csv(dir / name, {"tau", "jz_over_j"});
        for (std::size_t r = 0; r < config.record_grid.size(); ++r)
            csv.row({config.record_grid[r], stats.trajectories[t].jz_over_j[r]});
        outputs.push_back((dir / name).string());
    }
    log << "sse: " << config.n_traj << " trajectories, final <Jz>/j = " << stats.final_mean
        << " +- " << stats.final_std << " (std)\n";
    return finish(sc, dir, "sse", outputs);
}

std::vector<std::string> cmd_sweep(const Scenario& sc, const SweepOptions& opt, std::ostream& log) {
    if (!sc.ensemble || sc.ensemble->from_moments)
        throw ConfigError("sweep: [ensemble] with explicit n1/n2 required");
    if (opt.dg_values.empty()) throw ConfigError("sweep: empty dg_tilde list");

    const auto dir = prepare_out_dir(sc);
    CsvWriter csv(dir / "sweep.csv", {"dgtilde", "mean", "std"});
    for (double dgt : opt.dg_values) {
        SseConfig config = sc.sse_config();
        config.split = make_split(sc.ensemble->n1, sc.ensemble->n2, dgt);
        const EnsembleStats stats = ensemble_stats(config, sc.sse_n_bins);
        csv.row({dgt, stats.final_mean, stats.final_std});
        log << "sweep: dg_tilde = " << dgt << " -> mean " << stats.final_mean << ", std "
            << stats.final_std << "\n";
    }
    return finish(sc, dir, "sweep", {(dir / "sweep.csv").string()});
}

std::vector<std::string> cmd_dark(const Scenario& sc, std::ostream& log) {
    const TwoEnsembleSplit split = sc.split();
    const Eigen::MatrixXd op = build_collective_lowering(split);
    const Eigen::MatrixXd kernel = dark_space(op);

    const auto dir = prepare_out_dir(sc);
    CsvWriter csv(dir / "dark_basis.csv", {"vector", "component", "amplitude"});
    for (int v = 0; v < kernel.cols(); ++v)
        for (int c = 0; c < kernel.rows(); ++c)
            csv.row({static_cast<double>(v), static_cast<double>(c), kernel(c, v)});
    log << "dark: kernel dimension " << kernel.cols() << " in the product space of dimension "
        << op.rows() << "\n";
    for (int v = 0; v < kernel.cols(); ++v) {
        log << "  vector " << v << ":";
        for (int c = 0; c < kernel.rows(); ++c)
            if (std::abs(kernel(c, v)) > 1e-12) log << "  [" << c << "] " << kernel(c, v);
        log << "\n";
    }
    return finish(sc, dir, "dark", {(dir / "dark_basis.csv").string()});
}

} // namespace srlab
