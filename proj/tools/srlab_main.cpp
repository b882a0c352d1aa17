#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <omp.h>

#include "srlab/commands.hpp"
#include "srlab/errors.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    int threads = 0;
};

srlab::Scenario load_scenario(const GlobalArgs& g) {
    srlab::Scenario sc =
        g.config_path.empty() ? srlab::Scenario{} : srlab::Scenario::parse_file(g.config_path);
    if (g.seed) {
        sc.seed = *g.seed;
        sc.semantic["sse.seed"] = std::to_string(*g.seed);
    }
    if (g.out_dir) sc.output_dir = *g.out_dir;
    if (g.threads > 0) omp_set_num_threads(g.threads);
    return sc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"srlab - superradiance of trapped atoms coupled to an LC resonator"};
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--config", global.config_path, "scenario file");
    app.add_option("--seed", global.seed, "override the scenario seed");
    app.add_option("--out", global.out_dir, "override the output directory");
    app.add_option("--threads", global.threads, "OpenMP thread count (0 = default)");

    srlab::FieldMapOptions field_opt;
    auto* field = app.add_subcommand("field-map", "coupling constant on an (x, z) grid at y = d/2");
    field->add_option("--x-min", field_opt.x_min);
    field->add_option("--x-max", field_opt.x_max);
    field->add_option("--z-min", field_opt.z_min);
    field->add_option("--z-max", field_opt.z_max);
    field->add_option("--nx", field_opt.nx);
    field->add_option("--nz", field_opt.nz);

    srlab::CouplingDistOptions dist_opt;
    auto* dist = app.add_subcommand("coupling-dist", "thermal coupling distribution p(g/G) and moments");
    dist->add_option("--samples", dist_opt.samples);
    dist->add_option("--bins", dist_opt.bins);

    srlab::RegimeOptions regime_opt;
    auto* regime = app.add_subcommand("regime-check", "validity bounds of the superradiance picture");
    regime->add_option("--g-typ-hz", regime_opt.g_typ_hz, "typical |g|/2pi in Hz");
    regime->add_option("--threshold", regime_opt.threshold, "ratio threshold standing in for <<");

    srlab::PropagateOptions prop_opt;
    auto* prop = app.add_subcommand("propagate", "dump the sector propagator D_mn(x, tau)");
    prop->add_option("--two-j", prop_opt.two_j, "2j of the sector");
    prop->add_option("--two-jp", prop_opt.two_jp, "2j' of the sector");
    prop->add_option("--two-k", prop_opt.two_k, "2k of the sector");
    prop->add_option("--big-j", prop_opt.big_j, "rescaling constant J (default j + 1/2)");
    prop->add_option("--tau", prop_opt.taus, "tau values")->expected(-1);

    srlab::InversionOptions inv_opt;
    auto* inv = app.add_subcommand("inversion", "inversion curves: homogeneous and first-order");
    inv->add_option("--tau-max", inv_opt.tau_max);
    inv->add_option("--steps", inv_opt.steps);

    srlab::SseRunOptions sse_opt;
    auto* sse = app.add_subcommand("sse", "stochastic trajectory ensemble");
    sse->add_option("--dump-trajectories", sse_opt.dump_trajectories, "write the first k trajectories");
    sse->add_flag("--serial", sse_opt.serial, "use the serial reference path");

    srlab::SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "final inversion vs coupling asymmetry");
    sweep->add_option("--dgt", sweep_opt.dg_values, "dg_tilde values")->expected(-1);

    auto* dark = app.add_subcommand("dark", "dark-state basis of the collective lowering operator");

    CLI11_PARSE(app, argc, argv);

    try {
        const srlab::Scenario sc = load_scenario(global);
        if (field->parsed()) srlab::cmd_field_map(sc, field_opt, std::cout);
        else if (dist->parsed()) srlab::cmd_coupling_dist(sc, dist_opt, std::cout);
        else if (regime->parsed()) srlab::cmd_regime_check(sc, regime_opt, std::cout);
        else if (prop->parsed()) srlab::cmd_propagate(sc, prop_opt, std::cout);
        else if (inv->parsed()) srlab::cmd_inversion(sc, inv_opt, std::cout);
        else if (sse->parsed()) srlab::cmd_sse(sc, sse_opt, std::cout);
        else if (sweep->parsed()) srlab::cmd_sweep(sc, sweep_opt, std::cout);
        else if (dark->parsed()) srlab::cmd_dark(sc, std::cout);
    } catch (const srlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const srlab::InvalidQuantumNumber& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
