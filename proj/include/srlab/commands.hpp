#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "srlab/scenario.hpp"

namespace srlab {

// Subcommand implementations shared by the CLI binary and the tests.
// Each writes its CSV outputs plus manifest.json into the scenario's output
// directory and logs a short human summary to `log`.

struct FieldMapOptions {
    std::optional<double> x_min, x_max, z_min, z_max;
    int nx = 11;
    int nz = 10;
};

struct CouplingDistOptions {
    std::size_t samples = 100000;
    std::size_t bins = 60;
};

struct RegimeOptions {
    std::optional<double> g_typ_hz; // ordinary frequency; default |g| at the trap center
    double threshold = 0.1;
};

struct PropagateOptions {
    int two_j = 1, two_jp = 1, two_k = 0;
    std::optional<double> big_j; // default j + 1/2
    std::vector<double> taus = {1.0};
};

struct InversionOptions {
    double tau_max = 5.0;
    int steps = 101;
};

struct SseRunOptions {
    std::size_t dump_trajectories = 0;
    bool serial = false;
};

struct SweepOptions {
    std::vector<double> dg_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

std::vector<std::string> cmd_field_map(const Scenario& sc, const FieldMapOptions& opt, std::ostream& log);
std::vector<std::string> cmd_coupling_dist(const Scenario& sc, const CouplingDistOptions& opt,
                                           std::ostream& log);
std::vector<std::string> cmd_regime_check(const Scenario& sc, const RegimeOptions& opt, std::ostream& log);
std::vector<std::string> cmd_propagate(const Scenario& sc, const PropagateOptions& opt, std::ostream& log);
std::vector<std::string> cmd_inversion(const Scenario& sc, const InversionOptions& opt, std::ostream& log);
std::vector<std::string> cmd_sse(const Scenario& sc, const SseRunOptions& opt, std::ostream& log);
std::vector<std::string> cmd_sweep(const Scenario& sc, const SweepOptions& opt, std::ostream& log);
std::vector<std::string> cmd_dark(const Scenario& sc, std::ostream& log);

} // namespace srlab
