#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srlab/chip_coupling.hpp"
#include "srlab/sse.hpp"

namespace srlab {

// Sectioned key/value scenario file. SI units with the unit in the key name
// (_h henry, _hz ordinary frequency, _m meter, _k kelvin, _kg kilogram);
// ordinary frequencies are converted to angular ones on load. Unknown
// sections or keys are rejected.
//
//   [circuit]
//   inductance_h   = 1e-12
//   frequency_hz   = 6.834e9       # resonance, omega = 2 pi f
//   d_m            = 10e-6
//   quality        = 1000          # and/or kappa_per_s (consistent if both)
//   kappa_per_s    = 4.294e7
//
//   [loop]                         # optional; default square of side d_m
//   size_m         = 10e-6
//   orientation    = 1
//   corner1_m      = 0, 0, 0       # all four corners override the square
//   ...
//   corner4_m      = 0, 10e-6, 0
//
//   [trap]
//   freq_x_hz      = 1e3
//   freq_y_hz      = 1e3
//   freq_z_hz      = 1e3
//   center_m       = 5e-6, 5e-6, 10e-6
//   temperature_k  = 1e-6
//   mass_kg        = 1.44316060e-25  # optional, default 87Rb
//
//   [ensemble]
//   n1 = 3
//   n2 = 3
//   dg_tilde = 0.5                 # or: from_moments = true with n_total
//   n_total = 6
//   from_moments = false
//
//   [sse]
//   d_tau    = 1e-3
//   tau_max  = 5
//   n_traj   = 10000
//   seed     = 12345
//   record   = 0.5, 1, 2, 5
//   n_bins   = 40
//
//   [output]
//   dir = out
struct Scenario {
    std::optional<CircuitSpec> circuit;
    std::optional<LoopGeometry> loop;
    std::optional<TrapSpec> trap;

    struct Ensemble {
        int n1 = 0, n2 = 0;
        double dg_tilde = 0.0;
        bool from_moments = false;
        int n_total = 0;
    };
    std::optional<Ensemble> ensemble;

    double sse_d_tau = 1e-3;
    double sse_tau_max = 5.0;
    std::size_t sse_n_traj = 10000;
    std::uint64_t seed = 12345;
    std::vector<double> sse_record = {0.5, 1.0, 2.0, 5.0};
    std::size_t sse_n_bins = 40;

    std::string output_dir = "out";

    // canonical representation of every semantic key, used for hashing
    std::map<std::string, std::string> semantic;

    std::uint64_t hash() const;

    LoopGeometry loop_or_default() const;
    TwoEnsembleSplit split() const; // requires [ensemble] with explicit n1/n2
    SseConfig sse_config() const;

    static Scenario parse_file(const std::string& path);
    static Scenario parse_text(const std::string& text, const std::string& origin = "<inline>");
};

} // namespace srlab
