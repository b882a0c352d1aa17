#pragma once

#include <array>
#include <optional>
#include <cstdint>
#include <string>
#include <vector>

#include "srlab/errors.hpp"

namespace srlab {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
};

// Resonant LC circuit: inductance, angular resonance frequency, loop size,
// and photon escape rate. kappa = omega / quality when both are given.
struct CircuitSpec {
    double inductance = 1e-12;  // H
    double omega = 0;           // rad/s
    double d = 10e-6;           // m, loop linear dimension
    double kappa = 0;           // 1/s
    double quality = 0;         // dimensionless

    void validate() const;
};

// Planar wire loop given by its corners (closed polygon, z = 0 plane).
struct LoopGeometry {
    std::array<Vec3, 4> corners;
    int orientation = +1; // circulation sign

    // Square of side d with corners (0,0,0),(d,0,0),(d,d,0),(0,d,0).
    static LoopGeometry square(double d);

    void validate() const;
};

struct TrapSpec {
    Vec3 omega_trap;      // rad/s per axis
    Vec3 center;          // m
    double temperature = 0; // K
    double mass = 0;        // kg

    void validate() const;
};

// Minimum distance below which field evaluation refuses to continue.
inline constexpr double wire_cutoff = 1e-9; // m

// Dimensionless mode function b(x) of the loop's magnetic field,
// B(x) = mu0 I b(x) / (4 pi d). Exact closed-form Biot-Savart of the four
// straight segments carrying unit current. Throws SingularPoint within
// wire_cutoff of any segment.
Vec3 mode_function(const Vec3& x, const LoopGeometry& loop, double d);

// Contribution of a single straight segment from a to b (unit current) to
// the mode function; mode_function is the orientation-signed sum of these.
Vec3 segment_mode_function(const Vec3& x, const Vec3& a, const Vec3& b, double d);

// Atom-resonator coupling g(x) = -(muB mu0 / (4 pi d)) sqrt(omega/(2 hbar L)) b_z(x),
// in rad/s. The sign follows b_z, so positions outside the loop flip it.
double coupling(const Vec3& x, const CircuitSpec& circuit, const LoopGeometry& loop);

// The normalization G = (muB mu0 / (4 pi d)) sqrt(omega/(2 hbar L)), so that
// g = -G b_z; used to report the dimensionless g/G distribution.
double coupling_scale(const CircuitSpec& circuit);

// Thermal-state position standard deviation per axis,
// sigma = l_T / sqrt(2), l_T = sqrt(hbar/(M Omega)) coth^(1/2)(hbar Omega/(2 kB T)).
Vec3 thermal_position_sigma(const TrapSpec& trap);

// i.i.d. Gaussian positions of the thermal cloud; deterministic in (seed, n),
// and sample i depends only on (seed, i) so any evaluation order gives the
// same stream.
std::vector<Vec3> sample_positions(const TrapSpec& trap, std::size_t n, std::uint64_t seed);

struct Histogram {
    std::vector<double> edges;   // size bins+1
    std::vector<double> density; // size bins, normalized so sum(density*width) = 1
    std::vector<std::uint64_t> counts;
};

// Monte Carlo estimate of the distribution of dimensionless couplings g/G
// over the thermal cloud. Bins span the sample range unless an explicit
// range is given, in which case outliers land in the edge bins so the
// density still integrates to one.
struct HistogramRange {
    double lo = 0, hi = 0;
};
Histogram coupling_distribution(const TrapSpec& trap, const CircuitSpec& circuit, const LoopGeometry& loop,
                                std::size_t n_samples, std::uint64_t seed, std::size_t bins,
                                std::optional<HistogramRange> range = {});

struct Moments {
    double mean_g = 0; // <g>
    double var_g = 0;  // <(g - <g>)^2>
    double skew_g = 0; // <(g - <g>)^3>
};

Moments sample_moments(const std::vector<double>& values);

// Two-subensemble reduction (n1, n2, g1, g2) with g1 > g2.
struct TwoEnsembleSplit {
    int n1 = 0, n2 = 0;
    double g1 = 0, g2 = 0;
    double g_ref = 0;   // (g1 + g2)/2
    double dg_tilde = 0; // (g1 - g2)/(2 g_ref)

    int n_total() const { return n1 + n2; }
};

TwoEnsembleSplit make_split(int n1, int n2, double dg_tilde);

// Matches (n1, n2, g1, g2) to the mean, variance and third central moment:
//   g_{1,2} = <g> + (<dg^3> +- sqrt(<dg^3>^2 + 4 <dg^2>^3)) / (2 <dg^2>)
//   n1 - n2 = -n <dg^3> / sqrt(<dg^3>^2 + 4 <dg^2>^3)
// n1 is rounded to the nearest integer. var_g = 0 degenerates to n1 = n,
// dg_tilde = 0.
TwoEnsembleSplit match_two_ensembles(const Moments& moments, int n);

Moments forward_moments(const TwoEnsembleSplit& split);

// Validity-regime report for the classical fixed-position superradiance
// picture. Every check is of the form ratio << 1, with "<<" taken as
// ratio < threshold (default 0.1).
struct RegimeCheck {
    std::string name;
    double ratio = 0;
    double threshold = 0;
    bool pass = false;
    std::string detail;
};

struct RegimeReport {
    std::vector<RegimeCheck> checks;
    double n_upper = 0; // superradiance requires N << (kappa/g)^2
    double n_lower = 0; // frozen positions require N >> v_th/(gamma d)
    double t_upper = 0; // K, requires T << M (kappa d)^2 / kB

    bool all_pass() const;
};

RegimeReport regime_check(const CircuitSpec& circuit, const TrapSpec& trap, double n_atoms, double g_typ,
                          double threshold = 0.1);

} // namespace srlab
