#include "srlab/chip_coupling.hpp"

#include <algorithm>
#include <cmath>

#include "srlab/constants.hpp"
#include "srlab/rng.hpp"

namespace srlab {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

void CircuitSpec::validate() const {
    if (!(inductance > 0) || !(omega > 0) || !(d > 0))
        throw ConfigError("circuit: inductance, omega and d must be positive");
    if (!(kappa > 0) && !(quality > 0))
        throw ConfigError("circuit: give kappa or quality");
    if (kappa > 0 && quality > 0) {
        const double implied = omega / quality;
        if (std::abs(implied - kappa) > 1e-6 * kappa)
            throw ConfigError("circuit: kappa and quality are inconsistent");
    }
}

LoopGeometry LoopGeometry::square(double d) {
    LoopGeometry g;
    g.corners = {Vec3{0, 0, 0}, Vec3{d, 0, 0}, Vec3{d, d, 0}, Vec3{0, d, 0}};
    g.orientation = +1;
    return g;
}

void LoopGeometry::validate() const {
    for (const auto& c : corners)
        if (c.z != 0.0) throw ConfigError("loop: corners must lie in the z = 0 plane");
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const Vec3 d = corners[(i + 1) % corners.size()] - corners[i];
        if (d.norm() == 0.0) throw ConfigError("loop: consecutive corners coincide");
    }
    if (orientation != 1 && orientation != -1) throw ConfigError("loop: orientation must be +-1");
}

void TrapSpec::validate() const {
    if (!(omega_trap.x > 0) || !(omega_trap.y > 0) || !(omega_trap.z > 0))
        throw ConfigError("trap: frequencies must be positive");
    if (!(temperature > 0)) throw ConfigError("trap: temperature must be positive");
    if (!(mass > 0)) throw ConfigError("trap: mass must be positive");
}

namespace {

double distance_to_segment(const Vec3& x, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 == 0.0) return (x - a).norm();
    const double t = std::clamp(ab.dot(x - a) / len2, 0.0, 1.0);
    return (x - (a + ab * t)).norm();
}

// Field of a straight segment carrying unit current, times 4*pi/mu0
// (Hanson-Hirshman form, stable away from the wire itself):
//   (4 pi / mu0) B = 2 (|r1| + |r2|) (r1 x r2) / (|r1||r2| ((|r1|+|r2|)^2 - L^2))
Vec3 segment_field(const Vec3& x, const Vec3& a, const Vec3& b) {
    const Vec3 r1 = x - a;
    const Vec3 r2 = x - b;
    const double n1 = r1.norm();
    const double n2 = r2.norm();
    const double len2 = (b - a).dot(b - a);
    const double s = n1 + n2;
    const double denom = n1 * n2 * (s * s - len2);
    return r1.cross(r2) * (2.0 * s / denom);
}

} // namespace

Vec3 segment_mode_function(const Vec3& x, const Vec3& a, const Vec3& b, double d) {
    if (distance_to_segment(x, a, b) < wire_cutoff)
        throw SingularPoint("mode_function: point within cutoff of a wire segment");
    // b = (4 pi d / mu0) B at unit current
    return segment_field(x, a, b) * d;
}

Vec3 mode_function(const Vec3& x, const LoopGeometry& loop, double d) {
    Vec3 acc{};
    for (std::size_t i = 0; i < loop.corners.size(); ++i)
        acc += segment_mode_function(x, loop.corners[i], loop.corners[(i + 1) % loop.corners.size()], d);
    return acc * static_cast<double>(loop.orientation);
}

double coupling_scale(const CircuitSpec& circuit) {
    using namespace constants;
    return mu_bohr * mu_0 / (2.0 * two_pi * circuit.d) *
           std::sqrt(circuit.omega / (2.0 * hbar * circuit.inductance));
}

double coupling(const Vec3& x, const CircuitSpec& circuit, const LoopGeometry& loop) {
    return -coupling_scale(circuit) * mode_function(x, loop, circuit.d).z;
}

Vec3 thermal_position_sigma(const TrapSpec& trap) {
    using namespace constants;
    auto sigma = [&](double omega) {
        const double l = std::sqrt(hbar / (trap.mass * omega));
        const double arg = hbar * omega / (2.0 * k_boltzmann * trap.temperature);
        return l * std::sqrt(1.0 / std::tanh(arg)) / std::sqrt(2.0);
    };
    return {sigma(trap.omega_trap.x), sigma(trap.omega_trap.y), sigma(trap.omega_trap.z)};
}

std::vector<Vec3> sample_positions(const TrapSpec& trap, std::size_t n, std::uint64_t seed) {
    trap.validate();
    const Vec3 sigma = thermal_position_sigma(trap);
    std::vector<Vec3> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        NormalSampler normal(derive_stream_seed(seed, i));
        out[i] = {trap.center.x + sigma.x * normal.next(),
                  trap.center.y + sigma.y * normal.next(),
                  trap.center.z + sigma.z * normal.next()};
    }
    return out;
}

Histogram coupling_distribution(const TrapSpec& trap, const CircuitSpec& circuit, const LoopGeometry& loop,
                                std::size_t n_samples, std::uint64_t seed, std::size_t bins,
                                std::optional<HistogramRange> range) {
    if (n_samples == 0 || bins == 0) throw ConfigError("coupling_distribution: empty request");
    const double scale = coupling_scale(circuit);
    const auto positions = sample_positions(trap, n_samples, seed);
    std::vector<double> values(n_samples);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n_samples); ++i)
        values[i] = coupling(positions[i], circuit, loop) / scale;

    double lo, hi;
    if (range) {
        if (!(range->hi > range->lo)) throw ConfigError("coupling_distribution: empty range");
        lo = range->lo;
        hi = range->hi;
    } else {
        const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
        lo = *lo_it;
        hi = *hi_it;
        if (lo == hi) { // point-mass distribution
            lo -= 0.5;
            hi += 0.5;
        }
    }
    const double width = (hi - lo) / static_cast<double>(bins);

    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto b = static_cast<long long>(std::floor((v - lo) / width));
        b = std::clamp(b, 0LL, static_cast<long long>(bins) - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    h.density.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
        h.density[b] = static_cast<double>(h.counts[b]) / (static_cast<double>(n_samples) * width);
    return h;
}

Moments sample_moments(const std::vector<double>& values) {
    Moments m;
    if (values.empty()) return m;
    const double n = static_cast<double>(values.size());
    for (double v : values) m.mean_g += v;
    m.mean_g /= n;
    for (double v : values) {
        const double d = v - m.mean_g;
        m.var_g += d * d;
        m.skew_g += d * d * d;
    }
    m.var_g /= n;
    m.skew_g /= n;
    return m;
}

TwoEnsembleSplit make_split(int n1, int n2, double dg_tilde) {
    TwoEnsembleSplit s;
    s.n1 = n1;
    s.n2 = n2;
    s.g_ref = 1.0;
    s.dg_tilde = dg_tilde;
    s.g1 = 1.0 + dg_tilde;
    s.g2 = 1.0 - dg_tilde;
    return s;
}

TwoEnsembleSplit match_two_ensembles(const Moments& moments, int n) {
    TwoEnsembleSplit s;
    if (!(moments.var_g > 0)) { // degenerate distribution
        s.n1 = n;
        s.n2 = 0;
        s.g1 = s.g2 = s.g_ref = moments.mean_g;
        s.dg_tilde = 0.0;
        return s;
    }
    const double s2 = moments.var_g;
    const double s3 = moments.skew_g;
    const double disc = std::sqrt(s3 * s3 + 4.0 * s2 * s2 * s2);
    s.g1 = moments.mean_g + (s3 + disc) / (2.0 * s2);
    s.g2 = moments.mean_g + (s3 - disc) / (2.0 * s2);
    const double n1_exact = 0.5 * (static_cast<double>(n) - static_cast<double>(n) * s3 / disc);
    s.n1 = static_cast<int>(std::lround(n1_exact));
    s.n1 = std::clamp(s.n1, 0, n);
    s.n2 = n - s.n1;
    s.g_ref = 0.5 * (s.g1 + s.g2);
    s.dg_tilde = (s.g1 - s.g2) / (2.0 * s.g_ref);
    return s;
}

Moments forward_moments(const TwoEnsembleSplit& split) {
    Moments m;
    const double n = split.n_total();
    const double p = split.n1 / n, q = split.n2 / n;
    m.mean_g = p * split.g1 + q * split.g2;
    const double a = split.g1 - m.mean_g, b = split.g2 - m.mean_g;
    m.var_g = p * a * a + q * b * b;
    m.skew_g = p * a * a * a + q * b * b * b;
    return m;
}

bool RegimeReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

RegimeReport regime_check(const CircuitSpec& circuit, const TrapSpec& trap, double n_atoms, double g_typ,
                          double threshold) {
    using namespace constants;
    RegimeReport report;
    const double kappa = circuit.kappa > 0 ? circuit.kappa : circuit.omega / circuit.quality;
    const double gamma = g_typ * g_typ / kappa;
    const double v_th = std::sqrt(k_boltzmann * trap.temperature / trap.mass);

    report.n_upper = (kappa / g_typ) * (kappa / g_typ);
    report.n_lower = v_th / (gamma * circuit.d);
    report.t_upper = trap.mass * (kappa * circuit.d) * (kappa * circuit.d) / k_boltzmann;

    auto add = [&](std::string name, double ratio, std::string detail) {
        report.checks.push_back({std::move(name), ratio, threshold, ratio < threshold, std::move(detail)});
    };
    add("superradiance  sqrt(N) g << kappa", std::sqrt(n_atoms) * g_typ / kappa,
        "upper bound N << " + std::to_string(report.n_upper));
    add("frozen positions  N >> v_th/(gamma d)", report.n_lower / n_atoms,
        "lower bound N >> " + std::to_string(report.n_lower));
    add("temperature  T << M (kappa d)^2 / kB", trap.temperature / report.t_upper,
        "upper bound T << " + std::to_string(report.t_upper) + " K");
    const double kt2 = 2.0 * k_boltzmann * trap.temperature;
    add("classical positions x  hbar Omega/2 << kB T", hbar * trap.omega_trap.x / kt2, "");
    add("classical positions y  hbar Omega/2 << kB T", hbar * trap.omega_trap.y / kt2, "");
    add("classical positions z  hbar Omega/2 << kB T", hbar * trap.omega_trap.z / kt2, "");
    return report;
}

} // namespace srlab
