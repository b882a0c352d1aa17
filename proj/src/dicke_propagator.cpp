#include "srlab/dicke_propagator.hpp"

#include <cmath>

#include "srlab/ode.hpp"

namespace srlab {

void Sector::validate() const {
    if (!j.valid_j() || !jp.valid_j())
        throw InvalidQuantumNumber("Sector: negative j");
    if (((j.twice() - jp.twice()) & 1) != 0)
        throw InvalidQuantumNumber("Sector: j and j' must be both integer or both half-integer");
    if (m_lo() > m_hi())
        throw InvalidQuantumNumber("Sector: empty m range for (j, j', k) = (" + j.str() + ", " + jp.str() +
                                   ", " + k.str() + ")");
}

int Sector::index_of(HalfInt m) const {
    if (!contains(m))
        throw OutOfSectorRange("Sector: m = " + m.str() + " outside [" + m_lo().str() + ", " + m_hi().str() + "]");
    return (m.twice() - m_lo().twice()) / 2;
}

BlockDensity BlockDensity::zero(const Sector& s) {
    s.validate();
    return {s, Eigen::VectorXcd::Zero(s.size())};
}

RateCoeffs rate_coeffs(const Sector& x, HalfInt m, double J) {
    if (!x.contains(m)) throw OutOfSectorRange("rate_coeffs: m outside sector range");
    // d+(j, m-1) = d-(j, m), so b_m reduces to a sum of squares; this form
    // never evaluates a d outside its ladder.
    const double dj = lower_coeff(x.j, m + x.k);
    const double djp = lower_coeff(x.jp, m - x.k);
    return {dj * djp / J, (dj * dj + djp * djp) / (2.0 * J)};
}

namespace {

struct BlockOde {
    std::vector<double> a, b; // a[i] = a_{m_i}, b[i] = b_{m_i}

    explicit BlockOde(const Sector& x, double J) {
        const int n = x.size();
        a.resize(n);
        b.resize(n);
        for (int i = 0; i < n; ++i) {
            const auto rc = rate_coeffs(x, HalfInt::from_twice(x.m_lo().twice() + 2 * i), J);
            a[i] = rc.a;
            b[i] = rc.b;
        }
    }

    template <class V> void operator()(const V& y, V& dy) const {
        const int n = static_cast<int>(a.size());
        for (int i = 0; i < n; ++i) {
            dy[i] = -b[i] * y[i];
            if (i + 1 < n) dy[i] += a[i + 1] * y[i + 1];
        }
    }
};

} // namespace

BlockDensity propagate_block(const BlockDensity& block, double tau, double J, double rtol) {
    block.sector.validate();
    if (tau < 0.0) throw OutOfSectorRange("propagate_block: tau must be >= 0");
    BlockDensity out = block;
    if (tau == 0.0) return out;
    const BlockOde ode(block.sector, J);
    OdeOptions opt;
    opt.rtol = rtol;
    integrate_dopri5(out.values, tau, ode, opt);
    return out;
}

Eigen::MatrixXd propagator_matrix(const Sector& x, double tau, double J, double rtol) {
    x.validate();
    const int n = x.size();
    const BlockOde ode(x, J);
    OdeOptions opt;
    opt.rtol = rtol;
    Eigen::MatrixXd d(n, n);
    for (int col = 0; col < n; ++col) {
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
        unit[col] = 1.0;
        if (tau > 0.0) integrate_dopri5(unit, tau, ode, opt);
        d.col(col) = unit;
    }
    return d;
}

std::complex<double> laplace_gain(const Sector& x, HalfInt m, HalfInt n, std::complex<double> z, double J) {
    x.validate();
    if (!x.contains(m) || !x.contains(n) || m > n)
        throw OutOfSectorRange("laplace_gain: need m <= n inside the sector");
    // (1/a_m) prod_{l=m..n} a_l/(z+b_l) with the leading a_m cancelled
    std::complex<double> gain = 1.0;
    for (HalfInt l = m; l <= n; l += HalfInt::whole(1)) {
        const auto rc = rate_coeffs(x, l, J);
        const std::complex<double> denom = z + rc.b;
        if (std::abs(denom) < 1e-14) throw PoleHit("laplace_gain: z at a pole -b_l");
        if (l > m) gain *= rc.a;
        gain /= denom;
    }
    return gain;
}

double q_factor(const Sector& x, HalfInt m, HalfInt n) {
    x.validate();
    if (!x.contains(m) || !x.contains(n) || m > n)
        throw OutOfSectorRange("q_factor: need m <= n inside the sector");
    const double j = x.j.value(), jp = x.jp.value(), k = x.k.value();
    double q = 1.0;
    for (HalfInt lh = m + HalfInt::whole(1); lh <= n; lh += HalfInt::whole(1)) {
        const double l = lh.value();
        q *= std::sqrt((j - k - l + 1.0) * (j + k + l) * (jp + k - l + 1.0) * (jp - k + l)) /
             ((j + l) * (j - l + 1.0));
    }
    return q;
}

double propagate_coherence_via_probability(const Sector& x, HalfInt m, HalfInt n, double tau, double J,
                                           double rtol) {
    x.validate();
    if (!x.contains(m) || !x.contains(n) || m > n)
        throw OutOfSectorRange("propagate_coherence_via_probability: need m <= n inside the sector");

    // Reference propagator with the probability-sector coefficient formula
    // a_l = b_l = (j(j+1) - l(l-1))/J, evaluated on this sector's own m grid.
    // D_mn depends only on coefficients with l in [m, n], so the window is
    // exact; for integer k in range this is the propagator of (j, j, 0).
    const double j = x.j.value();
    const int size = x.size();
    std::vector<double> coeff(size);
    for (int i = 0; i < size; ++i) {
        const double l = x.m_lo().value() + i;
        coeff[i] = (j * (j + 1.0) - l * (l - 1.0)) / J;
    }
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(size);
    unit[x.index_of(n)] = 1.0;
    if (tau > 0.0) {
        OdeOptions opt;
        opt.rtol = rtol;
        integrate_dopri5(
            unit, tau,
            [&coeff, size](const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
                for (int i = 0; i < size; ++i) {
                    dy[i] = -coeff[i] * y[i];
                    if (i + 1 < size) dy[i] += coeff[i + 1] * y[i + 1];
                }
            },
            opt);
    }
    const double d_prob = unit[x.index_of(m)];

    const double jp = x.jp.value(), k = x.k.value();
    const double shift = (j * (j + 1.0) - jp * (jp + 1.0) + 2.0 * k * k) / (2.0 * J);
    return std::exp(shift * tau) * q_factor(x, m, n) * d_prob;
}

std::uint64_t dfs_dimension(int n_atoms) {
    if (n_atoms < 1) throw InvalidQuantumNumber("dfs_dimension: need n >= 1");
    const int k = n_atoms / 2; // floor, covers both parities
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // C(n, i) = C(n, i-1) (n - i + 1) / i, exact at every step
        const std::uint64_t num = static_cast<std::uint64_t>(n_atoms - i + 1);
        if (result > UINT64_MAX / num)
            throw std::overflow_error("dfs_dimension: result exceeds 64 bits");
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

const Eigen::MatrixXd& SectorPropagatorCache::at(double tau) {
    auto it = cache_.find(tau);
    if (it == cache_.end())
        it = cache_.emplace(tau, propagator_matrix(x_, tau, J_, rtol_)).first;
    return it->second;
}

} // namespace srlab
