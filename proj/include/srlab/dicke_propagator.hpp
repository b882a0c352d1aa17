#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "srlab/halfint.hpp"
#include "srlab/wigner.hpp"

namespace srlab {

// Conserved labels x = (j, j', k) of one density-matrix block: the entry
// rho_m(x) is <alpha; j, m+k| rho |alpha'; j', m-k>. The propagator does not
// depend on the degeneracy labels alpha, alpha'; they only tag blocks.
struct Sector {
    HalfInt j, jp, k;
    int alpha = 0, alpha_p = 0;

    // m runs from max(-j-k, -j'+k) to min(j-k, j'+k) in steps of 1
    HalfInt m_lo() const { return max(-j - k, -jp + k); }
    HalfInt m_hi() const { return min(j - k, jp + k); }
    int size() const { return (m_hi().twice() - m_lo().twice()) / 2 + 1; }
    bool contains(HalfInt m) const { return m_lo() <= m && m <= m_hi() && ((m - m_lo()).is_integer()); }
    int index_of(HalfInt m) const;

    bool is_probability() const { return j == jp && k.twice() == 0 && alpha == alpha_p; }

    void validate() const;

    friend bool operator==(const Sector&, const Sector&) = default;
};

// Complex block rho_m(x) over the allowed m range of its sector.
struct BlockDensity {
    Sector sector;
    Eigen::VectorXcd values; // indexed by (m - m_lo)

    std::complex<double> at(HalfInt m) const { return values[sector.index_of(m)]; }
    std::complex<double>& at(HalfInt m) { return values[sector.index_of(m)]; }
    std::complex<double> trace() const { return values.sum(); }

    static BlockDensity zero(const Sector& s);
};

// Rescaled-time rate coefficients of the block equation
//   d rho_m / d tau = a_{m+1} rho_{m+1} - b_m rho_m, with
//   a_m = d-(j, m+k) d-(j', m-k) / J
//   b_m = [d+(j, m+k-1) d-(j, m+k) + d-(j', m-k) d+(j', m-k-1)] / (2J)
// J is the rescaling constant j_max + 1/2 of the driving problem.
struct RateCoeffs {
    double a = 0, b = 0;
};

RateCoeffs rate_coeffs(const Sector& x, HalfInt m, double J);

// Propagates a block forward by tau (>= 0) with an adaptive integrator at
// relative tolerance rtol. Exact linear evolution, no truncation.
BlockDensity propagate_block(const BlockDensity& block, double tau, double J, double rtol = 1e-12);

// Real propagator matrix D(x, tau) with columns D(:, n) = evolution of the
// unit vector at n; rho(tau) = D rho(0) within the sector.
Eigen::MatrixXd propagator_matrix(const Sector& x, double tau, double J, double rtol = 1e-12);

// Laplace-transform gain (1/a_m) prod_{l=m..n} a_l/(z + b_l) for m <= n,
// evaluated in the cancelled form that stays finite at sector edges.
// Algebraic cross-check only; throws PoleHit within 1e-14 of a pole.
std::complex<double> laplace_gain(const Sector& x, HalfInt m, HalfInt n, std::complex<double> z, double J);

// Q(x, m, n) = prod_{l=m+1..n} q_l(x), the coefficient ratio that links a
// coherence sector to the probability sector with the same j.
double q_factor(const Sector& x, HalfInt m, HalfInt n);

// D_mn(x, tau) = exp[(j(j+1) - j'(j'+1) + 2k^2) tau/(2J)] Q(x,m,n) D_mn(j,j,0,tau),
// the coherence propagator expressed through the probability one. The
// reference D_mn(j,j,0,tau) is evaluated on this sector's own m grid (its
// value only involves coefficients with l in [m, n]); for integer k with
// indices inside [-j, j] it coincides with the (j, j, 0) block propagator.
double propagate_coherence_via_probability(const Sector& x, HalfInt m, HalfInt n, double tau, double J,
                                           double rtol = 1e-12);

// Dimension of the decoherence-free subspace of N identically-coupled
// emitters: C(N, N/2) for even N, C(N, (N-1)/2) for odd N.
std::uint64_t dfs_dimension(int n_atoms);

// Propagator matrices for one sector, materialized once per requested tau.
class SectorPropagatorCache {
  public:
    SectorPropagatorCache(Sector x, double J, double rtol = 1e-12) : x_(x), J_(J), rtol_(rtol) {}
    const Eigen::MatrixXd& at(double tau);

  private:
    Sector x_;
    double J_, rtol_;
    std::map<double, Eigen::MatrixXd> cache_;
};

} // namespace srlab
