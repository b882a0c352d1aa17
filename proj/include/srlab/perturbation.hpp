#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "srlab/coupled_basis.hpp"
#include "srlab/dicke_propagator.hpp"

namespace srlab {

// Ordered collection of density-matrix blocks backing one flat vector.
struct BlockSet {
    std::vector<Sector> sectors;
    std::vector<int> offsets;
    int total = 0;

    void add(const Sector& s);
    int find(HalfInt j, HalfInt jp, HalfInt k) const; // -1 if absent

    Eigen::VectorXcd block_of(const Eigen::VectorXcd& flat, int idx) const {
        return flat.segment(offsets[idx], sectors[idx].size());
    }
};

// First-order perturbation theory in the coupling inhomogeneity for two
// subensembles of n1 and n2 spins, in the coupled basis |(j1,j2) j m> with
// j1 = n1/2, j2 = n2/2 fixed. The perturbing superoperator couples the top
// irrep only to j >= jmax - 2 (it is built from rank <= 2 tensors), so the
// block set {jmax, jmax-1, jmax-2} is exactly closed, not a truncation.
// Everything is reported per unit dg~.
class PerturbationEngine {
  public:
    PerturbationEngine(int n1, int n2);

    HalfInt j1() const { return j1_; }
    HalfInt j2() const { return j2_; }
    HalfInt j_max() const { return jmax_; }
    double big_j() const { return big_j_; }

    // Matrix element of the perturbing superoperator between irrep dyads,
    // <jm|L1[|lr><l'r'|]|j'm'>, per unit dg~.
    double l1_element(HalfInt j, HalfInt l, HalfInt m, HalfInt r, HalfInt jp, HalfInt lp, HalfInt mp,
                      HalfInt rp) const;

    // Closed form of the diagonal representation in the top irrep,
    //   2 (2 j1 - jmax) / (jmax (jmax + 1/2)) *
    //   [ delta_{n, r-1} (jmax + jmax^2 - n - n^2)
    //   - delta_{n, r}   (jmax + jmax^2 + n - n^2) ].
    static double closed_form_l1_jmax(HalfInt n, HalfInt r, HalfInt j1, HalfInt jmax);

    // amplitudes over |jmax, m>, m ascending from -jmax
    Eigen::VectorXcd top_state() const;
    int psi_index(HalfInt m) const { return (m.twice() + jmax_.twice()) / 2; }

    struct Result {
        std::vector<double> taus;
        std::vector<double> jz0; // <Jz> of the unperturbed evolution
        std::vector<double> jz1; // first-order correction per unit dg~
        BlockSet layout0, layout1;
        Eigen::VectorXcd rho0, rho1; // blocks at the last grid time
    };

    // Co-integrates d rho0/d tau = L0 rho0 and
    // d rho1/d tau = L0 rho1 + L1 rho0(tau), rho1(0) = 0, recording both
    // inversion curves on the (ascending) tau grid.
    Result evolve(const Eigen::VectorXcd& psi0, const std::vector<double>& tau_grid,
                  double rtol = 1e-12) const;

    double jz_zeroth(const Eigen::VectorXcd& psi0, double tau) const;
    double jz_first(const Eigen::VectorXcd& psi0, double tau) const;

    // Contribution of the (j, j, 0) block to the first-order inversion.
    static double jz1_contribution(const Result& result, HalfInt j);

    // rho1(tau) by the double-propagator quadrature (free evolution to tau',
    // one action of L1, free evolution to tau), on the same layout as
    // evolve(). Gauss-Legendre panels; small-system cross-check route.
    Eigen::VectorXcd rho1_quadrature(const Eigen::VectorXcd& psi0, double tau, BlockSet& layout,
                                     int panels = 24) const;

    // First-order inversion for the fully excited start from the explicit
    // top-irrep formula (probability propagator + closed-form elements).
    double jz_first_top_quadrature(double tau, int panels = 24) const;

  private:
    HalfInt j1_, j2_, jmax_;
    double big_j_;
    CgTable table_;

    std::vector<HalfInt> target_js() const;
    BlockSet layout_rho0(const Eigen::VectorXcd& psi0) const;
    BlockSet layout_rho1(const BlockSet& layout0) const;
    Eigen::VectorXcd initial_rho0(const Eigen::VectorXcd& psi0, const BlockSet& layout0) const;
    Eigen::SparseMatrix<std::complex<double>> assemble_l1(const BlockSet& layout0,
                                                          const BlockSet& layout1) const;
};

} // namespace srlab
