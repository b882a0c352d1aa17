#pragma once

#include <Eigen/Dense>

#include "srlab/chip_coupling.hpp"
#include "srlab/halfint.hpp"

namespace srlab {

// Two-group product basis |j1 m1> (x) |j2 m2| with j_i = n_i/2 (each
// subensemble stays in its symmetric subspace). Index runs m1-major with
// both projections ascending: idx = i1 (2 j2 + 1) + i2, m_i = -j_i + i_i.
class TwoGroupSpace {
  public:
    explicit TwoGroupSpace(const TwoEnsembleSplit& split);

    HalfInt j1() const { return j1_; }
    HalfInt j2() const { return j2_; }
    int dim1() const { return j1_.twice() + 1; }
    int dim2() const { return j2_.twice() + 1; }
    int dim() const { return dim1() * dim2(); }
    double g1_tilde() const { return g1t_; }
    double g2_tilde() const { return g2t_; }
    // j = j_max = (n1 + n2)/2, the normalization of J_z/j records
    double j_max() const { return 0.5 * (j1_.twice() + j2_.twice()); }
    // rescaling constant J = j_max + 1/2
    double big_j() const { return j_max() + 0.5; }

    int index(int i1, int i2) const { return i1 * dim2() + i2; }

    // y = (g1~ J1- + g2~ J2-) x   (collective lowering, banded)
    template <class V, class W> void apply_lowering(const V& x, W&& y) const;
    // y = (g1~ J1+ + g2~ J2+) x   (adjoint of the above; real coefficients)
    template <class V, class W> void apply_raising(const V& x, W&& y) const;

    // diagonal of J_z = J_z^(1) + J_z^(2)
    const Eigen::VectorXd& jz_diagonal() const { return jz_diag_; }

    Eigen::MatrixXd lowering_matrix() const;

    // |j1 j1> |j2 j2>, everything excited
    Eigen::VectorXd fully_excited() const;

  private:
    HalfInt j1_, j2_;
    double g1t_, g2t_;
    Eigen::VectorXd d1_, d2_; // d-(j, m) per index along each factor
    Eigen::VectorXd jz_diag_;
};

// Builds the collective lowering operator as a dense matrix (the spaces in
// play are small); convenience over apply_lowering for SVD-style analyses.
Eigen::MatrixXd build_collective_lowering(const TwoEnsembleSplit& split);

template <class V, class W>
void TwoGroupSpace::apply_lowering(const V& x, W&& y) const {
    const int n2 = dim2();
    y.setZero();
    for (int i1 = 0; i1 < dim1(); ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            const int idx = i1 * n2 + i2;
            if (i1 > 0) y[idx - n2] += g1t_ * d1_[i1] * x[idx];
            if (i2 > 0) y[idx - 1] += g2t_ * d2_[i2] * x[idx];
        }
    }
}

template <class V, class W>
void TwoGroupSpace::apply_raising(const V& x, W&& y) const {
    const int n2 = dim2();
    y.setZero();
    for (int i1 = 0; i1 < dim1(); ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            const int idx = i1 * n2 + i2;
            if (i1 > 0) y[idx] += g1t_ * d1_[i1] * x[idx - n2];
            if (i2 > 0) y[idx] += g2t_ * d2_[i2] * x[idx - 1];
        }
    }
}

} // namespace srlab
