#include "srlab/product_space.hpp"

#include "srlab/wigner.hpp"

namespace srlab {

TwoGroupSpace::TwoGroupSpace(const TwoEnsembleSplit& split)
    : j1_(HalfInt::from_twice(split.n1)), j2_(HalfInt::from_twice(split.n2)) {
    if (split.n1 < 0 || split.n2 < 0 || split.n_total() < 1)
        throw InvalidQuantumNumber("TwoGroupSpace: need n1, n2 >= 0 and n1 + n2 >= 1");
    g1t_ = 1.0 + split.dg_tilde;
    g2t_ = 1.0 - split.dg_tilde;

    d1_.resize(dim1());
    for (int i = 0; i < dim1(); ++i)
        d1_[i] = lower_coeff(j1_, HalfInt::from_twice(-j1_.twice() + 2 * i));
    d2_.resize(dim2());
    for (int i = 0; i < dim2(); ++i)
        d2_[i] = lower_coeff(j2_, HalfInt::from_twice(-j2_.twice() + 2 * i));

    jz_diag_.resize(dim());
    for (int i1 = 0; i1 < dim1(); ++i1)
        for (int i2 = 0; i2 < dim2(); ++i2)
            jz_diag_[index(i1, i2)] = (-j1_.value() + i1) + (-j2_.value() + i2);
}

Eigen::MatrixXd TwoGroupSpace::lowering_matrix() const {
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim(), dim());
    for (int col = 0; col < dim(); ++col) {
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim());
        unit[col] = 1.0;
        Eigen::VectorXd out(dim());
        apply_lowering(unit, out);
        op.col(col) = out;
    }
    return op;
}

Eigen::VectorXd TwoGroupSpace::fully_excited() const {
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim());
    psi[index(dim1() - 1, dim2() - 1)] = 1.0;
    return psi;
}

Eigen::MatrixXd build_collective_lowering(const TwoEnsembleSplit& split) {
    return TwoGroupSpace(split).lowering_matrix();
}

} // namespace srlab
