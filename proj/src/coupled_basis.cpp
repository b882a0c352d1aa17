#include "srlab/coupled_basis.hpp"

#include <cmath>

namespace srlab {

namespace {

bool acts_on_second(LadderOp op) { return op == LadderOp::minus_2 || op == LadderOp::plus_minus_2; }
bool is_lowering(LadderOp op) { return op == LadderOp::minus_1 || op == LadderOp::minus_2; }

// Decoupling route: insert the product basis on both sides of the operator
// and apply it to the explicit factor states. Subsystem-2 elements are then
// converted to the j1 <-> j2 swapped-formula convention (see ladder_element
// docs) through the CG reordering symmetry, which contributes
// (-1)^(j1+j2-j) (-1)^(j1+j2-j') = (-1)^(j-j').
double decouple_element(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m, HalfInt jp, HalfInt mp, LadderOp op,
                        const CgTable* table) {
    const bool second = acts_on_second(op);
    const bool lowering = is_lowering(op);
    if (lowering && m != mp - HalfInt::whole(1)) return 0.0;
    if (!lowering && m != mp) return 0.0;

    auto cg = [&](HalfInt m1, HalfInt m2, HalfInt jj) {
        if (table) return table->cg(m1, m2, jj);
        if (!j1.holds_projection(m1) || !j2.holds_projection(m2)) return 0.0;
        return clebsch_gordan(j1, m1, j2, m2, jj, m1 + m2);
    };

    const HalfInt one = HalfInt::whole(1);
    double sum = 0.0;
    for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2) {
        const HalfInt m1 = HalfInt::from_twice(tm1);
        const HalfInt m2 = mp - m1;
        if (!j2.holds_projection(m2)) continue;
        const double unket = cg(m1, m2, jp);
        if (unket == 0.0) continue;
        double term;
        if (lowering) {
            if (!second) {
                if (!j1.holds_projection(m1 - one)) continue;
                term = lower_coeff(j1, m1) * cg(m1 - one, m2, j);
            } else {
                if (!j2.holds_projection(m2 - one)) continue;
                term = lower_coeff(j2, m2) * cg(m1, m2 - one, j);
            }
        } else {
            const double d = second ? lower_coeff(j2, m2) : lower_coeff(j1, m1);
            term = d * d * cg(m1, m2, j);
        }
        sum += unket * term;
    }
    if (second) sum *= phase_from_twice(j.twice() - jp.twice());
    return sum;
}

// Wigner-Eckart route for an operator acting on the first subsystem,
// split into the rank-K tensor components of J- and J+J-.
double we_element_first(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m, HalfInt jp, HalfInt mp, bool lowering) {
    const double root = std::sqrt((jp.twice() + 1.0) * (j1.twice() + 1.0));
    const double phase = phase_from_twice(j.twice() + j1.twice() - j2.twice() + 2);
    const HalfInt zero = HalfInt::whole(0), one = HalfInt::whole(1), two = HalfInt::whole(2);

    if (lowering) {
        return std::sqrt(2.0) * phase * root * reduced_element(j1, ReducedKind::t1_j) *
               racah_w(j1, j1, j, jp, one, j2) * clebsch_gordan(jp, mp, one, -one, j, m);
    }
    const double k0 = -(1.0 / 3.0) * racah_w(j1, j1, j, jp, zero, j2) *
                      clebsch_gordan(jp, mp, zero, zero, j, m) * j1.value() * (j1.value() + 1.0);
    const double k1 = 0.5 * racah_w(j1, j1, j, jp, one, j2) * clebsch_gordan(jp, mp, one, zero, j, m) *
                      std::sqrt(j1.value() * (j1.value() + 1.0));
    const double k2 = (1.0 / 6.0) * racah_w(j1, j1, j, jp, two, j2) *
                      clebsch_gordan(jp, mp, two, zero, j, m) * std::sqrt(6.0) *
                      reduced_element(j1, ReducedKind::t2_jj);
    return 2.0 * phase * root * (k0 + k1 + k2);
}

double we_element(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m, HalfInt jp, HalfInt mp, LadderOp op) {
    const bool lowering = is_lowering(op);
    if (!acts_on_second(op)) return we_element_first(j1, j2, j, m, jp, mp, lowering);
    return we_element_first(j2, j1, j, m, jp, mp, lowering);
}

} // namespace

double ladder_element(const CoupledState& bra, const CoupledState& ket, LadderOp op, LadderMethod method) {
    if (!bra.valid() || !ket.valid())
        throw InvalidQuantumNumber("ladder_element: malformed coupled state");
    if (bra.j1 != ket.j1 || bra.j2 != ket.j2)
        throw MismatchedAlpha("ladder_element: bra and ket differ in (j1, j2)");
    if (method == LadderMethod::decouple)
        return decouple_element(bra.j1, bra.j2, bra.j, bra.m, ket.j, ket.m, op, nullptr);
    return we_element(bra.j1, bra.j2, bra.j, bra.m, ket.j, ket.m, op);
}

CgTable::CgTable(HalfInt j1, HalfInt j2) : j1_(j1), j2_(j2) {
    if (!j1.valid_j() || !j2.valid_j()) throw InvalidQuantumNumber("CgTable: negative j");
    dim1_ = j1.twice() + 1;
    dim2_ = j2.twice() + 1;
    nj_ = (j_max().twice() - j_min().twice()) / 2 + 1;
    table_.assign(static_cast<size_t>(dim1_) * dim2_ * nj_, 0.0);
    for (int i1 = 0; i1 < dim1_; ++i1) {
        const HalfInt m1 = HalfInt::from_twice(-j1.twice() + 2 * i1);
        for (int i2 = 0; i2 < dim2_; ++i2) {
            const HalfInt m2 = HalfInt::from_twice(-j2.twice() + 2 * i2);
            for (int ij = 0; ij < nj_; ++ij) {
                const HalfInt j = HalfInt::from_twice(j_min().twice() + 2 * ij);
                if (!j.holds_projection(m1 + m2)) continue;
                table_[(static_cast<size_t>(i1) * dim2_ + i2) * nj_ + ij] =
                    clebsch_gordan(j1, m1, j2, m2, j, m1 + m2);
            }
        }
    }
}

double CgTable::cg(HalfInt m1, HalfInt m2, HalfInt j) const {
    if (!j1_.holds_projection(m1) || !j2_.holds_projection(m2)) return 0.0;
    if (j < j_min() || j > j_max() || ((j.twice() - j_min().twice()) & 1)) return 0.0;
    const int i1 = (m1.twice() + j1_.twice()) / 2;
    const int i2 = (m2.twice() + j2_.twice()) / 2;
    const int ij = (j.twice() - j_min().twice()) / 2;
    return table_[(static_cast<size_t>(i1) * dim2_ + i2) * nj_ + ij];
}

double CgTable::ladder(HalfInt j, HalfInt m, HalfInt jp, HalfInt mp, LadderOp op) const {
    return decouple_element(j1_, j2_, j, m, jp, mp, op, this);
}

} // namespace srlab
