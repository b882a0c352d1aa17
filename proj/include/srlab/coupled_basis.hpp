#pragma once

#include <vector>

#include "srlab/halfint.hpp"
#include "srlab/wigner.hpp"

namespace srlab {

// |(j1,j2) j m> basis state of two coupled pseudo-angular momenta.
struct CoupledState {
    HalfInt j1, j2, j, m;

    bool valid() const {
        return j1.valid_j() && j2.valid_j() && triangle_ok(j1, j2, j) && j.holds_projection(m);
    }
};

enum class LadderOp {
    minus_1,       // J-  on subsystem 1
    plus_minus_1,  // J+J- on subsystem 1
    minus_2,       // J-  on subsystem 2
    plus_minus_2,  // J+J- on subsystem 2
};

enum class LadderMethod { decouple, wigner_eckart };

// Matrix element <bra| op |ket> of a subsystem ladder operator in the
// coupled basis, by either of two independent routes:
//  - decouple: expand into product states with CG coefficients, apply the
//    operator there, recouple;
//  - wigner_eckart: closed form via Racah W and reduced matrix elements.
// Both are real and must agree; selection-rule violations give 0.
//
// Subsystem-2 elements follow the swapped-formula convention: they are the
// subsystem-1 expressions with j1 <-> j2 exchanged, i.e. the operator quoted
// in the (j2, j1) coupling order. Relative to the strict (j1, j2)-ordered
// representation this differs by the reordering sign (-1)^(j - j') on
// j-changing elements; every j-diagonal (observable) quantity is identical.
double ladder_element(const CoupledState& bra, const CoupledState& ket, LadderOp op, LadderMethod method);

// Table of CG coefficients <j1 m1; j2 m2 | j, m1+m2> for one fixed (j1, j2),
// immutable after construction. Speeds up the decoupling sums, which touch
// the same coefficients over and over.
class CgTable {
  public:
    CgTable(HalfInt j1, HalfInt j2);

    HalfInt j1() const { return j1_; }
    HalfInt j2() const { return j2_; }
    HalfInt j_min() const { return abs(j1_ - j2_); }
    HalfInt j_max() const { return j1_ + j2_; }

    // 0 outside selection rules
    double cg(HalfInt m1, HalfInt m2, HalfInt j) const;

    double ladder(HalfInt j, HalfInt m, HalfInt jp, HalfInt mp, LadderOp op) const;

  private:
    HalfInt j1_, j2_;
    int dim1_, dim2_, nj_;
    std::vector<double> table_; // [i1][i2][ij]
};

} // namespace srlab
