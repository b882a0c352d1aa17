#pragma once

#include "srlab/halfint.hpp"

namespace srlab {

// Ladder-operator strength d_pm(j, m) = sqrt(j(j+1) - m(m+-1)).
enum class Ladder { raise_, lower_ };

double ladder_coeff(HalfInt j, HalfInt m, Ladder which);

inline double lower_coeff(HalfInt j, HalfInt m) { return ladder_coeff(j, m, Ladder::lower_); }
inline double raise_coeff(HalfInt j, HalfInt m) { return ladder_coeff(j, m, Ladder::raise_); }

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> in the Condon-Shortley
// convention (all coefficients real). Returns 0 when m != m1 + m2 or the
// triangle rule fails; throws InvalidQuantumNumber for malformed pairs.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);

// Wigner 6j symbol {a b c; d e f}. Returns 0 for violated triangle rules.
double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

// Racah W coefficient, W(a,b,c,d;e,f) = (-1)^(a+b+c+d) {a b e; d c f}.
double racah_w(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

// Reduced matrix elements <j||T||j> of the tensors built from one angular
// momentum: the vector itself, and the rank-0/1/2 products of two of them.
enum class ReducedKind {
    t1_j,   //  sqrt(j(j+1))
    t0_jj,  // -j(j+1)/sqrt(3)
    t1_jj,  // -sqrt(j(j+1)/2)
    t2_jj,  //  sqrt(j(j+1)(2j-1)(2j+3)/6)
};

double reduced_element(HalfInt j, ReducedKind kind);

inline bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
    const int ta = a.twice(), tb = b.twice(), tc = c.twice();
    return ((ta + tb + tc) & 1) == 0 && tc <= ta + tb && tc >= std::abs(ta - tb);
}

// (-1)^(t/2) for an even doubled value t; sign of a half-integer-power phase.
inline double phase_from_twice(int t) { return (t & 2) ? -1.0 : 1.0; }

} // namespace srlab
