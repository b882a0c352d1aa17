#include <cmath>

#include <doctest.h>

#include "srlab/coupled_basis.hpp"
#include "srlab/wigner.hpp"

using namespace srlab;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

// Recoupling overlap <((ab)e d) c gamma | (a (bd) f) c gamma> expanded in the
// product basis; equals sqrt((2e+1)(2f+1)) W(a,b,c,d;e,f). Independent of the
// implementation: it contracts CG products over all magnetic quantum numbers.
double racah_w_bruteforce(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    const HalfInt gamma = c; // any valid projection; the stretched one is simplest
    double overlap = 0.0;
    for (int ta = -a.twice(); ta <= a.twice(); ta += 2)
        for (int tb = -b.twice(); tb <= b.twice(); tb += 2)
            for (int td = -d.twice(); td <= d.twice(); td += 2) {
                const HalfInt al = h(ta), be = h(tb), de = h(td);
                if ((al + be + de) != gamma) continue;
                if (!e.holds_projection(al + be) || !f.holds_projection(be + de)) continue;
                overlap += clebsch_gordan(a, al, b, be, e, al + be) *
                           clebsch_gordan(e, al + be, d, de, c, gamma) *
                           clebsch_gordan(b, be, d, de, f, be + de) *
                           clebsch_gordan(a, al, f, be + de, c, gamma);
            }
    return overlap / std::sqrt((e.twice() + 1.0) * (f.twice() + 1.0));
}

} // namespace

TEST_CASE("ladder coefficient values and errors") {
    CHECK(lower_coeff(h(1), h(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(raise_coeff(h(2), h(2)) == 0.0);
    CHECK(raise_coeff(h(7), h(7)) == 0.0);
    CHECK(lower_coeff(h(2), h(0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(lower_coeff(h(1), h(3)), InvalidQuantumNumber);
    CHECK_THROWS_AS(lower_coeff(h(2), h(1)), InvalidQuantumNumber); // parity mismatch
}

TEST_CASE("clebsch-gordan spot values") {
    // coupling with zero angular momentum
    for (int tj = 0; tj <= 6; ++tj)
        for (int tm = -tj; tm <= tj; tm += 2)
            CHECK(clebsch_gordan(h(tj), h(tm), h(0), h(0), h(tj), h(tm)) ==
                  doctest::Approx(1.0).epsilon(1e-14));
    // stretched two-spin state
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(2)) == doctest::Approx(1.0).epsilon(1e-15));
    // singlet component of the 2-spin basis
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(clebsch_gordan(h(1), h(-1), h(1), h(1), h(0), h(0)) ==
          doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    // m mismatch and triangle violations return 0
    CHECK(clebsch_gordan(h(1), h(1), h(1), h(1), h(0), h(0)) == 0.0);
    CHECK(clebsch_gordan(h(2), h(0), h(2), h(0), h(6), h(0)) == 0.0);
    CHECK(clebsch_gordan(h(0), h(0), h(2), h(0), h(6), h(0)) == 0.0);
    // malformed (j, m) throws
    CHECK_THROWS_AS(clebsch_gordan(h(1), h(2), h(1), h(0), h(2), h(2)), InvalidQuantumNumber);
}

TEST_CASE("clebsch-gordan orthogonality and completeness, sampled pairs") {
    for (int tj1 = 0; tj1 <= 8; tj1 += 2)
        for (int tj2 = 1; tj2 <= 7; tj2 += 3) {
            const CgTable table(h(tj1), h(tj2));
            for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2)
                for (int tjp = std::abs(tj1 - tj2); tjp <= tj1 + tj2; tjp += 2)
                    for (int tm = -std::min(tj, tjp); tm <= std::min(tj, tjp); tm += 2) {
                        double sum = 0.0;
                        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                            sum += table.cg(h(tm1), h(tm - tm1), h(tj)) *
                                   table.cg(h(tm1), h(tm - tm1), h(tjp));
                        CHECK(std::abs(sum - (tj == tjp ? 1.0 : 0.0)) < 1e-12);
                    }
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                    double sum = 0.0;
                    for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2) {
                        const double c = table.cg(h(tm1), h(tm2), h(tj));
                        sum += c * c;
                    }
                    CHECK(std::abs(sum - 1.0) < 1e-12);
                }
        }
}

TEST_CASE("racah W against the brute-force recoupling contraction") {
    // the smallest nontrivial half-spin case first
    CHECK(racah_w(h(1), h(1), h(1), h(1), h(2), h(1)) ==
          doctest::Approx(racah_w_bruteforce(h(1), h(1), h(1), h(1), h(2), h(1))).epsilon(1e-13));

    for (int ta = 0; ta <= 4; ++ta)
        for (int tb = 0; tb <= 4; ++tb)
            for (int te = std::abs(ta - tb); te <= ta + tb; te += 2)
                for (int td = 0; td <= 4; ++td)
                    for (int tc = std::abs(te - td); tc <= te + td; tc += 2)
                        for (int tf = std::abs(tb - td); tf <= tb + td; tf += 2) {
                            if (!triangle_ok(h(ta), h(tc), h(tf))) continue;
                            const double got = racah_w(h(ta), h(tb), h(tc), h(td), h(te), h(tf));
                            const double want =
                                racah_w_bruteforce(h(ta), h(tb), h(tc), h(td), h(te), h(tf));
                            CHECK(std::abs(got - want) < 1e-12);
                        }
}

TEST_CASE("racah W special case and selection rules") {
    // W(a,a,c,c;0,f) = (-1)^(f-a-c)/sqrt((2a+1)(2c+1))
    for (int ta = 0; ta <= 6; ++ta)
        for (int tc = 0; tc <= 6; ++tc)
            for (int tf = std::abs(ta - tc); tf <= ta + tc; tf += 2) {
                const double expected = phase_from_twice(tf - ta - tc) /
                                        std::sqrt((ta + 1.0) * (tc + 1.0));
                CHECK(racah_w(h(ta), h(ta), h(tc), h(tc), h(0), h(tf)) ==
                      doctest::Approx(expected).epsilon(1e-13));
            }
    // violated triangle: a=0, b=1 with e=0 requires a=b
    CHECK(racah_w(h(0), h(2), h(2), h(2), h(0), h(2)) == 0.0);
    CHECK_THROWS_AS(wigner_6j(h(-2), h(0), h(0), h(0), h(0), h(0)), InvalidQuantumNumber);
}

TEST_CASE("reduced matrix elements") {
    CHECK(reduced_element(h(1), ReducedKind::t1_j) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
    CHECK(reduced_element(h(1), ReducedKind::t2_jj) == 0.0);
    CHECK(reduced_element(h(2), ReducedKind::t0_jj) ==
          doctest::Approx(-2.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(reduced_element(h(2), ReducedKind::t1_jj) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_THROWS_AS(reduced_element(h(-1), ReducedKind::t1_j), InvalidQuantumNumber);
}
