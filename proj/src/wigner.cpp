#include "srlab/wigner.hpp"

#include <array>
#include <cmath>
#include <memory>

namespace srlab {

namespace {

// log(n!) in long double, indexed by n. 1023 covers j up to ~250 in the
// Racah sums, well past the supported range.
constexpr int kMaxFact = 1024;

const long double* log_fact_table() {
    static const auto table = [] {
        auto t = std::make_unique<std::array<long double, kMaxFact>>();
        (*t)[0] = 0.0L;
        for (int n = 1; n < kMaxFact; ++n)
            (*t)[n] = (*t)[n - 1] + std::log(static_cast<long double>(n));
        return t;
    }();
    return table->data();
}

// log((th/2)!) for an even doubled argument
inline long double lf(int th) { return log_fact_table()[th >> 1]; }

// log of the triangle coefficient Delta(a,b,c)
inline long double log_delta(int ta, int tb, int tc) {
    return 0.5L * (lf(ta + tb - tc) + lf(ta - tb + tc) + lf(-ta + tb + tc) - lf(ta + tb + tc + 2));
}

// Kahan-compensated accumulator; the Racah sums alternate in sign.
struct CompensatedSum {
    long double s = 0.0L, c = 0.0L;
    void add(long double x) {
        const long double y = x - c;
        const long double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

} // namespace

double ladder_coeff(HalfInt j, HalfInt m, Ladder which) {
    require_jm(j, m, "ladder_coeff");
    const double jv = j.value(), mv = m.value();
    const double shifted = which == Ladder::raise_ ? mv + 1.0 : mv - 1.0;
    const double arg = jv * (jv + 1.0) - mv * shifted;
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
    require_jm(j1, m1, "clebsch_gordan");
    require_jm(j2, m2, "clebsch_gordan");
    require_jm(j, m, "clebsch_gordan");
    if ((m1 + m2) != m) return 0.0;
    const int tj1 = j1.twice(), tj2 = j2.twice(), tj = j.twice();
    const int tm1 = m1.twice(), tm2 = m2.twice(), tm = m.twice();
    if (!triangle_ok(j1, j2, j)) return 0.0;

    // Racah closed form, summed over the integer t for which all factorial
    // arguments are non-negative.
    const int lo = std::max({0, -(tj - tj2 + tm1), -(tj - tj1 - tm2)});
    const int hi = std::min({tj1 + tj2 - tj, tj1 - tm1, tj2 + tm2});
    if (lo > hi) return 0.0;

    const long double log_prefix =
        0.5L * std::log(static_cast<long double>(tj + 1)) + log_delta(tj1, tj2, tj) +
        0.5L * (lf(tj1 + tm1) + lf(tj1 - tm1) + lf(tj2 + tm2) + lf(tj2 - tm2) + lf(tj + tm) + lf(tj - tm));

    CompensatedSum sum;
    for (int tt = lo; tt <= hi; tt += 2) {
        const long double log_term = log_prefix - lf(tt) - lf(tj1 + tj2 - tj - tt) - lf(tj1 - tm1 - tt) -
                                     lf(tj2 + tm2 - tt) - lf(tj - tj2 + tm1 + tt) - lf(tj - tj1 - tm2 + tt);
        const long double sign = (tt & 2) ? -1.0L : 1.0L;
        sum.add(sign * std::exp(log_term));
    }
    return static_cast<double>(sum.s);
}

double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    for (HalfInt x : {a, b, c, d, e, f})
        if (!x.valid_j()) throw InvalidQuantumNumber("wigner_6j: negative j = " + x.str());
    if (!triangle_ok(a, b, c) || !triangle_ok(a, e, f) || !triangle_ok(d, b, f) || !triangle_ok(d, e, c))
        return 0.0;
    const int ta = a.twice(), tb = b.twice(), tc = c.twice();
    const int td = d.twice(), te = e.twice(), tf = f.twice();

    const int alpha1 = ta + tb + tc, alpha2 = ta + te + tf;
    const int alpha3 = td + tb + tf, alpha4 = td + te + tc;
    const int beta1 = ta + tb + td + te, beta2 = tb + tc + te + tf, beta3 = ta + tc + td + tf;
    const int lo = std::max({alpha1, alpha2, alpha3, alpha4});
    const int hi = std::min({beta1, beta2, beta3});
    if (lo > hi) return 0.0;

    const long double log_prefix =
        log_delta(ta, tb, tc) + log_delta(ta, te, tf) + log_delta(td, tb, tf) + log_delta(td, te, tc);

    CompensatedSum sum;
    for (int tt = lo; tt <= hi; tt += 2) {
        const long double log_term = log_prefix + lf(tt + 2) - lf(tt - alpha1) - lf(tt - alpha2) -
                                     lf(tt - alpha3) - lf(tt - alpha4) - lf(beta1 - tt) - lf(beta2 - tt) -
                                     lf(beta3 - tt);
        const long double sign = (tt & 2) ? -1.0L : 1.0L;
        sum.add(sign * std::exp(log_term));
    }
    return static_cast<double>(sum.s);
}

double racah_w(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    const double six = wigner_6j(a, b, e, d, c, f);
    if (six == 0.0) return 0.0;
    return phase_from_twice(a.twice() + b.twice() + c.twice() + d.twice()) * six;
}

double reduced_element(HalfInt j, ReducedKind kind) {
    if (!j.valid_j()) throw InvalidQuantumNumber("reduced_element: negative j = " + j.str());
    const double jj = j.value() * (j.value() + 1.0);
    switch (kind) {
    case ReducedKind::t1_j: return std::sqrt(jj);
    case ReducedKind::t0_jj: return -jj / std::sqrt(3.0);
    case ReducedKind::t1_jj: return -std::sqrt(0.5 * jj);
    case ReducedKind::t2_jj: {
        const double arg = jj * (2.0 * j.value() - 1.0) * (2.0 * j.value() + 3.0) / 6.0;
        return arg > 0.0 ? std::sqrt(arg) : 0.0;
    }
    }
    return 0.0;
}

} // namespace srlab
