#pragma once

#include <algorithm>
#include <cmath>

#include "srlab/errors.hpp"

namespace srlab {

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double initial_step = 1e-4;
    double max_step_growth = 5.0;
    double min_step_shrink = 0.2;
    double safety = 0.9;
};

// Dormand-Prince 5(4) embedded Runge-Kutta with step-size control.
// V is an Eigen vector (real or complex); deriv(const V&, V&) writes dy/dt.
// Integrates the autonomous system from t = 0 to t = t_end in place.
template <class V, class Deriv>
void integrate_dopri5(V& y, double t_end, Deriv&& deriv, const OdeOptions& opt = {}) {
    if (t_end < 0.0) throw ToleranceNotMet("integrate_dopri5: negative time span");
    if (t_end == 0.0) return;

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // difference between 5th and 4th order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    V k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()), k6(y.size()), k7(y.size());
    V ytmp(y.size()), ynew(y.size()), yerr(y.size());

    double t = 0.0;
    double h = std::min(opt.initial_step, t_end);
    const double h_floor = 1e-14 * std::max(1.0, t_end);
    deriv(y, k1); // FSAL

    while (t < t_end) {
        h = std::min(h, t_end - t);

        ytmp = y + h * (a21 * k1);
        deriv(ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        deriv(ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        deriv(ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        deriv(ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        deriv(ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        deriv(ynew, k7);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (long i = 0; i < y.size(); ++i) {
            const double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(yerr[i]) / scale;
            err = std::max(err, r);
        }

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);
        }
        const double factor = err > 0.0 ? opt.safety * std::pow(err, -0.2) : opt.max_step_growth;
        h *= std::clamp(factor, opt.min_step_shrink, opt.max_step_growth);
        if (h < h_floor)
            throw ToleranceNotMet("integrate_dopri5: step size underflow, tolerance not met");
    }
}

} // namespace srlab
