#include "srlab/lindblad.hpp"

#include "srlab/ode.hpp"

namespace srlab {

namespace {

// The generator acts on the density matrix flattened column-major; the
// superoperator itself is never materialized.
struct LindbladOde {
    const TwoGroupSpace& space;
    Eigen::MatrixXd jm, jpjm;

    explicit LindbladOde(const TwoGroupSpace& s) : space(s) {
        jm = s.lowering_matrix();
        jpjm = jm.transpose() * jm;
    }

    void operator()(const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const {
        const int n = space.dim();
        const Eigen::Map<const Eigen::MatrixXcd> rho(y.data(), n, n);
        Eigen::Map<Eigen::MatrixXcd> out(dy.data(), n, n);
        const double inv_2j = 1.0 / (2.0 * space.big_j());
        out.noalias() = 2.0 * (jm * rho * jm.transpose());
        out.noalias() -= jpjm * rho;
        out.noalias() -= rho * jpjm;
        out *= inv_2j;
    }
};

} // namespace

Eigen::MatrixXcd lindblad_reference(const Eigen::MatrixXcd& rho0, const TwoEnsembleSplit& split, double tau,
                                    double rtol) {
    const TwoGroupSpace space(split);
    const int n = space.dim();
    if (rho0.rows() != n || rho0.cols() != n)
        throw InvalidQuantumNumber("lindblad_reference: rho dimension does not match the split");
    if (n > 70)
        throw InvalidQuantumNumber("lindblad_reference: product dimension above the supported 70");

    const LindbladOde ode(space);
    Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), n * n);
    OdeOptions opt;
    opt.rtol = rtol;
    if (tau > 0.0) integrate_dopri5(y, tau, ode, opt);
    return Eigen::Map<const Eigen::MatrixXcd>(y.data(), n, n);
}

std::vector<double> lindblad_jz_curve(const TwoEnsembleSplit& split, const Eigen::MatrixXcd& rho0,
                                      const std::vector<double>& taus, double rtol) {
    const TwoGroupSpace space(split);
    std::vector<double> out;
    out.reserve(taus.size());
    Eigen::MatrixXcd rho = rho0;
    double t = 0.0;
    for (double tau : taus) {
        if (tau < t) throw OutOfSectorRange("lindblad_jz_curve: times must be non-decreasing");
        rho = lindblad_reference(rho, split, tau - t, rtol);
        t = tau;
        out.push_back((space.jz_diagonal().cast<std::complex<double>>().asDiagonal() * rho).trace().real());
    }
    return out;
}

} // namespace srlab
