#include <cmath>

#include <doctest.h>

#include "srlab/lindblad.hpp"

using namespace srlab;

namespace {

Eigen::MatrixXcd excited_dyad(const TwoEnsembleSplit& split) {
    const TwoGroupSpace space(split);
    const Eigen::VectorXcd psi = space.fully_excited().cast<std::complex<double>>();
    return psi * psi.adjoint();
}

} // namespace

TEST_CASE("single excited spin relaxes as exp(-tau)") {
    const auto split = make_split(1, 0, 0.0);
    const auto rho0 = excited_dyad(split);
    for (double tau : {0.2, 1.0, 3.0}) {
        // <Jz>(tau) = e^{-tau} - 1/2
        const auto jz = lindblad_jz_curve(split, rho0, {tau});
        CHECK(std::abs(jz[0] - (std::exp(-tau) - 0.5)) < 1e-10);
    }
}

TEST_CASE("trace preservation and monotone inversion") {
    const auto split = make_split(3, 2, 0.4);
    const std::vector<double> taus = {0.0, 0.2, 0.5, 0.8, 1.2, 1.8, 2.5, 3.5, 5.0};
    const auto jz = lindblad_jz_curve(split, excited_dyad(split), taus);
    for (std::size_t i = 1; i < jz.size(); ++i) CHECK(jz[i] <= jz[i - 1] + 1e-10);

    for (double tau : {0.7, 2.0, 5.0}) {
        const auto evolved = lindblad_reference(excited_dyad(split), split, tau);
        CHECK(std::abs(evolved.trace().real() - 1.0) < 1e-10);
        CHECK(std::abs(evolved.trace().imag()) < 1e-12);
        CHECK((evolved - evolved.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("homogeneous relaxation ends in the ground state") {
    const auto split = make_split(2, 2, 0.0);
    const auto rho = lindblad_reference(excited_dyad(split), split, 40.0);
    const TwoGroupSpace space(split);
    const double jz = (space.jz_diagonal().cast<std::complex<double>>().asDiagonal() * rho).trace().real();
    CHECK(jz == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("dimension guard") {
    const auto split = make_split(80, 80, 0.0);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(81 * 81, 81 * 81);
    CHECK_THROWS_AS(lindblad_reference(rho, split, 1.0), InvalidQuantumNumber);
}
