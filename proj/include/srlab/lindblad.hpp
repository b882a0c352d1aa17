#pragma once

#include <Eigen/Dense>

#include "srlab/product_space.hpp"

namespace srlab {

// Exact integration of the superradiant master equation in rescaled time,
//   d rho / d tau = (1/2J) (2 Jm rho Jp - Jp Jm rho - rho Jp Jm),
// with the collective lowering Jm of the split in the two-group product
// basis. The oracle for SSE ensemble averages and finite-difference
// perturbation checks; single-threaded per call.
Eigen::MatrixXcd lindblad_reference(const Eigen::MatrixXcd& rho0, const TwoEnsembleSplit& split, double tau,
                                    double rtol = 1e-12);

// <Jz>(tau_k) along the exact solution, one entry per requested time.
std::vector<double> lindblad_jz_curve(const TwoEnsembleSplit& split, const Eigen::MatrixXcd& rho0,
                                      const std::vector<double>& taus, double rtol = 1e-12);

} // namespace srlab
