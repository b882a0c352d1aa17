#pragma once

#include <vector>

#include <Eigen/Dense>

#include "srlab/errors.hpp"

namespace srlab {

// Orthonormal basis of the kernel of op (columns of the returned matrix),
// via SVD. Singular values below 1e-10 count as zero; values inside the
// decision gap (1e-12, 1e-8) make the rank ambiguous and throw.
Eigen::MatrixXd dark_space(const Eigen::MatrixXd& op);

// Collective lowering sum_i c_i sigma-^(i) over the full 2^n spin space
// (basis index bit i = 1 means spin i excited). Used for brute-force
// dark-state counts; n <= 12 keeps this dense form reasonable.
Eigen::MatrixXd full_spin_space_lowering(int n, const std::vector<double>& couplings);

} // namespace srlab
