#include "srlab/dark_space.hpp"

#include <string>

namespace srlab {

Eigen::MatrixXd dark_space(const Eigen::MatrixXd& op) {
    if (op.rows() * op.cols() > 100000000)
        throw InvalidQuantumNumber("dark_space: operator too large");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int kernel_dim = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] > 1e-12 && sv[i] < 1e-8)
            throw RankAmbiguous("dark_space: singular value " + std::to_string(sv[i]) +
                                " inside the (1e-12, 1e-8) gap band");
        if (sv[i] < 1e-10) ++kernel_dim;
    }
    // right-singular vectors of the smallest singular values span the kernel
    return svd.matrixV().rightCols(kernel_dim);
}

Eigen::MatrixXd full_spin_space_lowering(int n, const std::vector<double>& couplings) {
    if (n < 1 || n > 12) throw InvalidQuantumNumber("full_spin_space_lowering: need 1 <= n <= 12");
    if (couplings.size() != static_cast<std::size_t>(n))
        throw InvalidQuantumNumber("full_spin_space_lowering: one coupling per spin");
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t state = 0; state < dim; ++state)
        for (int i = 0; i < n; ++i)
            if (state & (std::size_t{1} << i)) // spin i excited: sigma- flips it down
                op(state ^ (std::size_t{1} << i), state) += couplings[static_cast<std::size_t>(i)];
    return op;
}

} // namespace srlab
