#pragma once

#include <Eigen/Dense>

namespace qcap::detail {

// Lawson-Hanson active set: argmin ||A x - b|| subject to x >= 0.
inline Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_outer = 200) {
    const Eigen::Index n = A.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(n, false);
    constexpr double tol = 1e-14;

    for (int outer = 0; outer < max_outer; ++outer) {
        const Eigen::VectorXd w = A.transpose() * (b - A * x);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[j] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        }
        if (best < 0) break;
        passive[best] = true;

        for (int inner = 0; inner < 4 * static_cast<int>(n) + 4; ++inner) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[j]) idx.push_back(j);
            Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
            const Eigen::VectorXd zs = sub.completeOrthogonalDecomposition().solve(b);

            Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
            bool feasible = true;
            for (std::size_t c = 0; c < idx.size(); ++c) {
                z[idx[c]] = zs[static_cast<Eigen::Index>(c)];
                if (zs[static_cast<Eigen::Index>(c)] <= tol) feasible = false;
            }
            if (feasible) {
                x = z;
                break;
            }
            double alpha = 1.0;
            for (auto j : idx) {
                if (z[j] <= tol) alpha = std::min(alpha, x[j] / (x[j] - z[j]));
            }
            x += alpha * (z - x);
            for (auto j : idx) {
                if (x[j] <= tol) {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
        }
    }
    return x;
}

}  // namespace qcap::detail
