#include "perigp/periodic_kernel.hpp"

#include <cmath>

#include "perigp/errors.hpp"

namespace perigp {

PeriodicKernel::PeriodicKernel(const MaternSpec& base, const FourierBasis& basis,
                               const RkhsDomain& dom)
    : base_(base), basis_(basis), dom_(dom) {
    const int n = basis_.size();
    const DifferentialOperator op = matern_operator(base_);
    const auto& terms = basis_.terms();

    gram_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = inner_product(op, dom_, terms[static_cast<std::size_t>(i)],
                                           terms[static_cast<std::size_t>(j)]);
            gram_(i, j) = v;
            gram_(j, i) = v;
        }
    }

    const double scale = gram_.trace() / static_cast<double>(n);
    Eigen::MatrixXd g = gram_;
    llt_.compute(g);
    double jitter = 1e-12 * scale;
    while (llt_.info() != Eigen::Success) {
        if (jitter > 1e-6 * scale)
            throw FactorizationFailure(
                "periodic-kernel Gram matrix is not positive definite within the jitter "
                "budget (2q = " + std::to_string(n) + ")");
        g = gram_ + jitter * Eigen::MatrixXd::Identity(n, n);
        llt_.compute(g);
        if (llt_.info() == Eigen::Success) {
            jitter_ = jitter;
            return;
        }
        jitter *= 10.0;
    }
}

double PeriodicKernel::k_p(double x, double y) const {
    const Eigen::VectorXd fx = basis_.evaluate(x);
    const Eigen::VectorXd fy = basis_.evaluate(y);
    return fx.dot(llt_.solve(fy));
}

double PeriodicKernel::k_a(double x, double y) const {
    return matern_eval(base_, x, y) - k_p(x, y);
}

Eigen::MatrixXd PeriodicKernel::half_features(const std::vector<double>& points) const {
    Eigen::MatrixXd f = basis_.evaluate_all(points);
    llt_.matrixL().solveInPlace(f);
    return f;
}

Eigen::MatrixXd PeriodicKernel::k_p_matrix(const std::vector<double>& xs,
                                           const std::vector<double>& ys) const {
    return half_features(xs).transpose() * half_features(ys);
}

}  // namespace perigp
