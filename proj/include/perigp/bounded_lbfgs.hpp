#pragma once

#include <functional>

#include <Eigen/Core>

namespace perigp {

// Box-constrained limited-memory BFGS with gradient-projection line search.
// Gradients come from central finite differences, so one iteration costs
// 2*dim evaluations plus the backtracking probes. Deterministic: no
// randomness, no parallelism, evaluation order fixed by the algorithm.
//
// Non-finite objective values are treated as +inf barriers; the line search
// backs away from them. If the very first point is non-finite the run is
// reported as failed (converged = false, f = +inf).
class BoundedLbfgs {
public:
    struct Options {
        int max_evals = 400;
        int history = 8;
        double grad_step = 1e-5;
        double grad_tol = 1e-5;
        double f_tol = 1e-10;
    };

    struct Result {
        Eigen::VectorXd x;
        double f = 0.0;
        bool converged = false;
        int n_evals = 0;
    };

    using Objective = std::function<double(const Eigen::VectorXd&)>;

    static Result minimize(const Objective& f, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                           const Options& opts);
};

inline BoundedLbfgs::Result minimize_default(const BoundedLbfgs::Objective& f,
                                             const Eigen::VectorXd& x0,
                                             const Eigen::VectorXd& lower,
                                             const Eigen::VectorXd& upper) {
    return BoundedLbfgs::minimize(f, x0, lower, upper, BoundedLbfgs::Options{});
}

}  // namespace perigp
