#include "perigp/bounded_lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "perigp/errors.hpp"

namespace perigp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd project(Eigen::VectorXd x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
}

struct Evaluator {
    const BoundedLbfgs::Objective& f;
    int budget;
    int used = 0;

    double operator()(const Eigen::VectorXd& x) {
        if (used >= budget) return kInf;
        ++used;
        const double v = f(x);
        return std::isfinite(v) ? v : kInf;
    }
    bool exhausted() const { return used >= budget; }
};

// Central differences, each coordinate perturbed inside the box. At a bound
// the stencil is shifted to stay feasible (one-sided difference).
Eigen::VectorXd gradient(Evaluator& eval, const Eigen::VectorXd& x, double fx, double h,
                         const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    const Eigen::Index dim = x.size();
    Eigen::VectorXd g(dim);
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double step = h * std::max(1.0, std::abs(x[i]));
        const double up = std::min(x[i] + step, hi[i]);
        const double dn = std::max(x[i] - step, lo[i]);
        if (up == dn) {
            g[i] = 0.0;
            continue;
        }
        probe[i] = up;
        const double fu = up == x[i] ? fx : eval(probe);
        probe[i] = dn;
        const double fd = dn == x[i] ? fx : eval(probe);
        probe[i] = x[i];
        if (!std::isfinite(fu) || !std::isfinite(fd)) {
            // A barrier inside the stencil: fall back to the finite side.
            if (std::isfinite(fu))
                g[i] = (fu - fx) / (up - x[i]);
            else if (std::isfinite(fd))
                g[i] = (fx - fd) / (x[i] - dn);
            else
                g[i] = 0.0;
        } else {
            g[i] = (fu - fd) / (up - dn);
        }
    }
    return g;
}
}  // namespace

BoundedLbfgs::Result BoundedLbfgs::minimize(const Objective& f, const Eigen::VectorXd& x0,
                                            const Eigen::VectorXd& lower,
                                            const Eigen::VectorXd& upper,
                                            const Options& opts) {
    const Eigen::Index dim = x0.size();
    if (lower.size() != dim || upper.size() != dim)
        throw ConfigError("optimizer: bound dimensions do not match the start point");
    for (Eigen::Index i = 0; i < dim; ++i)
        if (!(lower[i] <= upper[i])) throw ConfigError("optimizer: lower bound above upper");

    Evaluator eval{f, opts.max_evals};
    Result res;
    res.x = project(x0, lower, upper);
    res.f = eval(res.x);
    if (!std::isfinite(res.f)) {
        res.f = kInf;
        res.n_evals = eval.used;
        return res;
    }

    Eigen::VectorXd g = gradient(eval, res.x, res.f, opts.grad_step, lower, upper);
    std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;  // (s, y)

    while (!eval.exhausted()) {
        // Projected gradient as the stationarity measure for the box.
        const Eigen::VectorXd pg = res.x - project(res.x - g, lower, upper);
        if (pg.lpNorm<Eigen::Infinity>() <= opts.grad_tol * (1.0 + std::abs(res.f))) {
            res.converged = true;
            break;
        }

        // Two-loop recursion for the search direction.
        Eigen::VectorXd d = -g;
        if (!pairs.empty()) {
            std::vector<double> alpha(pairs.size());
            for (std::size_t i = pairs.size(); i-- > 0;) {
                const auto& [s, y] = pairs[i];
                alpha[i] = s.dot(d) / y.dot(s);
                d -= alpha[i] * y;
            }
            const auto& [s_last, y_last] = pairs.back();
            d *= s_last.dot(y_last) / y_last.dot(y_last);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto& [s, y] = pairs[i];
                d += (alpha[i] - y.dot(d) / y.dot(s)) * s;
            }
        }
        if (!d.allFinite() || d.dot(g) >= 0.0) {
            pairs.clear();
            d = -g;
        }

        // Backtracking Armijo search along the projected path.
        double step = 1.0;
        Eigen::VectorXd x_new;
        double f_new = kInf;
        bool accepted = false;
        for (int probe = 0; probe < 40 && !eval.exhausted(); ++probe) {
            x_new = project(res.x + step * d, lower, upper);
            const Eigen::VectorXd dx = x_new - res.x;
            if (dx.lpNorm<Eigen::Infinity>() == 0.0) break;
            f_new = eval(x_new);
            if (std::isfinite(f_new) && f_new <= res.f + 1e-4 * g.dot(dx)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (pairs.empty()) {
                // Steepest descent cannot improve either: numerically done.
                res.converged = true;
                break;
            }
            pairs.clear();
            continue;
        }

        const double f_drop = res.f - f_new;
        const Eigen::VectorXd s = x_new - res.x;
        res.x = x_new;
        res.f = f_new;
        if (eval.exhausted()) break;

        Eigen::VectorXd g_new = gradient(eval, res.x, res.f, opts.grad_step, lower, upper);
        const Eigen::VectorXd y = g_new - g;
        g = g_new;
        const double sy = s.dot(y);
        if (sy > 1e-10 * s.norm() * y.norm()) {
            pairs.emplace_back(s, y);
            if (static_cast<int>(pairs.size()) > opts.history) pairs.pop_front();
        }
        if (f_drop <= opts.f_tol * (1.0 + std::abs(res.f))) {
            res.converged = true;
            break;
        }
    }

    res.n_evals = eval.used;
    return res;
}

}  // namespace perigp
