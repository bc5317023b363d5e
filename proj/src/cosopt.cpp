#include "perigp/cosopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "perigp/errors.hpp"

namespace perigp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Residual sum of squares of the best cosine gamma*cos(omega t + phi) fitted
// to r by linear least squares in (A, B) with
// gamma cos(omega t + phi) = A cos(omega t) + B sin(omega t).
struct CosineSolve {
    double a = 0.0;
    double b = 0.0;
    double rss = std::numeric_limits<double>::infinity();
};

CosineSolve solve_at_omega(const std::vector<double>& t, const Eigen::VectorXd& r,
                           double omega) {
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    double cc = 0.0, cs = 0.0, ss = 0.0, cr = 0.0, sr = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double c = std::cos(omega * t[static_cast<std::size_t>(i)]);
        const double s = std::sin(omega * t[static_cast<std::size_t>(i)]);
        cc += c * c;
        cs += c * s;
        ss += s * s;
        cr += c * r[i];
        sr += s * r[i];
    }
    const double det = cc * ss - cs * cs;
    CosineSolve out;
    if (std::abs(det) < 1e-12 * std::max(cc * ss, 1e-300)) return out;
    out.a = (ss * cr - cs * sr) / det;
    out.b = (cc * sr - cs * cr) / det;
    // rss = |r|^2 - 2 (A cr + B sr) + quadratic form; expand directly.
    out.rss = r.squaredNorm() - 2.0 * (out.a * cr + out.b * sr) + out.a * out.a * cc +
              2.0 * out.a * out.b * cs + out.b * out.b * ss;
    return out;
}
}  // namespace

void CosoptOptions::validate() const {
    if (grid_size < 2) throw ConfigError("cosopt: grid_size must be >= 2");
    if (!(period_lo > 0.0 && period_lo < period_hi))
        throw ConfigError("cosopt: need 0 < period_lo < period_hi");
}

CosoptModel cosopt_fit(const Dataset& data, const CosoptOptions& options) {
    options.validate();
    const std::size_t n = data.size();
    if (n < 4) throw DegenerateDesign("cosopt: need at least 4 observations");

    Eigen::Map<const Eigen::VectorXd> y(data.outputs.data(), static_cast<Eigen::Index>(n));

    CosoptModel model;
    Eigen::VectorXd residual(static_cast<Eigen::Index>(n));
    if (options.fit_slope) {
        // OLS for alpha + beta t.
        double st = 0.0, stt = 0.0, sy = 0.0, sty = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            st += data.inputs[i];
            stt += data.inputs[i] * data.inputs[i];
            sy += data.outputs[i];
            sty += data.inputs[i] * data.outputs[i];
        }
        const double nd = static_cast<double>(n);
        const double det = nd * stt - st * st;
        if (std::abs(det) < 1e-12 * std::max(nd * stt, 1e-300))
            throw DegenerateDesign("cosopt: inputs are collinear (all identical?)");
        model.alpha = (stt * sy - st * sty) / det;
        model.beta = (nd * sty - st * sy) / det;
    } else {
        model.alpha = y.mean();
        model.beta = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i)
        residual[static_cast<Eigen::Index>(i)] =
            data.outputs[i] - model.alpha - model.beta * data.inputs[i];

    // Grid over log-spaced periods, widest first.
    const double log_lo = std::log(options.period_lo);
    const double log_hi = std::log(options.period_hi);
    std::vector<double> omegas(static_cast<std::size_t>(options.grid_size));
    for (int i = 0; i < options.grid_size; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(options.grid_size - 1);
        const double period = std::exp(log_hi + (log_lo - log_hi) * frac);
        omegas[static_cast<std::size_t>(i)] = kTwoPi / period;
    }

    int best_idx = -1;
    double best_rss = std::numeric_limits<double>::infinity();
    for (int i = 0; i < options.grid_size; ++i) {
        const double rss = solve_at_omega(data.inputs, residual,
                                          omegas[static_cast<std::size_t>(i)]).rss;
        if (rss < best_rss) {
            best_rss = rss;
            best_idx = i;
        }
    }
    if (best_idx < 0) throw DegenerateDesign("cosopt: no frequency produced a solvable fit");

    // Golden-section refinement between the grid neighbours of the best cell.
    const double inv_phi = 0.61803398874989484820458683436564;
    double a = omegas[static_cast<std::size_t>(std::max(best_idx - 1, 0))];
    double b = omegas[static_cast<std::size_t>(
        std::min(best_idx + 1, options.grid_size - 1))];
    if (a > b) std::swap(a, b);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = solve_at_omega(data.inputs, residual, x1).rss;
    double f2 = solve_at_omega(data.inputs, residual, x2).rss;
    for (int iter = 0; iter < 80; ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = solve_at_omega(data.inputs, residual, x1).rss;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = solve_at_omega(data.inputs, residual, x2).rss;
        }
    }
    double omega = 0.5 * (a + b);
    CosineSolve refined = solve_at_omega(data.inputs, residual, omega);
    if (refined.rss > best_rss) {
        // Keep the grid winner when refinement drifted out of the basin.
        omega = omegas[static_cast<std::size_t>(best_idx)];
        refined = solve_at_omega(data.inputs, residual, omega);
    }

    model.omega = omega;
    model.gamma = std::hypot(refined.a, refined.b);
    // A cos + B sin = gamma cos(omega t + phi) with phi = atan2(-B, A).
    model.phi = model.gamma > 0.0 ? std::atan2(-refined.b, refined.a) : 0.0;
    if (model.phi < 0.0) model.phi += kTwoPi;
    model.mse = refined.rss / static_cast<double>(n);
    return model;
}

double cosopt_eval(const CosoptModel& model, double t) {
    return model.alpha + model.beta * t + model.gamma * std::cos(model.omega * t + model.phi);
}

}  // namespace perigp
