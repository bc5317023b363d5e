#pragma once

#include <string>

#include "perigp/errors.hpp"

namespace perigp {

/// Supported regularity orders of the Matern family. Only the three
/// half-integers with closed-form kernels and known RKHS inner products
/// are accepted; anything else is rejected at construction.
enum class Nu { half = 1, three_halves = 3, five_halves = 5 };

/// Order m = nu + 1/2 of the associated differential operator.
inline int operator_order(Nu nu) { return (static_cast<int>(nu) + 1) / 2; }

/// Numeric value of nu (0.5, 1.5 or 2.5).
inline double nu_value(Nu nu) { return 0.5 * static_cast<double>(nu); }

Nu nu_from_double(double nu);
std::string nu_name(Nu nu);

/// Stationary Matern covariance: regularity nu, lengthscale theta,
/// variance sigma2. Immutable after construction.
struct MaternSpec {
    Nu nu;
    double theta;
    double sigma2;

    MaternSpec(Nu nu, double theta, double sigma2) : nu(nu), theta(theta), sigma2(sigma2) {
        if (!(theta > 0.0)) throw Error("MaternSpec: lengthscale must be > 0");
        if (!(sigma2 > 0.0)) throw Error("MaternSpec: variance must be > 0");
    }
};

/// Closed-form Matern covariance k_nu(x, y).
double matern_eval(const MaternSpec& spec, double x, double y);

}  // namespace perigp
