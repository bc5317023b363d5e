#include "perigp/matern.hpp"

#include <cmath>

namespace perigp {

Nu nu_from_double(double nu) {
    if (nu == 0.5) return Nu::half;
    if (nu == 1.5) return Nu::three_halves;
    if (nu == 2.5) return Nu::five_halves;
    throw Error("unsupported Matern regularity " + std::to_string(nu) +
                " (supported: 0.5, 1.5, 2.5)");
}

std::string nu_name(Nu nu) {
    switch (nu) {
        case Nu::half: return "1/2";
        case Nu::three_halves: return "3/2";
        case Nu::five_halves: return "5/2";
    }
    return "?";
}

double matern_eval(const MaternSpec& spec, double x, double y) {
    const double r = std::abs(x - y) / spec.theta;
    switch (spec.nu) {
        case Nu::half:
            return spec.sigma2 * std::exp(-r);
        case Nu::three_halves: {
            const double s = std::sqrt(3.0) * r;
            return spec.sigma2 * (1.0 + s) * std::exp(-s);
        }
        case Nu::five_halves: {
            const double s = std::sqrt(5.0) * r;
            return spec.sigma2 * (1.0 + s + s * s / 3.0) * std::exp(-s);
        }
    }
    return 0.0;
}

}  // namespace perigp
