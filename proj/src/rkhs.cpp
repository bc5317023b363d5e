#include "perigp/rkhs.hpp"

#include <cmath>

#include "perigp/errors.hpp"

namespace perigp {

namespace {
constexpr double kHalfPi = 1.570796326794896619231321691640;

// sin(x)/x. The series kicks in where the direct quotient starts losing
// digits; at |x| = 1e-4 both agree to ~1e-17 relative.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// int_a^b cos(w t + psi) dt, stable for any w including w = 0.
double cosine_integral(double w, double psi, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    return (b - a) * std::cos(w * mid + psi) * sinc(w * half);
}

// Derivative of a single canonical cosine term at x.
double term_derivative(const CosineTerm& t, int order, double x) {
    double scale = t.amplitude;
    for (int j = 0; j < order; ++j) scale *= t.freq;
    return scale * std::cos(t.freq * x + t.phase + kHalfPi * order);
}

double boundary_sum(const DifferentialOperator& op, double a, const CosineTerm& f,
                    const CosineTerm& g) {
    const int m = op.order();
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            if ((j + k) % 2 != 0) continue;
            const double d = op.boundary[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (d == 0.0) continue;
            sum += d * term_derivative(f, j, a) * term_derivative(g, k, a);
        }
    }
    return 2.0 * sum;
}
}  // namespace

RkhsDomain::RkhsDomain(double lo, double hi) : a(lo), b(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw ConfigError("RKHS domain requires finite a < b");
}

DifferentialOperator::DifferentialOperator(std::vector<double> alpha_coeffs,
                                           std::vector<std::vector<double>> boundary_coeffs)
    : alpha(std::move(alpha_coeffs)), boundary(std::move(boundary_coeffs)) {
    if (alpha.size() < 2) throw ConfigError("operator needs order >= 1");
    if (alpha.front() == 0.0 || alpha.back() == 0.0)
        throw ConfigError("operator requires alpha[0] != 0 and alpha[m] != 0");
    const std::size_t m = alpha.size() - 1;
    if (boundary.size() != m)
        throw ConfigError("boundary matrix must be m x m");
    for (const auto& row : boundary)
        if (row.size() != m) throw ConfigError("boundary matrix must be m x m");
}

DifferentialOperator matern_operator(const MaternSpec& spec) {
    const int m = operator_order(spec.nu);
    const double nu = nu_value(spec.nu);
    const double two_nu = 2.0 * nu;

    // c^2 = (Gamma(nu)/sqrt(pi)) * theta^(2 nu) * sqrt(2 nu)
    //       / (2 sigma^2 (m-1)! (2 nu)^m).
    // Gamma(nu)/sqrt(pi) for half-integer nu in {1/2, 3/2, 5/2} is
    // {1, 1/2, 3/4}; (m-1)! is {1, 1, 2}.
    double gamma_ratio = 1.0;
    double factorial = 1.0;
    if (m == 2) gamma_ratio = 0.5;
    if (m == 3) {
        gamma_ratio = 0.75;
        factorial = 2.0;
    }
    const double theta_pow = std::pow(spec.theta, two_nu);
    const double c2 = gamma_ratio * theta_pow * std::sqrt(two_nu) /
                      (2.0 * spec.sigma2 * factorial * std::pow(two_nu, m));
    const double c = std::sqrt(c2);

    // binom(m, k) for m <= 3.
    const auto binom = [](int n, int k) -> double {
        double num = 1.0, den = 1.0;
        for (int i = 0; i < k; ++i) {
            num *= static_cast<double>(n - i);
            den *= static_cast<double>(i + 1);
        }
        return num / den;
    };

    const double rate = std::sqrt(two_nu) / spec.theta;
    std::vector<double> alpha(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k)
        alpha[static_cast<std::size_t>(k)] = c * binom(m, k) * std::pow(rate, m - k);

    std::vector<std::vector<double>> d(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            if ((j + k) % 2 != 0) continue;
            const int lo = std::max(0, j + k + 1 - m);
            const int hi = std::min(j, k);
            double sum = 0.0;
            for (int i = lo; i <= hi; ++i) {
                const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
                sum += sign * alpha[static_cast<std::size_t>(i)] *
                       alpha[static_cast<std::size_t>(j + k + 1 - i)];
            }
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = sum;
        }
    }
    return DifferentialOperator(std::move(alpha), std::move(d));
}

CosineTerm apply_operator(const DifferentialOperator& op, const CosineTerm& term) {
    double rc = 0.0, rs = 0.0;
    double wpow = 1.0;
    for (std::size_t k = 0; k < op.alpha.size(); ++k) {
        const double shifted = term.phase + kHalfPi * static_cast<double>(k);
        rc += op.alpha[k] * wpow * std::cos(shifted);
        rs += op.alpha[k] * wpow * std::sin(shifted);
        wpow *= term.freq;
    }
    return canonical_term(term.amplitude * rc, term.amplitude * rs, term.freq);
}

CosineForm apply_operator(const DifferentialOperator& op, const CosineForm& f) {
    std::vector<CosineTerm> out;
    out.reserve(f.terms().size());
    for (const CosineTerm& t : f.terms()) out.push_back(apply_operator(op, t));
    return CosineForm::from_terms(std::move(out));
}

double integrate_cosine_product(const CosineTerm& t1, const CosineTerm& t2,
                                const RkhsDomain& dom) {
    // cos(u) cos(v) = (cos(u - v) + cos(u + v)) / 2
    const double scale = 0.5 * t1.amplitude * t2.amplitude;
    const double diff = cosine_integral(t1.freq - t2.freq, t1.phase - t2.phase, dom.a, dom.b);
    const double sum = cosine_integral(t1.freq + t2.freq, t1.phase + t2.phase, dom.a, dom.b);
    return scale * (diff + sum);
}

double inner_product(const DifferentialOperator& op, const RkhsDomain& dom,
                     const CosineTerm& f, const CosineTerm& g) {
    const CosineTerm lf = apply_operator(op, f);
    const CosineTerm lg = apply_operator(op, g);
    return integrate_cosine_product(lf, lg, dom) + boundary_sum(op, dom.a, f, g);
}

double inner_product(const DifferentialOperator& op, const RkhsDomain& dom,
                     const CosineForm& f, const CosineForm& g) {
    double total = 0.0;
    for (const CosineTerm& tf : f.terms())
        for (const CosineTerm& tg : g.terms())
            total += inner_product(op, dom, tf, tg);
    return total;
}

}  // namespace perigp
