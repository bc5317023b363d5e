// Independent evaluation path for the Matern RKHS inner products, used only
// by tests. Everything here is written directly from the closed-form
// expressions for each regularity (hard-coded operators and boundary
// constants), evaluated with adaptive Gauss-Kronrod quadrature; the library
// under test shares no code with it beyond matern_eval's kernel values.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "perigp/cosine_form.hpp"
#include "perigp/matern.hpp"

namespace oracle {

// f with derivatives up to order 3; unused slots may be null.
struct Fn {
    std::function<double(double)> f0, f1, f2, f3;
    // Points where derivatives jump (quadrature must split there).
    std::vector<double> splits;
};

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const std::vector<double>& splits) {
    std::vector<double> cuts{a};
    for (double s : splits)
        if (s > a && s < b) cuts.push_back(s);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, cuts[i], cuts[i + 1], 12, 1e-14, &err);
    }
    return total;
}

inline Fn cosine_fn(const perigp::CosineForm& form) {
    Fn out;
    out.f0 = [form](double t) { return form.derivative(0, t); };
    out.f1 = [form](double t) { return form.derivative(1, t); };
    out.f2 = [form](double t) { return form.derivative(2, t); };
    out.f3 = [form](double t) { return form.derivative(3, t); };
    return out;
}

// k(x, .) as a function of the second argument, with t-derivatives written
// out per regularity. |t - x| makes odd derivatives jump at t = x.
inline Fn matern_section(const perigp::MaternSpec& spec, double x) {
    Fn out;
    out.splits = {x};
    const double s2 = spec.sigma2;
    const double theta = spec.theta;
    switch (spec.nu) {
        case perigp::Nu::half: {
            out.f0 = [=](double t) { return s2 * std::exp(-std::abs(t - x) / theta); };
            out.f1 = [=](double t) {
                const double d = t - x;
                const double sgn = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
                return -s2 / theta * sgn * std::exp(-std::abs(d) / theta);
            };
            break;
        }
        case perigp::Nu::three_halves: {
            const double s = std::sqrt(3.0) / theta;
            out.f0 = [=](double t) {
                const double u = std::abs(t - x);
                return s2 * (1.0 + s * u) * std::exp(-s * u);
            };
            out.f1 = [=](double t) {
                const double d = t - x;
                return -s2 * s * s * d * std::exp(-s * std::abs(d));
            };
            out.f2 = [=](double t) {
                const double u = std::abs(t - x);
                return -s2 * s * s * (1.0 - s * u) * std::exp(-s * u);
            };
            break;
        }
        case perigp::Nu::five_halves: {
            const double s = std::sqrt(5.0) / theta;
            out.f0 = [=](double t) {
                const double u = std::abs(t - x);
                return s2 * (1.0 + s * u + s * s * u * u / 3.0) * std::exp(-s * u);
            };
            out.f1 = [=](double t) {
                const double d = t - x;
                const double u = std::abs(d);
                return -s2 * s * s / 3.0 * d * (1.0 + s * u) * std::exp(-s * u);
            };
            out.f2 = [=](double t) {
                const double u = std::abs(t - x);
                return -s2 * s * s / 3.0 * (1.0 + s * u - s * s * u * u) * std::exp(-s * u);
            };
            out.f3 = [=](double t) {
                const double d = t - x;
                const double u = std::abs(d);
                return -s2 * s * s * s * s / 3.0 * d * (s * u - 3.0) * std::exp(-s * u);
            };
            break;
        }
    }
    return out;
}

// The RKHS inner product <g, h> on [a, b], from the per-regularity closed
// forms: an integral of the two transformed functions plus boundary terms
// at a. Derivative orders above what each case touches are never called.
inline double inner_product(const perigp::MaternSpec& spec, double a, double b, const Fn& g,
                            const Fn& h) {
    const double s2 = spec.sigma2;
    const double theta = spec.theta;
    std::vector<double> splits = g.splits;
    splits.insert(splits.end(), h.splits.begin(), h.splits.end());

    switch (spec.nu) {
        case perigp::Nu::half: {
            const auto lg = [&](double t) { return g.f0(t) / theta + g.f1(t); };
            const auto lh = [&](double t) { return h.f0(t) / theta + h.f1(t); };
            const double integral = integrate([&](double t) { return lg(t) * lh(t); }, a, b,
                                              splits);
            return theta / (2.0 * s2) * integral + g.f0(a) * h.f0(a) / s2;
        }
        case perigp::Nu::three_halves: {
            const double r3 = std::sqrt(3.0);
            const auto lg = [&](double t) {
                return 3.0 / (theta * theta) * g.f0(t) + 2.0 * r3 / theta * g.f1(t) + g.f2(t);
            };
            const auto lh = [&](double t) {
                return 3.0 / (theta * theta) * h.f0(t) + 2.0 * r3 / theta * h.f1(t) + h.f2(t);
            };
            const double integral = integrate([&](double t) { return lg(t) * lh(t); }, a, b,
                                              splits);
            return theta * theta * theta / (12.0 * r3 * s2) * integral +
                   g.f0(a) * h.f0(a) / s2 + theta * theta / (3.0 * s2) * g.f1(a) * h.f1(a);
        }
        case perigp::Nu::five_halves: {
            const double r5 = std::sqrt(5.0);
            const double t2 = theta * theta;
            const double t3 = t2 * theta;
            const double t5 = t3 * t2;
            const double c = std::sqrt(3.0 * t5 / (400.0 * r5 * s2));
            const auto lg = [&](double t) {
                return c * (5.0 * r5 / t3 * g.f0(t) + 15.0 / t2 * g.f1(t) +
                            3.0 * r5 / theta * g.f2(t) + g.f3(t));
            };
            const auto lh = [&](double t) {
                return c * (5.0 * r5 / t3 * h.f0(t) + 15.0 / t2 * h.f1(t) +
                            3.0 * r5 / theta * h.f2(t) + h.f3(t));
            };
            const double integral = integrate([&](double t) { return lg(t) * lh(t); }, a, b,
                                              splits);
            const double boundary =
                9.0 / (8.0 * s2) * g.f0(a) * h.f0(a) +
                9.0 * t2 * t2 / (200.0 * s2) * g.f2(a) * h.f2(a) +
                3.0 * t2 / (5.0 * s2) *
                    (g.f1(a) * h.f1(a) + g.f2(a) * h.f0(a) / 8.0 + g.f0(a) * h.f2(a) / 8.0);
            return integral + boundary;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace oracle
