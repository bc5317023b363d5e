#include <doctest.h>

#include <cmath>
#include <vector>

#include "perigp/cosopt.hpp"
#include "perigp/errors.hpp"

using namespace perigp;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Half-open grid over [0, span): with an integer number of periods the
// cosine sums to exactly zero over the samples, so the mean-removal stage
// leaves a pure cosine residual.
Dataset half_open_cosine(int n, double span, double alpha, double gamma, double omega,
                         double phi) {
    std::vector<double> t(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = span * i / n;
        t[static_cast<std::size_t>(i)] = x;
        y[static_cast<std::size_t>(i)] = alpha + gamma * std::cos(omega * x + phi);
    }
    return Dataset(t, y, "cosine");
}
}  // namespace

TEST_CASE("a pure cosine is recovered exactly without a trend stage") {
    // Two exact periods of period 1.5 on a 50-point half-open grid.
    const double omega = kTwoPi / 1.5;
    const Dataset data = half_open_cosine(50, 3.0, 1.0, 0.8, omega, 4.0);
    CosoptOptions opts;
    opts.fit_slope = false;
    const CosoptModel m = cosopt_fit(data, opts);
    CHECK(m.beta == 0.0);
    CHECK(m.alpha == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.omega == doctest::Approx(omega).epsilon(1e-6));
    CHECK(m.gamma == doctest::Approx(0.8).epsilon(1e-5));
    CHECK(m.phi == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(m.mse < 1e-10);
}

TEST_CASE("a cosine with trend is recovered up to the detrending bias") {
    // The ordinary-least-squares line absorbs part of the cosine over a
    // short span, so recovery is approximate by construction.
    std::vector<double> t(50), y(50);
    for (int i = 0; i < 50; ++i) {
        const double x = 3.0 * i / 49;
        t[static_cast<std::size_t>(i)] = x;
        y[static_cast<std::size_t>(i)] = 0.3 + 0.2 * x + 1.5 * std::cos(kTwoPi * x + 1.0);
    }
    const CosoptModel m = cosopt_fit(Dataset(t, y, "trended"));
    CHECK(m.omega == doctest::Approx(kTwoPi).epsilon(0.02));
    CHECK(std::abs(m.gamma - 1.5) < 0.15);
    CHECK(std::abs(m.phi - 1.0) < 0.1);
    CHECK(m.mse < 0.1);

    // The reported mse is the mean squared residual of the reported model.
    double rss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - cosopt_eval(m, t[i]);
        rss += r * r;
    }
    CHECK(m.mse == doctest::Approx(rss / static_cast<double>(t.size())).epsilon(1e-10));
}

TEST_CASE("fitted parameters satisfy their canonical ranges") {
    // A negative-amplitude, negative-phase generator still lands in the
    // canonical parameterization: gamma >= 0, phi in [0, 2 pi), omega > 0.
    std::vector<double> t, y;
    for (int i = 0; i < 30; ++i) {
        const double x = 0.1 * i;
        t.push_back(x);
        y.push_back(-0.7 * std::cos(2.0 * x - 5.0) + 0.02 * x * x);
    }
    const CosoptModel m = cosopt_fit(Dataset(t, y, "canon"));
    CHECK(m.gamma >= 0.0);
    CHECK(m.omega > 0.0);
    CHECK(m.phi >= 0.0);
    CHECK(m.phi < kTwoPi);
    double rss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - cosopt_eval(m, t[i]);
        rss += r * r;
    }
    CHECK(m.mse == doctest::Approx(rss / static_cast<double>(t.size())).epsilon(1e-10));
}

TEST_CASE("degenerate designs are rejected") {
    CHECK_THROWS_AS(cosopt_fit(Dataset({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}, "short")),
                    DegenerateDesign);
    // Constant inputs make the linear system singular.
    CHECK_THROWS_AS(cosopt_fit(Dataset({2.0, 2.0, 2.0, 2.0}, {1.0, 2.0, 3.0, 4.0}, "flat")),
                    DegenerateDesign);
}

TEST_CASE("cosopt options are validated") {
    const Dataset data = half_open_cosine(20, 2.0, 0.0, 1.0, kTwoPi, 0.0);
    CosoptOptions opts;
    opts.grid_size = 1;
    CHECK_THROWS_AS(cosopt_fit(data, opts), ConfigError);
    opts = CosoptOptions{};
    opts.period_lo = 0.0;
    CHECK_THROWS_AS(cosopt_fit(data, opts), ConfigError);
    opts = CosoptOptions{};
    opts.period_lo = 2.0;
    opts.period_hi = 1.0;
    CHECK_THROWS_AS(cosopt_fit(data, opts), ConfigError);
}
