#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "perigp/rng.hpp"
#include "perigp/screen.hpp"

using namespace perigp;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Expression-profile-like sampling: 13 points, every 4 time units from 26.
std::vector<double> gene_times() {
    std::vector<double> t;
    for (int i = 0; i < 13; ++i) t.push_back(26.0 + 4.0 * i);
    return t;
}

Dataset sine_series(const std::string& id, double amp, double phase, double noise_sd,
                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> t = gene_times(), y;
    for (double x : t) y.push_back(amp * std::sin(kTwoPi * x / 24.0 + phase) + noise_sd * rng.normal());
    return Dataset(t, y, id);
}

Dataset noise_series(const std::string& id, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> t = gene_times(), y;
    for (std::size_t i = 0; i < t.size(); ++i) y.push_back(rng.normal());
    return Dataset(t, y, id);
}

Dataset drift_series(const std::string& id) {
    std::vector<double> t = gene_times(), y;
    for (double x : t) y.push_back(0.04 * (x - 26.0) - 0.8);
    return Dataset(t, y, id);
}

ScreenConfig fast_screen() {
    ScreenConfig cfg;
    cfg.q = 4;
    cfg.n_restarts = 6;
    cfg.n_realisations = 80;
    cfg.grid_size = 60;
    cfg.seed = 99;
    return cfg;
}

std::string csv_of(const ScreenResult& result) {
    std::ostringstream out;
    write_screen_csv(result, out);
    return out.str();
}
}  // namespace

TEST_CASE("a screen separates sinusoids from noise and drift") {
    const std::vector<Dataset> series = {sine_series("sin-a", 1.0, 0.0, 0.0, 1),
                                         noise_series("rand", 4),
                                         sine_series("sin-b", 0.8, 1.2, 0.05, 3),
                                         drift_series("drift")};
    const ScreenResult result = run_screen(series, fast_screen());

    REQUIRE(result.rows.size() == 4);
    CHECK(result.n_failed == 0);
    CHECK(result.cutoff_used == 0.77);
    // Rows keep the input order.
    CHECK(result.rows[0].id == "sin-a");
    CHECK(result.rows[1].id == "rand");
    CHECK(result.rows[2].id == "sin-b");
    CHECK(result.rows[3].id == "drift");

    CHECK(result.rows[0].is_periodic);
    CHECK(result.rows[2].is_periodic);
    CHECK(result.rows[0].ratio_mean > 0.9);
    CHECK(result.rows[2].ratio_mean > 0.9);
    CHECK(result.rows[0].lambda_hat == doctest::Approx(24.0).epsilon(0.5 / 24.0));
    CHECK(result.rows[2].lambda_hat == doctest::Approx(24.0).epsilon(0.5 / 24.0));

    CHECK(!result.rows[1].is_periodic);
    CHECK(!result.rows[3].is_periodic);
    CHECK(result.rows[1].ratio_mean < result.rows[0].ratio_mean);
    CHECK(result.rows[3].ratio_mean < result.rows[0].ratio_mean);

    for (const ScreenRow& row : result.rows) {
        CHECK(row.error.empty());
        CHECK(std::isfinite(row.neg2loglik));
        CHECK(row.jitter_used >= 0.0);
    }
}

TEST_CASE("screens are deterministic across runs and thread counts") {
    const std::vector<Dataset> series = {sine_series("sin-a", 1.0, 0.0, 0.0, 1),
                                         noise_series("rand", 4),
                                         drift_series("drift")};
    const ScreenConfig cfg = fast_screen();
    const std::string first = csv_of(run_screen(series, cfg));
    CHECK(csv_of(run_screen(series, cfg)) == first);

    ScreenConfig threaded = cfg;
    threaded.threads = 3;
    CHECK(csv_of(run_screen(series, threaded)) == first);

    // Row order in, row order out: permuting the input only permutes rows.
    const std::vector<Dataset> swapped = {series[2], series[0], series[1]};
    const ScreenResult perm = run_screen(swapped, cfg);
    CHECK(perm.rows[1].ratio_mean == run_screen(series, cfg).rows[0].ratio_mean);
}

TEST_CASE("failed series become error rows, not aborts") {
    // Identical inputs leave a zero-width domain; every restart fails.
    const std::vector<Dataset> series = {
        sine_series("ok", 1.0, 0.0, 0.0, 1),
        Dataset({30.0, 30.0, 30.0}, {0.1, 0.2, 0.3}, "flat")};
    const ScreenResult result = run_screen(series, fast_screen());
    REQUIRE(result.rows.size() == 2);
    CHECK(result.n_failed == 1);
    CHECK(result.rows[0].error.empty());
    CHECK(!result.rows[1].error.empty());
    CHECK(!result.rows[1].is_periodic);
    CHECK(std::isnan(result.rows[1].ratio_mean));
    // Error text stays on one CSV cell: no commas or newlines.
    CHECK(result.rows[1].error.find(',') == std::string::npos);
    CHECK(result.rows[1].error.find('\n') == std::string::npos);

    const std::string csv = csv_of(result);
    CHECK(csv.find("id,ratio_mean,ratio_std,lambda_hat,neg2loglik,jitter_used,is_periodic,error\n") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("top-k relabels exactly the k best series") {
    const std::vector<Dataset> series = {sine_series("sin-a", 1.0, 0.0, 0.0, 1),
                                         noise_series("rand", 4),
                                         sine_series("sin-b", 0.8, 1.2, 0.05, 3),
                                         drift_series("drift")};
    ScreenConfig cfg = fast_screen();
    cfg.top_k = 2;
    const ScreenResult result = run_screen(series, cfg);
    int n_periodic = 0;
    for (const ScreenRow& row : result.rows) n_periodic += row.is_periodic ? 1 : 0;
    CHECK(n_periodic == 2);
    CHECK(result.rows[0].is_periodic);
    CHECK(result.rows[2].is_periodic);
    // The published cutoff is the k-th best ratio, which itself is labeled.
    CHECK(result.cutoff_used ==
          std::min(result.rows[0].ratio_mean, result.rows[2].ratio_mean));
}

TEST_CASE("profile files override the builtin bounds") {
    const std::string path = "/tmp/perigp_screen_profile_test.txt";
    {
        std::ofstream out(path);
        out << "# tightened period window\n"
               "lambda_lo = 21.5\n"
               "lambda_hi = 26\n"
               "tau2_hi = 0.5   # inline comment\n"
               "restarts = 7\n"
               "max_evals = 150\n"
               "snap_factor = 5\n";
    }
    const ScreenProfile profile = ScreenProfile::from_file(path);
    const Dataset data = sine_series("x", 1.0, 0.0, 0.0, 1);
    const FitConfig cfg = profile.resolve(data);
    CHECK(cfg.bounds.at(ParamId::lambda).lo == 21.5);
    CHECK(cfg.bounds.at(ParamId::lambda).hi == 26.0);
    CHECK(cfg.bounds.at(ParamId::tau2).lo == 1e-5);  // base value kept
    CHECK(cfg.bounds.at(ParamId::tau2).hi == 0.5);
    CHECK(cfg.n_restarts == 7);
    CHECK(cfg.max_evals_per_restart == 150);
    CHECK(cfg.snap_factor == 5.0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(ScreenProfile::from_file("/nonexistent/profile.txt"), ConfigError);

    const std::string bad = "/tmp/perigp_screen_profile_bad.txt";
    {
        std::ofstream out(bad);
        out << "frobnicate_lo = 1\n";
    }
    CHECK_THROWS_AS(ScreenProfile::from_file(bad), ConfigError);
    {
        std::ofstream out(bad);
        out << "lambda_lo = twenty\n";
    }
    CHECK_THROWS_AS(ScreenProfile::from_file(bad), ConfigError);
    {
        std::ofstream out(bad);
        out << "no equals sign here\n";
    }
    CHECK_THROWS_AS(ScreenProfile::from_file(bad), ConfigError);
    std::remove(bad.c_str());
}

TEST_CASE("builtin profiles resolve by name") {
    const Dataset data = sine_series("x", 1.0, 0.0, 0.0, 1);

    const FitConfig gene = ScreenProfile::builtin("gene").resolve(data);
    CHECK(gene.bounds.at(ParamId::lambda).lo == 20.0);
    CHECK(gene.n_restarts == 50);

    // The span-relative profile gains a mirrored aperiodic part: the
    // periodicity ratio needs both submodels.
    const FitConfig bench = ScreenProfile::builtin("benchmark").resolve(data);
    CHECK(bench.free_params.size() == 6);
    CHECK(bench.bounds.at(ParamId::sigma2_a).lo == bench.bounds.at(ParamId::sigma2_p).lo);
    CHECK(bench.bounds.at(ParamId::theta_a).hi == bench.bounds.at(ParamId::theta_p).hi);

    CHECK_THROWS_AS(ScreenProfile::builtin("bogus"), ConfigError);
}

TEST_CASE("screen configuration is validated") {
    const std::vector<Dataset> series = {sine_series("x", 1.0, 0.0, 0.0, 1)};
    ScreenConfig cfg = fast_screen();
    cfg.grid_size = 5;
    CHECK_THROWS_AS(run_screen(series, cfg), ConfigError);
    cfg = fast_screen();
    cfg.threads = 0;
    CHECK_THROWS_AS(run_screen(series, cfg), ConfigError);
    cfg = fast_screen();
    cfg.top_k = -1;
    CHECK_THROWS_AS(run_screen(series, cfg), ConfigError);
    cfg = fast_screen();
    cfg.interval = {40.0, 30.0};
    CHECK_THROWS_AS(run_screen(series, cfg), ConfigError);
    CHECK_THROWS_AS(run_screen({}, fast_screen()), ConfigError);
}

TEST_CASE("a chance-periodic noise draw is a known false positive") {
    // At 13 samples a white-noise draw can admit a periodic explanation
    // whose marginal likelihood beats the noise explanation; the ratio then
    // saturates near 1 with a vanished aperiodic part. This pinned draw is
    // one such case, kept as executable documentation of the limit.
    Rng rng(mix_seed(888, 0));
    std::vector<double> t = gene_times(), y;
    for (std::size_t i = 0; i < t.size(); ++i) y.push_back(0.5 * rng.normal());

    ScreenConfig cfg;
    cfg.q = 4;
    cfg.n_realisations = 200;
    cfg.grid_size = 120;
    cfg.seed = 20260818;
    const ScreenResult result = run_screen({Dataset(t, y, "rnd-0")}, cfg);

    REQUIRE(result.rows.size() == 1);
    REQUIRE(result.rows[0].error.empty());
    CHECK(result.rows[0].ratio_mean > 0.9);
    CHECK(result.rows[0].is_periodic);
}
