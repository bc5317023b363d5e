#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "perigp/benchmark.hpp"
#include "perigp/errors.hpp"

using namespace perigp;

namespace {
const TestFunction& fn(const std::string& name) {
    for (const TestFunction& f : benchmark_functions())
        if (f.name == name) return f;
    throw std::runtime_error("no such test function: " + name);
}
}  // namespace

TEST_CASE("the test signals have the documented shapes") {
    const auto& fns = benchmark_functions();
    REQUIRE(fns.size() == 6);

    CHECK(fn("cos").truth(0.0) == doctest::Approx(1.0));
    CHECK(fn("cos").truth(0.5) == doctest::Approx(-1.0));
    CHECK(fn("cos").truth(2.0) == doctest::Approx(1.0));

    // Half-amplitude sum of the first two harmonics.
    CHECK(fn("sumcos").truth(0.0) == doctest::Approx(1.0));
    CHECK(fn("sumcos").truth(0.5) ==
          doctest::Approx(0.5 * (std::cos(3.14159265358979323846) + 1.0)));

    // Unit square wave: +1 on the first half period, -1 on the second.
    CHECK(fn("square").truth(0.25) == 1.0);
    CHECK(fn("square").truth(0.6) == -1.0);
    CHECK(fn("square").truth(1.25) == 1.0);

    // Unit triangle wave peaking at period boundaries.
    CHECK(fn("triangle").truth(0.0) == doctest::Approx(1.0));
    CHECK(fn("triangle").truth(0.5) == doctest::Approx(-1.0));
    CHECK(fn("triangle").truth(0.25) == doctest::Approx(0.0));
    CHECK(fn("triangle").truth(1.75) == doctest::Approx(0.0));

    // Rising sawtooth from -1 to 1 per period.
    CHECK(fn("diag").truth(0.0) == doctest::Approx(-1.0));
    CHECK(fn("diag").truth(0.5) == doctest::Approx(0.0));
    CHECK(fn("diag").truth(0.75) == doctest::Approx(0.5));
    CHECK(fn("diag").truth(1.25) == doctest::Approx(-0.5));

    CHECK(fn("noise").truth(0.3) == 0.0);
    CHECK(fn("noise").truth(1.7) == 0.0);

    for (const TestFunction& f : fns)
        CHECK(f.noise_variance == (f.name == "noise" ? 1.0 : 0.1));
}

TEST_CASE("model lists parse by name") {
    const auto models = parse_benchmark_models("cosopt, gp12,gp32 ,gp52");
    REQUIRE(models.size() == 4);
    CHECK(models[0].kind == BenchmarkModel::Kind::cosopt);
    CHECK(models[0].name() == "cosopt");
    CHECK(models[1].nu == Nu::half);
    CHECK(models[1].name() == "gp12");
    CHECK(models[2].nu == Nu::three_halves);
    CHECK(models[3].nu == Nu::five_halves);
    for (std::size_t i = 1; i < 4; ++i) CHECK(models[i].kind == BenchmarkModel::Kind::gp);

    CHECK_THROWS_AS(parse_benchmark_models("gp99"), ConfigError);
    CHECK_THROWS_AS(parse_benchmark_models(""), ConfigError);
    // Stray commas are tolerated, an empty list is not.
    CHECK(parse_benchmark_models("cosopt,,gp32").size() == 2);
    CHECK_THROWS_AS(parse_benchmark_models(",,"), ConfigError);
}

TEST_CASE("benchmark options are validated") {
    BenchmarkOptions opts;
    opts.n_repeats = 0;
    CHECK_THROWS_AS(opts.validate(), ConfigError);
    opts = BenchmarkOptions{};
    opts.n_train = 3;
    CHECK_THROWS_AS(opts.validate(), ConfigError);
    opts = BenchmarkOptions{};
    opts.threads = 0;
    CHECK_THROWS_AS(opts.validate(), ConfigError);
}

TEST_CASE("a small cosopt-only benchmark is deterministic and accurate") {
    const auto models = parse_benchmark_models("cosopt");
    BenchmarkOptions opts;
    opts.n_repeats = 3;
    opts.n_test = 200;
    opts.seed = 5;
    const auto cells = run_benchmark(models, opts);

    // One cell per (function, model), in function-major order.
    REQUIRE(cells.size() == 6);
    const auto& fns = benchmark_functions();
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(cells[i].function == fns[i].name);
        CHECK(cells[i].model == "cosopt");
        CHECK(cells[i].n_repeats == 3);
        CHECK(std::isfinite(cells[i].mean_rmse));
        CHECK(cells[i].sd_rmse >= 0.0);
    }

    // The cosine target is inside the model class, so its error is small;
    // pure noise must not be explained.
    CHECK(cells[0].mean_rmse < 0.25);
    CHECK(cells[0].mean_rmse < cells[5].mean_rmse);

    // Same options, same cells, bit for bit; threads do not change results.
    auto again = run_benchmark(models, opts);
    BenchmarkOptions threaded = opts;
    threaded.threads = 2;
    const auto par = run_benchmark(models, threaded);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(again[i].mean_rmse == cells[i].mean_rmse);
        CHECK(again[i].sd_rmse == cells[i].sd_rmse);
        CHECK(par[i].mean_rmse == cells[i].mean_rmse);
    }

    // A different seed draws different noise.
    BenchmarkOptions reseeded = opts;
    reseeded.seed = 6;
    CHECK(run_benchmark(models, reseeded)[0].mean_rmse != cells[0].mean_rmse);
}

TEST_CASE("a single GP benchmark cell fits the cosine") {
    const auto models = parse_benchmark_models("gp32");
    BenchmarkOptions opts;
    opts.n_repeats = 1;
    opts.n_test = 200;
    opts.seed = 2;
    const auto cells = run_benchmark(models, opts);
    REQUIRE(cells.size() == 6);
    CHECK(cells[0].function == "cos");
    CHECK(cells[0].n_repeats == 1);
    CHECK(std::isfinite(cells[0].mean_rmse));
    CHECK(cells[0].mean_rmse < 0.4);
    // With one repeat the sample standard deviation is reported as zero.
    CHECK(cells[0].sd_rmse == 0.0);
}

TEST_CASE("benchmark cells serialize as CSV") {
    std::vector<BenchmarkCell> cells(2);
    cells[0] = {"cos", "cosopt", 0.125, 0.5, 50};
    cells[1] = {"square", "gp32", 0.25, 0.0, 49};
    std::ostringstream out;
    write_benchmark_csv(cells, out);
    CHECK(out.str() ==
          "function,model,mean_rmse,sd_rmse,n_repeats\n"
          "cos,cosopt,0.125,0.5,50\n"
          "square,gp32,0.25,0,49\n");
}
