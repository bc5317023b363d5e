#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "perigp/matern.hpp"

namespace perigp {

// Noisy 1-period test signals on [0, 3]. All have unit amplitude; "noise"
// is identically zero and exists to measure behaviour on pure noise.
struct TestFunction {
    std::string name;
    double (*truth)(double);
    double noise_variance;  // variance (not sd) of the additive Gaussian noise
};

const std::vector<TestFunction>& benchmark_functions();

// A competitor in the benchmark: the two-stage cosine fit, or a GP with an
// intercept + periodic Matern + noise kernel whose hyperparameters are
// re-fitted per repeat.
struct BenchmarkModel {
    enum class Kind { cosopt, gp };
    Kind kind = Kind::cosopt;
    Nu nu = Nu::three_halves;  // gp only
    int q = 20;                // gp only

    std::string name() const;
};

// Parse "cosopt,gp12,gp32,gp52"-style lists.
std::vector<BenchmarkModel> parse_benchmark_models(const std::string& csv_list);

struct BenchmarkOptions {
    int n_repeats = 50;
    int n_train = 50;
    int n_test = 500;
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
};

struct BenchmarkCell {
    std::string function;
    std::string model;
    double mean_rmse = 0.0;
    double sd_rmse = 0.0;
    int n_repeats = 0;  // repeats that produced a fit; failures are dropped
};

// For each (function, repeat): draw noisy observations on an equally spaced
// grid over [0, 3], fit every model to the same draw, and score the RMSE of
// the fitted mean against the noise-free truth on a dense grid. The noise
// draw depends only on (seed, function, repeat), so adding or removing
// models never changes the data any other model sees.
std::vector<BenchmarkCell> run_benchmark(const std::vector<BenchmarkModel>& models,
                                         const BenchmarkOptions& options,
                                         std::ostream* progress = nullptr);

// CSV with header function,model,mean_rmse,sd_rmse,n_repeats.
void write_benchmark_csv(const std::vector<BenchmarkCell>& cells, std::ostream& out);

}  // namespace perigp
