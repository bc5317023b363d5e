#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perigp/dataset.hpp"
#include "perigp/hyperfit.hpp"
#include "perigp/matern.hpp"

namespace perigp {

// Bounds profile for a screen run: either a named builtin ("gene",
// "benchmark") or a key=value overrides file applied on top of the gene
// profile. Keys: <param>_lo, <param>_hi for sigma2_p, theta_p, sigma2_a,
// theta_a, tau2, lambda, plus restarts, max_evals, snap_factor.
struct ScreenProfile {
    std::string name = "gene";
    FitConfig resolve(const Dataset& data) const;

    static ScreenProfile builtin(const std::string& name);
    static ScreenProfile from_file(const std::string& path);

private:
    struct Override {
        ParamId id;
        bool upper;
        double value;
    };
    std::vector<Override> bound_overrides_;
    int restarts_override_ = 0;
    int max_evals_override_ = 0;
    double snap_override_ = 0.0;
    bool base_is_benchmark_ = false;
};

struct ScreenConfig {
    ScreenProfile profile;
    int q = 20;
    Nu nu = Nu::three_halves;
    int n_restarts = 0;  // 0 keeps the profile default
    int n_realisations = 1000;
    int grid_size = 500;
    std::uint64_t seed = 0;
    int top_k = 0;  // 0 classifies by cutoff; > 0 relabels to the k best
    double cutoff = 0.77;
    int threads = 1;
    // Interval the periodicity ratio integrates over; defaults to each
    // series' own input span.
    std::optional<std::pair<double, double>> interval;

    void validate() const;
};

struct ScreenRow {
    std::string id;
    double ratio_mean;
    double ratio_std;
    double lambda_hat;
    double neg2loglik;
    double jitter_used;
    bool is_periodic = false;
    std::string error;  // empty on success
};

struct ScreenResult {
    std::vector<ScreenRow> rows;  // input order
    int n_failed = 0;
    double cutoff_used = 0.0;
};

// Fit and score every series. Per-series work is seeded by
// mix_seed(seed, fnv1a64(id)), so results depend on neither row order nor
// the thread count. Failures (optimizer, factorization, degenerate ratio)
// become rows with an error message, never aborts.
ScreenResult run_screen(const std::vector<Dataset>& series, const ScreenConfig& config,
                        std::ostream* log = nullptr);

// CSV with header id,ratio_mean,ratio_std,lambda_hat,neg2loglik,jitter_used,
// is_periodic,error.
void write_screen_csv(const ScreenResult& result, std::ostream& out);

}  // namespace perigp
