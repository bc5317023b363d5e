#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perigp/composite.hpp"
#include "perigp/dataset.hpp"

namespace perigp {

// Free hyperparameters of a composite kernel. Which ones are meaningful
// depends on the kernel template: sigma2_p/theta_p/lambda need a periodic
// part, sigma2_a/theta_a an aperiodic part.
enum class ParamId { sigma2_p, theta_p, sigma2_a, theta_a, tau2, lambda };

std::string param_name(ParamId id);

struct ParamBounds {
    double lo;
    double hi;
};

struct FitConfig {
    std::map<ParamId, ParamBounds> bounds;  // natural scale; all must be > 0
    std::vector<ParamId> free_params;       // optimized, in this order
    int n_restarts = 10;
    std::uint64_t seed = 0;
    int max_evals_per_restart = 400;
    double grad_step = 1e-5;  // central-difference step in log space
    // Variance parameters ending within snap_factor of their lower bound
    // are treated as absent and snapped to zero in the reported kernel.
    double snap_factor = 10.0;
};

struct RestartTrace {
    std::vector<double> start;  // natural scale, free_params order
    std::vector<double> end;
    double value = 0.0;
    bool converged = false;
    int n_evals = 0;
    std::string error;  // non-empty when the restart failed outright
};

struct FitResult {
    // Kernel with snapped components removed; what callers should report.
    CompositeKernelSpec spec;
    // Kernel with the raw optimum (variance floors kept); what callers
    // should score with, so that snapping never changes the posterior used
    // for classification arbitrarily.
    CompositeKernelSpec scoring_spec;
    std::map<ParamId, double> params;  // snapped natural values
    double value = 0.0;                // best -2 log likelihood
    int best_restart = -1;
    std::vector<RestartTrace> restarts;
};

// Multi-restart maximum likelihood over log-parameters. Restart r draws its
// start uniformly in the log-bounds from the stream mix_seed(seed, r); ties
// between restarts resolve to the earliest index. Throws AllRestartsFailed
// when no restart ever produced a finite likelihood.
FitResult fit_hyperparameters(const Dataset& data, const CompositeKernelSpec& kernel_template,
                              const FitConfig& config);

// Likelihood profile over a fixed lambda grid: every other free parameter
// re-optimized per grid point.
struct ProfilePoint {
    double lambda;
    double value;
    bool ok;
    std::string error;
};

std::vector<ProfilePoint> profile_lambda(const Dataset& data,
                                         const CompositeKernelSpec& kernel_template,
                                         const FitConfig& config,
                                         const std::vector<double>& lambda_grid);

// Bounds and restart counts for circadian-style expression screens:
// lengthscales in [10, 60], tau2 in [1e-5, 0.75], lambda in [20, 28],
// variances in [1e-8, max(10 var(y), 1)], 50 restarts.
FitConfig gene_profile(const Dataset& data);

// Bounds for the synthetic benchmark fits (periodic + trend + noise, no
// aperiodic part): scales tied to the data span and variance, 10 restarts.
FitConfig benchmark_profile(const Dataset& data);

}  // namespace perigp
