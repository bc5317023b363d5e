#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "perigp/gp.hpp"

namespace perigp {

struct RatioConfig {
    int grid_size = 500;
    int n_realisations = 1000;
    std::uint64_t seed = 0;
    double cutoff = 0.77;
    // Interval the variance ratio is taken over; defaults to the span of
    // the training inputs.
    std::optional<std::pair<double, double>> interval;

    void validate() const;
};

struct PeriodicityReport {
    double ratio_mean = 0.0;
    double ratio_std = 0.0;
    int n_realisations = 0;  // realisations that produced a ratio
    int n_skipped = 0;       // realisations dropped for a vanishing denominator
    double lambda_hat = 0.0;
    bool is_periodic = false;
};

// Monte-Carlo estimate of how much of the signal the periodic sub-model
// carries. Each realisation draws joint paths (z_p, z_a) of the periodic
// and aperiodic posteriors on a uniform grid of grid_size points and scores
//
//   r = Var[z_p] / Var[z_p + z_a]
//
// with Var the population variance over the grid; the report carries the
// mean and sample standard deviation of r across realisations. Realisations
// whose total path variance is below 1e-12 times the training output
// variance are skipped; more than 10% skipped raises DegenerateDenominator.
// Classification is ratio_mean >= cutoff (inclusive).
PeriodicityReport periodicity_ratio(const GpPosterior& posterior, const RatioConfig& config);

// Cutoff that keeps exactly the k largest ratios (the k-th largest value),
// for top-k relabelling of a screen. NaNs are ignored; k past the number of
// finite ratios returns the smallest finite ratio.
double top_k_cutoff(std::vector<double> ratios, int k);

}  // namespace perigp
