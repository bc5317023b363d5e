#include "perigp/periodicity.hpp"

#include <algorithm>
#include <cmath>

#include "perigp/errors.hpp"

namespace perigp {

void RatioConfig::validate() const {
    if (grid_size < 10) throw ConfigError("periodicity: grid_size must be >= 10");
    if (n_realisations < 1) throw ConfigError("periodicity: need n_realisations >= 1");
    if (!(cutoff >= 0.0)) throw ConfigError("periodicity: cutoff must be >= 0");
    if (interval && !(interval->first < interval->second))
        throw ConfigError("periodicity: interval must satisfy lo < hi");
}

namespace {
// Population variance of one sample row.
double row_variance(const Eigen::RowVectorXd& row) {
    const double mean = row.mean();
    return (row.array() - mean).square().sum() / static_cast<double>(row.size());
}
}  // namespace

PeriodicityReport periodicity_ratio(const GpPosterior& posterior, const RatioConfig& config) {
    config.validate();
    const auto [lo, hi] = config.interval.value_or(
        std::make_pair(posterior.data().input_min(), posterior.data().input_max()));
    if (!(lo < hi)) throw ConfigError("periodicity: degenerate sampling interval");

    std::vector<double> grid(static_cast<std::size_t>(config.grid_size));
    for (int i = 0; i < config.grid_size; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(config.grid_size - 1);

    const JointSamples samples =
        posterior.sample_joint(grid, config.n_realisations, config.seed);

    const double denom_floor = 1e-12 * posterior.data().output_variance();
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(config.n_realisations));
    int skipped = 0;
    for (int i = 0; i < config.n_realisations; ++i) {
        const Eigen::RowVectorXd zp = samples.periodic.row(i);
        const Eigen::RowVectorXd total = samples.periodic.row(i) + samples.aperiodic.row(i);
        const double var_total = row_variance(total);
        if (var_total <= denom_floor) {
            ++skipped;
            continue;
        }
        ratios.push_back(row_variance(zp) / var_total);
    }
    if (skipped > config.n_realisations / 10 || ratios.empty())
        throw DegenerateDenominator(
            "periodicity: " + std::to_string(skipped) + " of " +
            std::to_string(config.n_realisations) +
            " realisations had vanishing total variance");

    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double ss = 0.0;
    for (double r : ratios) ss += (r - mean) * (r - mean);
    const double stddev =
        ratios.size() > 1 ? std::sqrt(ss / static_cast<double>(ratios.size() - 1)) : 0.0;

    PeriodicityReport report;
    report.ratio_mean = mean;
    report.ratio_std = stddev;
    report.n_realisations = static_cast<int>(ratios.size());
    report.n_skipped = skipped;
    const auto& spec = posterior.kernel().spec();
    report.lambda_hat = spec.periodic ? spec.periodic->basis.lambda() : 0.0;
    report.is_periodic = mean >= config.cutoff;
    return report;
}

double top_k_cutoff(std::vector<double> ratios, int k) {
    ratios.erase(std::remove_if(ratios.begin(), ratios.end(),
                                [](double r) { return !std::isfinite(r); }),
                 ratios.end());
    if (ratios.empty()) throw ConfigError("top-k cutoff: no finite ratios");
    if (k < 1) throw ConfigError("top-k cutoff: k must be >= 1");
    std::sort(ratios.begin(), ratios.end(), std::greater<double>());
    const std::size_t idx = std::min(static_cast<std::size_t>(k), ratios.size()) - 1;
    return ratios[idx];
}

}  // namespace perigp
