#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "perigp/composite.hpp"
#include "perigp/dataset.hpp"

namespace perigp {

struct MeanVar {
    double mean;
    double var;
};

// Joint posterior draws of the periodic and aperiodic sub-models on a
// common grid; row i is realisation i.
struct JointSamples {
    Eigen::MatrixXd periodic;
    Eigen::MatrixXd aperiodic;
};

// Exact GP regression posterior under a composite kernel. The training
// matrix K = k(X, X) + tau2 I is Cholesky-factorised once; if that fails,
// diagonal jitter is added on a ladder 1e-12 .. 1e-8 (times the mean of
// diag(K)), recorded, and FactorizationFailure is thrown past the cap.
//
// Sub-model posteriors condition each component on the full observations:
//   mean_c(t) = k_c(t, X) K^{-1} y
//   var_c(t)  = k_c(t, t) - k_c(t, X) K^{-1} k_c(X, t)
//   cov_pa(t, t') = -k_p(t, X) K^{-1} k_a(X, t')
// so that mean = sum of component means and
// var = var_p + var_a + 2 cov_pa when the kernel is periodic + aperiodic
// (+ noise). Negative predictive variances from rounding are clamped to 0
// and counted.
class GpPosterior {
public:
    GpPosterior(const CompositeKernelSpec& spec, const Dataset& data,
                GramCache* cache = nullptr);

    MeanVar mean_var(double t) const;
    MeanVar submodel_mean_var(Component c, double t) const;
    double cross_cov(double t, double t_other) const;
    Eigen::VectorXd mean_on(const std::vector<double>& grid) const;

    // n_samples joint draws of (periodic, aperiodic) paths on the grid from
    // their joint posterior. Realisation i uses the stream
    // mix_seed(seed, i), so results do not depend on batching.
    JointSamples sample_joint(const std::vector<double>& grid, int n_samples,
                              std::uint64_t seed) const;

    // n log(2 pi) + log det K + y^T K^{-1} y for the training data.
    double neg2_log_likelihood() const { return neg2ll_; }

    const CompositeKernel& kernel() const { return kernel_; }
    const Dataset& data() const { return data_; }
    double kernel_jitter() const { return k_jitter_; }
    // Largest jitter used anywhere (training matrix or Gram factorisations).
    double max_jitter() const;
    long clamp_events() const { return clamp_events_.load(); }

    // Likelihood without keeping the posterior around.
    static double neg2_log_likelihood(const CompositeKernelSpec& spec, const Dataset& data,
                                      GramCache* cache = nullptr);

private:
    Eigen::VectorXd cross_vector(double t) const;
    double clamp_var(double v) const;

    CompositeKernel kernel_;
    Dataset data_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
    double k_jitter_ = 0.0;
    double neg2ll_ = 0.0;
    mutable std::atomic<long> clamp_events_{0};
};

// Dense-matrix core of the likelihood, exposed for direct testing:
// n log(2 pi) + log det K + y^T K^{-1} y, no jitter.
double neg2_log_likelihood_dense(const Eigen::MatrixXd& k, const Eigen::VectorXd& y);

}  // namespace perigp
