#include "perigp/gp.hpp"

#include <cmath>

#include "perigp/errors.hpp"
#include "perigp/rng.hpp"

namespace perigp {

namespace {
constexpr double kLog2Pi = 1.837877066409345483560659472811;

RkhsDomain resolve_domain(const CompositeKernelSpec& spec, const Dataset& data) {
    if (spec.domain) return *spec.domain;
    return RkhsDomain(data.input_min(), data.input_max());
}

// Cholesky with escalating diagonal jitter. Returns the jitter used;
// relative to the mean diagonal so the ladder is scale-free.
double factorize_with_jitter(Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& m,
                             double cap_ratio, const char* what) {
    const Eigen::Index n = m.rows();
    const double scale = std::max(m.diagonal().mean(), 1e-300);
    llt.compute(m);
    if (llt.info() == Eigen::Success) return 0.0;
    for (double ratio = 1e-12; ratio <= cap_ratio * 1.0000001; ratio *= 10.0) {
        const double jitter = ratio * scale;
        llt.compute(m + jitter * Eigen::MatrixXd::Identity(n, n));
        if (llt.info() == Eigen::Success) return jitter;
    }
    throw FactorizationFailure(std::string(what) +
                               ": matrix is not positive definite within the jitter budget");
}
}  // namespace

GpPosterior::GpPosterior(const CompositeKernelSpec& spec, const Dataset& data,
                         GramCache* cache)
    : kernel_((spec.validate(), spec), resolve_domain(spec, data), cache), data_(data) {
    Eigen::MatrixXd k = kernel_.train_matrix(data_.inputs);
    k_jitter_ = factorize_with_jitter(llt_, k, 1e-8, "GP training matrix");

    Eigen::Map<const Eigen::VectorXd> y(data_.outputs.data(),
                                        static_cast<Eigen::Index>(data_.outputs.size()));
    alpha_ = llt_.solve(y);

    const double n = static_cast<double>(data_.size());
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < llt_.matrixL().rows(); ++i)
        logdet += std::log(llt_.matrixL()(i, i));
    neg2ll_ = n * kLog2Pi + 2.0 * logdet + y.dot(alpha_);
}

Eigen::VectorXd GpPosterior::cross_vector(double t) const {
    return kernel_.cross_matrix({t}, data_.inputs).transpose();
}

double GpPosterior::clamp_var(double v) const {
    if (v < 0.0) {
        ++clamp_events_;
        return 0.0;
    }
    return v;
}

MeanVar GpPosterior::mean_var(double t) const {
    const Eigen::VectorXd kt = cross_vector(t);
    const double prior = kernel_.eval(t, t, false);
    const double mean = kt.dot(alpha_);
    const double var = prior - kt.dot(llt_.solve(kt));
    return {mean, clamp_var(var)};
}

MeanVar GpPosterior::submodel_mean_var(Component c, double t) const {
    const Eigen::VectorXd kc = kernel_.component_matrix(c, {t}, data_.inputs).transpose();
    const double prior = kernel_.component_eval(c, t, t);
    const double mean = kc.dot(alpha_);
    const double var = prior - kc.dot(llt_.solve(kc));
    return {mean, clamp_var(var)};
}

double GpPosterior::cross_cov(double t, double t_other) const {
    const Eigen::VectorXd kp =
        kernel_.component_matrix(Component::periodic, {t}, data_.inputs).transpose();
    const Eigen::VectorXd ka =
        kernel_.component_matrix(Component::aperiodic, {t_other}, data_.inputs).transpose();
    return -kp.dot(llt_.solve(ka));
}

Eigen::VectorXd GpPosterior::mean_on(const std::vector<double>& grid) const {
    return kernel_.cross_matrix(grid, data_.inputs) * alpha_;
}

JointSamples GpPosterior::sample_joint(const std::vector<double>& grid, int n_samples,
                                       std::uint64_t seed) const {
    if (n_samples < 1) throw ConfigError("sample_joint: need n_samples >= 1");
    if (!kernel_.has_component(Component::periodic) ||
        !kernel_.has_component(Component::aperiodic))
        throw MissingComponent("joint sampling needs periodic and aperiodic components");

    const Eigen::Index g = static_cast<Eigen::Index>(grid.size());
    const Eigen::MatrixXd p = kernel_.component_matrix(Component::periodic, grid, data_.inputs);
    const Eigen::MatrixXd a = kernel_.component_matrix(Component::aperiodic, grid, data_.inputs);
    const Eigen::MatrixXd wp = llt_.solve(p.transpose());
    const Eigen::MatrixXd wa = llt_.solve(a.transpose());

    const Eigen::VectorXd mean_p = p * alpha_;
    const Eigen::VectorXd mean_a = a * alpha_;

    Eigen::MatrixXd cov(2 * g, 2 * g);
    cov.topLeftCorner(g, g) =
        kernel_.component_matrix(Component::periodic, grid, grid) - p * wp;
    cov.bottomRightCorner(g, g) =
        kernel_.component_matrix(Component::aperiodic, grid, grid) - a * wa;
    cov.topRightCorner(g, g) = -(p * wa);
    cov.bottomLeftCorner(g, g) = cov.topRightCorner(g, g).transpose();
    cov = ((cov + cov.transpose()) * 0.5).eval();

    Eigen::LLT<Eigen::MatrixXd> chol;
    factorize_with_jitter(chol, cov, 1e-6, "joint posterior covariance");
    const Eigen::MatrixXd l = chol.matrixL();

    JointSamples out;
    out.periodic.resize(n_samples, g);
    out.aperiodic.resize(n_samples, g);
    Eigen::VectorXd z(2 * g);
    for (int i = 0; i < n_samples; ++i) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        for (Eigen::Index j = 0; j < 2 * g; ++j) z[j] = rng.normal();
        const Eigen::VectorXd draw = l.triangularView<Eigen::Lower>() * z;
        out.periodic.row(i) = (mean_p + draw.head(g)).transpose();
        out.aperiodic.row(i) = (mean_a + draw.tail(g)).transpose();
    }
    return out;
}

double GpPosterior::max_jitter() const { return std::max(k_jitter_, kernel_.gram_jitter()); }

double GpPosterior::neg2_log_likelihood(const CompositeKernelSpec& spec, const Dataset& data,
                                        GramCache* cache) {
    return GpPosterior(spec, data, cache).neg2ll_;
}

double neg2_log_likelihood_dense(const Eigen::MatrixXd& k, const Eigen::VectorXd& y) {
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
        throw FactorizationFailure("likelihood: matrix is not positive definite");
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < k.rows(); ++i) logdet += std::log(llt.matrixL()(i, i));
    const double n = static_cast<double>(k.rows());
    return n * kLog2Pi + 2.0 * logdet + y.dot(llt.solve(y));
}

}  // namespace perigp
