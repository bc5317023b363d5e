#include "perigp/hyperfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perigp/bounded_lbfgs.hpp"
#include "perigp/errors.hpp"
#include "perigp/gp.hpp"
#include "perigp/rng.hpp"

namespace perigp {

std::string param_name(ParamId id) {
    switch (id) {
        case ParamId::sigma2_p: return "sigma2_p";
        case ParamId::theta_p: return "theta_p";
        case ParamId::sigma2_a: return "sigma2_a";
        case ParamId::theta_a: return "theta_a";
        case ParamId::tau2: return "tau2";
        case ParamId::lambda: return "lambda";
    }
    return "?";
}

namespace {

bool needs_periodic(ParamId id) {
    return id == ParamId::sigma2_p || id == ParamId::theta_p || id == ParamId::lambda;
}

bool needs_aperiodic(ParamId id) {
    return id == ParamId::sigma2_a || id == ParamId::theta_a;
}

void check_config(const CompositeKernelSpec& tmpl, const FitConfig& cfg) {
    if (cfg.n_restarts < 1) throw ConfigError("fit: need at least one restart");
    if (cfg.free_params.empty()) throw ConfigError("fit: no free parameters");
    for (ParamId id : cfg.free_params) {
        const auto it = cfg.bounds.find(id);
        if (it == cfg.bounds.end())
            throw ConfigError("fit: no bounds for free parameter " + param_name(id));
        if (!(it->second.lo > 0.0 && it->second.lo <= it->second.hi))
            throw ConfigError("fit: bounds for " + param_name(id) +
                              " must satisfy 0 < lo <= hi (parameters live in log space)");
        if (needs_periodic(id) && !tmpl.periodic)
            throw ConfigError("fit: " + param_name(id) + " is free but the kernel has no "
                              "periodic component");
        if (needs_aperiodic(id) && !tmpl.aperiodic)
            throw ConfigError("fit: " + param_name(id) + " is free but the kernel has no "
                              "aperiodic component");
        if (std::count(cfg.free_params.begin(), cfg.free_params.end(), id) != 1)
            throw ConfigError("fit: duplicate free parameter " + param_name(id));
    }
}

CompositeKernelSpec apply_params(const CompositeKernelSpec& tmpl,
                                 const std::vector<ParamId>& ids,
                                 const Eigen::VectorXd& natural) {
    CompositeKernelSpec spec = tmpl;
    for (Eigen::Index i = 0; i < natural.size(); ++i) {
        const double v = natural[i];
        switch (ids[static_cast<std::size_t>(i)]) {
            case ParamId::sigma2_p:
                spec.periodic->matern = MaternSpec(spec.periodic->matern.nu,
                                                   spec.periodic->matern.theta, v);
                break;
            case ParamId::theta_p:
                spec.periodic->matern =
                    MaternSpec(spec.periodic->matern.nu, v, spec.periodic->matern.sigma2);
                break;
            case ParamId::sigma2_a:
                spec.aperiodic = MaternSpec(spec.aperiodic->nu, spec.aperiodic->theta, v);
                break;
            case ParamId::theta_a:
                spec.aperiodic = MaternSpec(spec.aperiodic->nu, v, spec.aperiodic->sigma2);
                break;
            case ParamId::tau2:
                spec.noise_tau2 = v;
                break;
            case ParamId::lambda:
                spec.periodic->basis = FourierBasis(spec.periodic->basis.q(), v);
                break;
        }
    }
    return spec;
}

FitResult fit_impl(const Dataset& data, const CompositeKernelSpec& tmpl, const FitConfig& cfg,
                   GramCache& cache) {
    check_config(tmpl, cfg);
    tmpl.validate();

    const std::size_t dim = cfg.free_params.size();
    Eigen::VectorXd lo(static_cast<Eigen::Index>(dim)), hi(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const ParamBounds& b = cfg.bounds.at(cfg.free_params[i]);
        lo[static_cast<Eigen::Index>(i)] = std::log(b.lo);
        hi[static_cast<Eigen::Index>(i)] = std::log(b.hi);
    }

    const auto objective = [&](const Eigen::VectorXd& x_log) -> double {
        try {
            const CompositeKernelSpec spec =
                apply_params(tmpl, cfg.free_params, x_log.array().exp().matrix());
            return GpPosterior::neg2_log_likelihood(spec, data, &cache);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    BoundedLbfgs::Options opts;
    opts.max_evals = cfg.max_evals_per_restart;
    opts.grad_step = cfg.grad_step;

    FitResult result;
    result.restarts.resize(static_cast<std::size_t>(cfg.n_restarts));
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;

    for (int r = 0; r < cfg.n_restarts; ++r) {
        Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        Eigen::VectorXd x0(static_cast<Eigen::Index>(dim));
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = rng.uniform(lo[i], hi[i]);

        RestartTrace& trace = result.restarts[static_cast<std::size_t>(r)];
        const Eigen::VectorXd start_nat = x0.array().exp().matrix();
        trace.start.assign(start_nat.data(), start_nat.data() + start_nat.size());

        const BoundedLbfgs::Result run = BoundedLbfgs::minimize(objective, x0, lo, hi, opts);
        trace.n_evals = run.n_evals;
        trace.converged = run.converged;
        trace.value = run.f;
        if (!std::isfinite(run.f)) {
            trace.error = "no finite likelihood found from this start";
            continue;
        }
        const Eigen::VectorXd end_nat = run.x.array().exp().matrix();
        trace.end.assign(end_nat.data(), end_nat.data() + end_nat.size());
        if (run.f < best) {
            best = run.f;
            best_x = run.x;
            result.best_restart = r;
        }
    }

    if (result.best_restart < 0)
        throw AllRestartsFailed("fit: all " + std::to_string(cfg.n_restarts) +
                                " restarts failed for series '" + data.id + "'");

    result.value = best;
    const Eigen::VectorXd natural = best_x.array().exp().matrix();
    result.scoring_spec = apply_params(tmpl, cfg.free_params, natural);

    // Snap variance components sitting on their floor to zero, but never
    // below one remaining signal component.
    std::map<ParamId, double> params;
    for (std::size_t i = 0; i < dim; ++i)
        params[cfg.free_params[i]] = natural[static_cast<Eigen::Index>(i)];

    CompositeKernelSpec snapped = result.scoring_spec;
    const auto snapable = [&](ParamId id) {
        const auto it = params.find(id);
        if (it == params.end()) return false;
        return it->second <= cfg.snap_factor * cfg.bounds.at(id).lo;
    };
    if (snapable(ParamId::sigma2_p) && (snapped.aperiodic || snapped.trend)) {
        snapped.periodic.reset();
        params[ParamId::sigma2_p] = 0.0;
    }
    if (snapable(ParamId::sigma2_a) && (snapped.periodic || snapped.trend)) {
        snapped.aperiodic.reset();
        params[ParamId::sigma2_a] = 0.0;
    }
    result.spec = snapped;
    result.params = params;
    return result;
}

}  // namespace

FitResult fit_hyperparameters(const Dataset& data, const CompositeKernelSpec& kernel_template,
                              const FitConfig& config) {
    GramCache cache;
    return fit_impl(data, kernel_template, config, cache);
}

std::vector<ProfilePoint> profile_lambda(const Dataset& data,
                                         const CompositeKernelSpec& kernel_template,
                                         const FitConfig& config,
                                         const std::vector<double>& lambda_grid) {
    if (!kernel_template.periodic)
        throw ConfigError("lambda profile: kernel has no periodic component");
    if (lambda_grid.empty()) throw ConfigError("lambda profile: empty grid");

    FitConfig point_config = config;
    point_config.free_params.erase(std::remove(point_config.free_params.begin(),
                                               point_config.free_params.end(), ParamId::lambda),
                                   point_config.free_params.end());
    if (point_config.free_params.empty())
        throw ConfigError("lambda profile: no free parameters besides lambda");

    GramCache cache;
    std::vector<ProfilePoint> out;
    out.reserve(lambda_grid.size());
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        const double lambda = lambda_grid[i];
        ProfilePoint point{lambda, std::numeric_limits<double>::quiet_NaN(), false, ""};
        try {
            if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
            CompositeKernelSpec tmpl = kernel_template;
            tmpl.periodic->basis = FourierBasis(tmpl.periodic->basis.q(), lambda);
            FitConfig cfg = point_config;
            cfg.seed = mix_seed(config.seed, static_cast<std::uint64_t>(i) + 0x10000ULL);
            const FitResult fit = fit_impl(data, tmpl, cfg, cache);
            point.value = fit.value;
            point.ok = true;
        } catch (const Error& e) {
            point.error = e.what();
        }
        out.push_back(std::move(point));
    }
    return out;
}

FitConfig gene_profile(const Dataset& data) {
    const double var_cap = std::max(10.0 * data.output_variance(), 1.0);
    FitConfig cfg;
    cfg.bounds[ParamId::sigma2_p] = {1e-8, var_cap};
    cfg.bounds[ParamId::sigma2_a] = {1e-8, var_cap};
    cfg.bounds[ParamId::theta_p] = {10.0, 60.0};
    cfg.bounds[ParamId::theta_a] = {10.0, 60.0};
    cfg.bounds[ParamId::tau2] = {1e-5, 0.75};
    cfg.bounds[ParamId::lambda] = {20.0, 28.0};
    cfg.free_params = {ParamId::sigma2_p, ParamId::theta_p, ParamId::sigma2_a,
                       ParamId::theta_a, ParamId::tau2, ParamId::lambda};
    cfg.n_restarts = 50;
    return cfg;
}

FitConfig benchmark_profile(const Dataset& data) {
    const double span = data.input_max() - data.input_min();
    if (!(span > 0.0)) throw ConfigError("benchmark profile: inputs have zero span");
    const double var = std::max(data.output_variance(), 1e-12);
    const double mean_spacing = span / static_cast<double>(data.size() - 1);

    FitConfig cfg;
    cfg.bounds[ParamId::sigma2_p] = {1e-4 * var, 100.0 * var};
    cfg.bounds[ParamId::theta_p] = {0.01 * span, 2.0 * span};
    cfg.bounds[ParamId::tau2] = {1e-6 * var, 2.0 * var};
    cfg.bounds[ParamId::lambda] = {std::min(4.0 * mean_spacing, 0.5 * span), span};
    cfg.free_params = {ParamId::sigma2_p, ParamId::theta_p, ParamId::tau2, ParamId::lambda};
    cfg.n_restarts = 10;
    return cfg;
}

}  // namespace perigp
