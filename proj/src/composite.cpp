#include "perigp/composite.hpp"

#include <cmath>

#include "perigp/errors.hpp"

namespace perigp {

void CompositeKernelSpec::validate() const {
    if (!periodic && !aperiodic && !trend)
        throw ConfigError("composite kernel needs at least one of periodic, aperiodic, trend");
    if (!(noise_tau2 >= 0.0)) throw ConfigError("composite kernel: tau2 must be >= 0");
}

bool CompositeKernelSpec::has_component(Component c) const {
    switch (c) {
        case Component::periodic: return periodic.has_value();
        case Component::aperiodic: return aperiodic.has_value();
        case Component::trend: return trend;
    }
    return false;
}

std::shared_ptr<const PeriodicKernel> GramCache::get(const MaternSpec& unit_spec,
                                                     const FourierBasis& basis,
                                                     const RkhsDomain& dom) {
    const Key key{static_cast<int>(unit_spec.nu), unit_spec.theta, basis.q(),
                  basis.lambda(), dom.a, dom.b};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
    }
    auto built = std::make_shared<const PeriodicKernel>(unit_spec, basis, dom);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = entries_.emplace(key, std::move(built));
    if (inserted) {
        insertion_order_.push_back(key);
        while (entries_.size() > max_entries_) {
            entries_.erase(insertion_order_.front());
            insertion_order_.pop_front();
        }
    }
    return it->second;
}

namespace {
std::shared_ptr<const PeriodicKernel> build_unit(const MaternSpec& spec,
                                                 const FourierBasis& basis,
                                                 const RkhsDomain& dom, GramCache* cache) {
    const MaternSpec unit(spec.nu, spec.theta, 1.0);
    if (cache) return cache->get(unit, basis, dom);
    return std::make_shared<const PeriodicKernel>(unit, basis, dom);
}
}  // namespace

CompositeKernel::CompositeKernel(const CompositeKernelSpec& spec, const RkhsDomain& dom,
                                 GramCache* cache)
    : spec_(spec), dom_(dom) {
    if (spec_.periodic)
        periodic_unit_ = build_unit(spec_.periodic->matern, spec_.periodic->basis, dom_, cache);
    if (spec_.aperiodic && spec_.periodic)
        aperiodic_unit_ = build_unit(*spec_.aperiodic, spec_.periodic->basis, dom_, cache);
}

double CompositeKernel::component_eval(Component c, double x, double y) const {
    switch (c) {
        case Component::periodic:
            if (!spec_.periodic) throw MissingComponent("kernel has no periodic component");
            return spec_.periodic->matern.sigma2 * periodic_unit_->k_p(x, y);
        case Component::aperiodic: {
            if (!spec_.aperiodic) throw MissingComponent("kernel has no aperiodic component");
            double v = matern_eval(*spec_.aperiodic, x, y);
            if (aperiodic_unit_) v -= spec_.aperiodic->sigma2 * aperiodic_unit_->k_p(x, y);
            return v;
        }
        case Component::trend:
            if (!spec_.trend) throw MissingComponent("kernel has no trend component");
            return 1.0 + (spec_.trend_slope ? x * y : 0.0);
    }
    throw MissingComponent("unknown component");
}

double CompositeKernel::eval(double x, double y, bool same_index) const {
    double v = same_index ? spec_.noise_tau2 : 0.0;
    if (spec_.trend) v += component_eval(Component::trend, x, y);
    if (spec_.periodic) v += component_eval(Component::periodic, x, y);
    if (spec_.aperiodic) v += component_eval(Component::aperiodic, x, y);
    return v;
}

Eigen::MatrixXd CompositeKernel::component_matrix(Component c, const std::vector<double>& xs,
                                                  const std::vector<double>& ys) const {
    const Eigen::Index nx = static_cast<Eigen::Index>(xs.size());
    const Eigen::Index ny = static_cast<Eigen::Index>(ys.size());
    switch (c) {
        case Component::periodic: {
            if (!spec_.periodic) throw MissingComponent("kernel has no periodic component");
            return spec_.periodic->matern.sigma2 * periodic_unit_->k_p_matrix(xs, ys);
        }
        case Component::aperiodic: {
            if (!spec_.aperiodic) throw MissingComponent("kernel has no aperiodic component");
            Eigen::MatrixXd out(nx, ny);
            for (Eigen::Index i = 0; i < nx; ++i)
                for (Eigen::Index j = 0; j < ny; ++j)
                    out(i, j) = matern_eval(*spec_.aperiodic, xs[static_cast<std::size_t>(i)],
                                            ys[static_cast<std::size_t>(j)]);
            if (aperiodic_unit_)
                out -= spec_.aperiodic->sigma2 * aperiodic_unit_->k_p_matrix(xs, ys);
            return out;
        }
        case Component::trend: {
            if (!spec_.trend) throw MissingComponent("kernel has no trend component");
            Eigen::MatrixXd out(nx, ny);
            for (Eigen::Index i = 0; i < nx; ++i)
                for (Eigen::Index j = 0; j < ny; ++j)
                    out(i, j) = 1.0 + (spec_.trend_slope
                                           ? xs[static_cast<std::size_t>(i)] *
                                                 ys[static_cast<std::size_t>(j)]
                                           : 0.0);
            return out;
        }
    }
    throw MissingComponent("unknown component");
}

Eigen::MatrixXd CompositeKernel::cross_matrix(const std::vector<double>& xs,
                                              const std::vector<double>& ys) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(xs.size()),
                                                static_cast<Eigen::Index>(ys.size()));
    if (spec_.trend) out += component_matrix(Component::trend, xs, ys);
    if (spec_.periodic) out += component_matrix(Component::periodic, xs, ys);
    if (spec_.aperiodic) out += component_matrix(Component::aperiodic, xs, ys);
    return out;
}

Eigen::MatrixXd CompositeKernel::train_matrix(const std::vector<double>& xs) const {
    Eigen::MatrixXd k = cross_matrix(xs, xs);
    k.diagonal().array() += spec_.noise_tau2;
    return k;
}

double CompositeKernel::gram_jitter() const {
    double j = 0.0;
    if (periodic_unit_) j = std::max(j, periodic_unit_->jitter());
    if (aperiodic_unit_) j = std::max(j, aperiodic_unit_->jitter());
    return j;
}

double composite_eval(const CompositeKernelSpec& spec, double x, double y, bool same_index) {
    if (!spec.periodic && !spec.aperiodic) {
        // No projection to build; the sum is the trend plus optional noise.
        double v = same_index ? spec.noise_tau2 : 0.0;
        if (spec.trend) v += 1.0 + (spec.trend_slope ? x * y : 0.0);
        return v;
    }
    const RkhsDomain dom = spec.domain.value_or(RkhsDomain(std::min(x, y) - 1.0,
                                                           std::max(x, y) + 1.0));
    return CompositeKernel(spec, dom).eval(x, y, same_index);
}

}  // namespace perigp
