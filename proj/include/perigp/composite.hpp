#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include <Eigen/Core>

#include "perigp/fourier.hpp"
#include "perigp/matern.hpp"
#include "perigp/periodic_kernel.hpp"
#include "perigp/rkhs.hpp"

namespace perigp {

enum class Component { periodic, aperiodic, trend };

// Sum kernel
//   k(x, y) = [trend] + [periodic] + [aperiodic] + tau2 * delta(i == j)
// where
//   trend     = 1 (+ x*y when trend_slope is set),
//   periodic  = projection k_p of a Matern kernel onto a Fourier basis,
//   aperiodic = a second Matern kernel minus ITS OWN projection onto the
//               same basis when a periodic part is present, or the plain
//               Matern kernel otherwise.
// The noise term is index-based: it applies only when x and y are the same
// observation, never to predictions at new inputs.
struct CompositeKernelSpec {
    struct PeriodicPart {
        MaternSpec matern;
        FourierBasis basis;
    };

    std::optional<PeriodicPart> periodic;
    std::optional<MaternSpec> aperiodic;
    bool trend = false;
    bool trend_slope = true;
    double noise_tau2 = 0.0;
    // RKHS interval for the projections; defaults to the data range when a
    // posterior is built.
    std::optional<RkhsDomain> domain;

    // A kernel with no signal component cannot back a GP model; evaluation
    // of such a spec is still well defined (the sum is just the noise).
    void validate() const;
    bool has_component(Component c) const;
};

// Cache of unit-variance PeriodicKernel builds keyed by
// (nu, theta, q, lambda, domain). Gram construction is the dominant cost of
// a likelihood evaluation and the optimizer re-visits parameter values
// (central differences perturb one coordinate at a time), so hits are
// frequent. Bounded: oldest entries are evicted past max_entries, which
// keeps long optimizer runs at a fixed memory footprint. Thread-safe.
class GramCache {
public:
    explicit GramCache(std::size_t max_entries = 256)
        : max_entries_(max_entries < 8 ? 8 : max_entries) {}

    std::shared_ptr<const PeriodicKernel> get(const MaternSpec& unit_spec,
                                              const FourierBasis& basis,
                                              const RkhsDomain& dom);

private:
    using Key = std::tuple<int, double, int, double, double, double>;
    std::size_t max_entries_;
    std::map<Key, std::shared_ptr<const PeriodicKernel>> entries_;
    std::deque<Key> insertion_order_;
    std::mutex mutex_;
};

// A spec bound to a concrete RKHS interval with its Gram factorisations
// done. Projections are built at sigma2 = 1 and rescaled (k_p is linear in
// sigma2), which makes cache reuse across variance changes exact.
class CompositeKernel {
public:
    CompositeKernel(const CompositeKernelSpec& spec, const RkhsDomain& dom,
                    GramCache* cache = nullptr);

    double eval(double x, double y, bool same_index) const;
    double component_eval(Component c, double x, double y) const;
    bool has_component(Component c) const { return spec_.has_component(c); }

    // Cross-covariance block of one component between two point sets.
    Eigen::MatrixXd component_matrix(Component c, const std::vector<double>& xs,
                                     const std::vector<double>& ys) const;
    // Full kernel matrix without the noise term.
    Eigen::MatrixXd cross_matrix(const std::vector<double>& xs,
                                 const std::vector<double>& ys) const;
    // Kernel matrix of the observation process: cross + tau2 * I.
    Eigen::MatrixXd train_matrix(const std::vector<double>& xs) const;

    const CompositeKernelSpec& spec() const { return spec_; }
    const RkhsDomain& domain() const { return dom_; }
    // Largest diagonal jitter any Gram factorisation needed.
    double gram_jitter() const;

private:
    CompositeKernelSpec spec_;
    RkhsDomain dom_;
    std::shared_ptr<const PeriodicKernel> periodic_unit_;
    std::shared_ptr<const PeriodicKernel> aperiodic_unit_;
};

// Convenience wrapper used by tests and simple callers.
double composite_eval(const CompositeKernelSpec& spec, double x, double y, bool same_index);

}  // namespace perigp
