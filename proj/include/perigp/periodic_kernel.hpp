#pragma once

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "perigp/fourier.hpp"
#include "perigp/matern.hpp"
#include "perigp/rkhs.hpp"

namespace perigp {

// Projection of a Matern kernel onto the span of a Fourier basis inside the
// kernel's RKHS on [a, b]:
//
//   k_p(x, y) = F(x)^T G^{-1} F(y),   G_ij = <F_i, F_j>_H
//
// and the complement k_a = k - k_p. G is symmetric positive definite up to
// rounding; if the Cholesky factorisation fails, jitter is added to the
// diagonal on a ladder 1e-12 .. 1e-6 (times trace(G)/2q) before giving up
// with FactorizationFailure. k_p scales linearly in sigma2 (G carries a
// 1/sigma2 factor), which callers exploit by building at sigma2 = 1.
class PeriodicKernel {
public:
    PeriodicKernel(const MaternSpec& base, const FourierBasis& basis, const RkhsDomain& dom);

    double k_p(double x, double y) const;
    double k_a(double x, double y) const;

    // L^{-1} F(points) where G = L L^T; k_p blocks are then inner products
    // of columns: k_p(x_i, y_j) = half(X).col(i) . half(Y).col(j).
    Eigen::MatrixXd half_features(const std::vector<double>& points) const;

    // k_p evaluated on a grid pair in one shot.
    Eigen::MatrixXd k_p_matrix(const std::vector<double>& xs,
                               const std::vector<double>& ys) const;

    const MaternSpec& base() const { return base_; }
    const FourierBasis& basis() const { return basis_; }
    const RkhsDomain& domain() const { return dom_; }
    const Eigen::MatrixXd& gram() const { return gram_; }
    double jitter() const { return jitter_; }

private:
    MaternSpec base_;
    FourierBasis basis_;
    RkhsDomain dom_;
    Eigen::MatrixXd gram_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double jitter_ = 0.0;
};

}  // namespace perigp
