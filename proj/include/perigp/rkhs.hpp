#pragma once

#include <array>
#include <vector>

#include "perigp/cosine_form.hpp"
#include "perigp/matern.hpp"

namespace perigp {

// Closed interval [a, b] the inner product integrates over.
struct RkhsDomain {
    double a;
    double b;

    RkhsDomain(double lo, double hi);
};

// First-order representation of the Matern RKHS inner product:
//
//   <h, g> = int_a^b (L h)(t) (L g)(t) dt
//          + 2 * sum_{j+k even, 0 <= j,k <= m-1} d[j][k] h^(j)(a) g^(k)(a)
//
// where L h = sum_k alpha[k] h^(k) is an order-m constant-coefficient
// differential operator. alpha has m+1 entries with alpha[0] != 0 and
// alpha[m] != 0. boundary is m x m, symmetric, and zero where j+k is odd.
struct DifferentialOperator {
    std::vector<double> alpha;
    std::vector<std::vector<double>> boundary;

    DifferentialOperator(std::vector<double> alpha_coeffs,
                         std::vector<std::vector<double>> boundary_coeffs);

    int order() const { return static_cast<int>(alpha.size()) - 1; }
};

// Operator whose induced inner product reproduces the given Matern kernel.
// alpha[k] = c * binom(m, k) * (sqrt(2 nu) / theta)^(m-k) with the constant
// c fixed by the kernel's spectral density, and
// d[j][k] = sum_i (-1)^(j-i) alpha[i] alpha[j+k+1-i] over the valid range.
DifferentialOperator matern_operator(const MaternSpec& spec);

// L applied to a single cosine: amplitude rho cos(w x + phi) maps to
// rho' cos(w x + phi') with rho' = rho * sqrt(rc^2 + rs^2),
// rc = sum_k alpha[k] w^k cos(phi + k pi/2), rs likewise with sin.
CosineTerm apply_operator(const DifferentialOperator& op, const CosineTerm& term);

CosineForm apply_operator(const DifferentialOperator& op, const CosineForm& f);

// int_a^b cos(w1 t + phi1) cos(w2 t + phi2) dt via the product-to-sum
// identity. Each branch is evaluated as
// (b-a) * cos(W (a+b)/2 + psi) * sinc(W (b-a)/2), which stays accurate as
// W -> 0 (sinc switches to its Taylor series near zero).
double integrate_cosine_product(const CosineTerm& t1, const CosineTerm& t2,
                                const RkhsDomain& dom);

// <f, g> for single cosines. Allocation-free; this is the Gram-build hot path.
double inner_product(const DifferentialOperator& op, const RkhsDomain& dom,
                     const CosineTerm& f, const CosineTerm& g);

double inner_product(const DifferentialOperator& op, const RkhsDomain& dom,
                     const CosineForm& f, const CosineForm& g);

}  // namespace perigp
