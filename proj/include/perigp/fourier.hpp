#pragma once

#include <vector>

#include <Eigen/Core>

#include "perigp/cosine_form.hpp"
#include "perigp/errors.hpp"

namespace perigp {

// Truncated Fourier feature set with period lambda:
//   sin(2 pi x / lambda), cos(2 pi x / lambda), ...,
//   sin(2 pi q x / lambda), cos(2 pi q x / lambda)
// stored as canonical cosine terms (sin(w x) = cos(w x + 3 pi/2)), so 2q
// functions in total, ordered (sin_1, cos_1, ..., sin_q, cos_q).
class FourierBasis {
public:
    FourierBasis(int q, double lambda) : q_(q), lambda_(lambda) {
        if (q < 1) throw ConfigError("Fourier basis needs q >= 1");
        if (!(lambda > 0.0)) throw ConfigError("Fourier basis needs lambda > 0");
        terms_.reserve(static_cast<std::size_t>(2 * q));
        for (int k = 1; k <= q; ++k) {
            const double w = 2.0 * 3.141592653589793238462643383280 *
                             static_cast<double>(k) / lambda;
            terms_.push_back({1.0, w, 4.712388980384689857693965074919});
            terms_.push_back({1.0, w, 0.0});
        }
    }

    int q() const { return q_; }
    double lambda() const { return lambda_; }
    int size() const { return 2 * q_; }
    const std::vector<CosineTerm>& terms() const { return terms_; }

    // F(x) as a column vector of the 2q basis functions evaluated at x.
    Eigen::VectorXd evaluate(double x) const {
        Eigen::VectorXd f(size());
        for (int i = 0; i < size(); ++i) {
            const CosineTerm& t = terms_[static_cast<std::size_t>(i)];
            f[i] = t.amplitude * std::cos(t.freq * x + t.phase);
        }
        return f;
    }

    // Column j holds F(points[j]).
    Eigen::MatrixXd evaluate_all(const std::vector<double>& points) const {
        Eigen::MatrixXd f(size(), static_cast<Eigen::Index>(points.size()));
        for (std::size_t j = 0; j < points.size(); ++j)
            f.col(static_cast<Eigen::Index>(j)) = evaluate(points[j]);
        return f;
    }

private:
    int q_;
    double lambda_;
    std::vector<CosineTerm> terms_;
};

}  // namespace perigp
