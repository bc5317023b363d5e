#pragma once

#include "perigp/dataset.hpp"

namespace perigp {

// Least-squares cosine fit
//   y(t) ~ alpha + beta t + gamma cos(omega t + phi)
// fitted in two stages: the linear part by ordinary least squares, then the
// cosine part on the residuals by an omega grid search (amplitude and phase
// solved in closed form per omega) refined by golden-section search.
struct CosoptModel {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;  // >= 0
    double omega = 0.0;  // > 0
    double phi = 0.0;    // in [0, 2 pi)
    double mse = 0.0;    // training mean squared error
};

struct CosoptOptions {
    // Omega candidates: omega = 2 pi / period over log-spaced periods.
    int grid_size = 200;
    double period_lo = 0.2;
    double period_hi = 5.0;
    bool fit_slope = true;

    void validate() const;
};

CosoptModel cosopt_fit(const Dataset& data, const CosoptOptions& options = {});

double cosopt_eval(const CosoptModel& model, double t);

}  // namespace perigp
