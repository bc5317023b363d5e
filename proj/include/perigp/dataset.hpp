#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "perigp/errors.hpp"

namespace perigp {

/// One observed time series: inputs (times) and outputs (values).
struct Dataset {
    std::vector<double> inputs;
    std::vector<double> outputs;
    std::string id;

    Dataset() = default;
    Dataset(std::vector<double> x, std::vector<double> y, std::string name = "")
        : inputs(std::move(x)), outputs(std::move(y)), id(std::move(name)) {
        validate();
    }

    std::size_t size() const { return inputs.size(); }

    void validate() const {
        if (inputs.size() != outputs.size())
            throw Error("dataset '" + id + "': inputs and outputs differ in length");
        if (inputs.size() < 2)
            throw Error("dataset '" + id + "': need at least 2 observations");
        for (double v : inputs)
            if (!std::isfinite(v)) throw Error("dataset '" + id + "': non-finite input");
        for (double v : outputs)
            if (!std::isfinite(v)) throw Error("dataset '" + id + "': non-finite output");
    }

    double input_min() const;
    double input_max() const;
    /// Population variance of the outputs.
    double output_variance() const;
};

}  // namespace perigp
