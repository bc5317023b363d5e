#include "perigp/dataset.hpp"

#include <algorithm>

namespace perigp {

double Dataset::input_min() const {
    return *std::min_element(inputs.begin(), inputs.end());
}

double Dataset::input_max() const {
    return *std::max_element(inputs.begin(), inputs.end());
}

double Dataset::output_variance() const {
    const std::size_t n = outputs.size();
    double mean = 0.0;
    for (double y : outputs) mean += y;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double y : outputs) ss += (y - mean) * (y - mean);
    return ss / static_cast<double>(n);
}

}  // namespace perigp
