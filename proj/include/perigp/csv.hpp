#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perigp/dataset.hpp"

namespace perigp {

enum class Layout {
    // One series per file: two columns, time then value. A non-numeric
    // first row is treated as a header.
    long_format,
    // Many series per file: first row is "<label>,t1,t2,...", every later
    // row is "<series id>,v1,v2,...". Empty cells are missing observations
    // and are dropped together with their timepoint.
    matrix,
};

Layout layout_from_string(const std::string& name);

// Parse failures carry 1-based row/column locations in ParseError. A series
// left with fewer than two observations raises EmptySeries.
std::vector<Dataset> read_series_csv(std::istream& in, Layout layout,
                                     const std::string& default_id);
std::vector<Dataset> read_series_file(const std::string& path, Layout layout);

// Shortest decimal text that round-trips a double exactly.
std::string format_double(double value);

}  // namespace perigp
