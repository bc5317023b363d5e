#include "perigp/csv.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "perigp/errors.hpp"

namespace perigp {

Layout layout_from_string(const std::string& name) {
    if (name == "long") return Layout::long_format;
    if (name == "matrix") return Layout::matrix;
    throw ConfigError("unknown layout '" + name + "' (expected long or matrix)");
}

namespace {
std::string trim(const std::string& s) {
    std::size_t lo = 0, hi = s.size();
    while (lo < hi && (s[lo] == ' ' || s[lo] == '\t' || s[lo] == '\r')) ++lo;
    while (hi > lo && (s[hi - 1] == ' ' || s[hi - 1] == '\t' || s[hi - 1] == '\r')) --hi;
    return s.substr(lo, hi - lo);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            cells.push_back(trim(line.substr(pos)));
            break;
        }
        cells.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return cells;
}

bool parse_number(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

double require_number(const std::string& cell, std::size_t row, std::size_t col) {
    double v;
    if (!parse_number(cell, v))
        throw ParseError("cannot parse '" + cell + "' as a number", row, col);
    return v;
}

std::vector<std::string> read_rows(std::istream& in) {
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) rows.push_back(line);
    return rows;
}

bool blank_row(const std::string& line) { return trim(line).empty(); }

std::vector<Dataset> read_long(const std::vector<std::string>& rows,
                               const std::string& default_id) {
    std::vector<double> t, y;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (blank_row(rows[r])) continue;
        const std::vector<std::string> cells = split_row(rows[r]);
        if (cells.size() < 2)
            throw ParseError("long layout needs two columns", r + 1, cells.size());
        double tv;
        if (t.empty() && y.empty() && !parse_number(cells[0], tv)) continue;  // header row
        t.push_back(require_number(cells[0], r + 1, 1));
        y.push_back(require_number(cells[1], r + 1, 2));
    }
    if (t.size() < 2)
        throw EmptySeries("series '" + default_id + "' has fewer than 2 observations");
    return {Dataset(std::move(t), std::move(y), default_id)};
}

std::vector<Dataset> read_matrix(const std::vector<std::string>& rows) {
    std::size_t header_row = 0;
    while (header_row < rows.size() && blank_row(rows[header_row])) ++header_row;
    if (header_row == rows.size())
        throw ParseError("matrix layout needs a timepoint header row", 1, 1);

    const std::vector<std::string> header = split_row(rows[header_row]);
    if (header.size() < 3)
        throw ParseError("matrix layout needs an id column and at least 2 timepoints",
                         header_row + 1, header.size());
    std::vector<double> times(header.size() - 1);
    for (std::size_t c = 1; c < header.size(); ++c)
        times[c - 1] = require_number(header[c], header_row + 1, c + 1);

    std::vector<Dataset> out;
    for (std::size_t r = header_row + 1; r < rows.size(); ++r) {
        if (blank_row(rows[r])) continue;
        const std::vector<std::string> cells = split_row(rows[r]);
        if (cells.empty() || cells[0].empty())
            throw ParseError("matrix row has no series id", r + 1, 1);
        if (cells.size() != header.size())
            throw ParseError("matrix row has " + std::to_string(cells.size() - 1) +
                                 " values but the header has " +
                                 std::to_string(times.size()) + " timepoints",
                             r + 1, cells.size());
        std::vector<double> t, y;
        t.reserve(times.size());
        y.reserve(times.size());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (cells[c].empty()) continue;  // missing observation
            t.push_back(times[c - 1]);
            y.push_back(require_number(cells[c], r + 1, c + 1));
        }
        if (t.size() < 2)
            throw EmptySeries("series '" + cells[0] + "' has fewer than 2 observations (row " +
                              std::to_string(r + 1) + ")");
        out.push_back(Dataset(std::move(t), std::move(y), cells[0]));
    }
    if (out.empty()) throw EmptySeries("matrix file contains no series rows");
    return out;
}
}  // namespace

std::vector<Dataset> read_series_csv(std::istream& in, Layout layout,
                                     const std::string& default_id) {
    const std::vector<std::string> rows = read_rows(in);
    if (layout == Layout::long_format) return read_long(rows, default_id);
    return read_matrix(rows);
}

std::vector<Dataset> read_series_file(const std::string& path, Layout layout) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file '" + path + "'");
    // Default long-layout id: file name without directory and extension.
    std::string stem = path;
    const std::size_t slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const std::size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    return read_series_csv(in, layout, stem);
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

}  // namespace perigp
