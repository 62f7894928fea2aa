#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "qssy/errors.hpp"
#include "qssy/matrix.hpp"

namespace qssy {

namespace detail {

inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

} // namespace detail

// Matrix Market reader for real or integer fields, coordinate or array layout,
// general, symmetric or skew-symmetric storage.
inline RealSparse read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw parse_error(1, "empty input");
    ++lineno;
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw parse_error(lineno, "missing %%MatrixMarket banner");
    object = detail::lowercase(object);
    format = detail::lowercase(format);
    field = detail::lowercase(field);
    symmetry = detail::lowercase(symmetry);
    if (object != "matrix") throw parse_error(lineno, "unsupported object '" + object + "'");
    if (format != "coordinate" && format != "array") throw parse_error(lineno, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer" && field != "double")
        throw parse_error(lineno, "unsupported field '" + field + "' (only real and integer are accepted)");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw parse_error(lineno, "unsupported symmetry '" + symmetry + "'");
    const bool mirrored = symmetry != "general";
    const double mirror_sign = symmetry == "skew-symmetric" ? -1.0 : 1.0;

    auto next_data_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            const auto first = out.find_first_not_of(" \t\r");
            if (first == std::string::npos || out[first] == '%') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line(line)) throw parse_error(lineno, "missing size line");
    std::istringstream ss(line);
    std::size_t rows = 0, cols = 0, entries = 0;
    if (format == "coordinate") {
        if (!(ss >> rows >> cols >> entries)) throw parse_error(lineno, "expected 'rows cols entries'");
    } else {
        if (!(ss >> rows >> cols)) throw parse_error(lineno, "expected 'rows cols'");
    }
    if (mirrored && rows != cols) throw parse_error(lineno, "symmetric storage requires a square matrix");

    std::vector<Triplet> t;
    auto add = [&](std::size_t i, std::size_t j, double v) {
        t.push_back({i, j, v});
        if (mirrored && i != j) t.push_back({j, i, mirror_sign * v});
    };

    if (format == "coordinate") {
        t.reserve(mirrored ? 2 * entries : entries);
        for (std::size_t k = 0; k < entries; ++k) {
            if (!next_data_line(line)) throw parse_error(lineno, "expected " + std::to_string(entries) + " entries, got " + std::to_string(k));
            std::istringstream es(line);
            std::size_t i = 0, j = 0;
            double v = 0.0;
            if (!(es >> i >> j >> v)) throw parse_error(lineno, "expected 'row col value'");
            if (i < 1 || i > rows || j < 1 || j > cols) throw parse_error(lineno, "index out of range");
            add(i - 1, j - 1, v);
        }
    } else {
        // Column-major values; symmetric variants store the lower triangle only.
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = mirrored ? j + (symmetry == "skew-symmetric" ? 1 : 0) : 0; i < rows; ++i) {
                if (!next_data_line(line)) throw parse_error(lineno, "array data ended early");
                std::istringstream es(line);
                double v = 0.0;
                if (!(es >> v)) throw parse_error(lineno, "expected a value");
                if (v != 0.0) add(i, j, v);
            }
    }
    return RealSparse::from_triplets(rows, cols, std::move(t));
}

inline RealSparse load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open Matrix Market file '" + path + "'");
    return read_matrix_market(in);
}

} // namespace qssy
