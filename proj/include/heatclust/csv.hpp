#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "heatclust/bandwidth.hpp"
#include "heatclust/errors.hpp"
#include "heatclust/point_cloud.hpp"

namespace heatclust {

namespace detail {

// Shortest round-trip decimal representation.
inline std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view field, std::size_t line_number) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw CsvError(line_number, "expected a decimal number, got '" + std::string(field) + "'");
    return value;
}

inline long parse_long(std::string_view field, std::size_t line_number) {
    field = trim(field);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw CsvError(line_number, "expected an integer, got '" + std::string(field) + "'");
    return value;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return in;
}

}  // namespace detail

// Point-cloud CSV: one point per line, d comma-separated decimal floats.
inline void write_point_cloud_csv(const PointCloud& cloud, const std::string& path) {
    std::ofstream out = detail::open_output(path);
    for (Index i = 0; i < cloud.size(); ++i) {
        for (Index j = 0; j < cloud.dim(); ++j) {
            if (j > 0) out << ',';
            out << detail::format_double(cloud.coords(i, j));
        }
        out << '\n';
    }
}

inline PointCloud read_point_cloud_csv(const std::string& path, bool skip_header = false) {
    std::ifstream in = detail::open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_number = 0;
    Index dim = -1;
    while (std::getline(in, line)) {
        ++line_number;
        if (skip_header && line_number == 1) continue;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(detail::trim(line));
        if (dim < 0) dim = static_cast<Index>(fields.size());
        if (static_cast<Index>(fields.size()) != dim)
            throw CsvError(line_number, "expected " + std::to_string(dim) + " columns, got " +
                                            std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& field : fields) row.push_back(detail::parse_double(field, line_number));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw CsvError(line_number + 1, "no data rows in '" + path + "'");

    Matrix coords(static_cast<Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Index j = 0; j < dim; ++j) coords(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    PointCloud cloud{std::move(coords)};
    cloud.validate();
    return cloud;
}

// Labels CSV: `index,label` lines with 0-based point index.
inline void write_labels_csv(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out = detail::open_output(path);
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

inline std::vector<int> read_labels_csv(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    std::vector<int> labels;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(detail::trim(line));
        if (fields.size() != 2) throw CsvError(line_number, "expected 'index,label'");
        const long index = detail::parse_long(fields[0], line_number);
        const long label = detail::parse_long(fields[1], line_number);
        if (index != static_cast<long>(labels.size()))
            throw CsvError(line_number, "indices must be 0-based and consecutive");
        labels.push_back(static_cast<int>(label));
    }
    if (labels.empty()) throw CsvError(line_number + 1, "no data rows in '" + path + "'");
    return labels;
}

// Variance-curve CSV with header `r,v_hat`, full decimal precision.
inline void write_curve_csv(const VarianceCurve& curve, const std::string& path) {
    std::ofstream out = detail::open_output(path);
    out << "r,v_hat\n";
    for (std::size_t k = 0; k < curve.values.size(); ++k)
        out << detail::format_double(curve.grid.radii[k]) << ','
            << detail::format_double(curve.values[k]) << '\n';
}

struct CurveData {
    std::vector<double> radii;
    std::vector<double> values;
};

inline CurveData read_curve_csv(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    CurveData data;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line_number == 1) {
            if (detail::trim(line) != "r,v_hat") throw CsvError(1, "expected header 'r,v_hat'");
            continue;
        }
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(detail::trim(line));
        if (fields.size() != 2) throw CsvError(line_number, "expected 'r,v_hat'");
        data.radii.push_back(detail::parse_double(fields[0], line_number));
        data.values.push_back(detail::parse_double(fields[1], line_number));
    }
    if (data.radii.empty()) throw CsvError(line_number + 1, "no data rows in '" + path + "'");
    return data;
}

// Eliminated eigenmap values: one point per line, k comma-separated floats.
inline void write_phi_csv(const Matrix& phi, const std::string& path) {
    std::ofstream out = detail::open_output(path);
    for (Index j = 0; j < phi.cols(); ++j) {
        for (Index i = 0; i < phi.rows(); ++i) {
            if (i > 0) out << ',';
            out << detail::format_double(phi(i, j));
        }
        out << '\n';
    }
}

}  // namespace heatclust
