#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "heatclust/csv.hpp"
#include "heatclust/point_cloud.hpp"

namespace heatclust {

namespace detail {

constexpr int kSvgWidth = 640;
constexpr int kSvgHeight = 480;
constexpr double kSvgMargin = 56.0;

// Red, green, blue first, matching the reference figures; then a fallback
// cycle for larger cluster counts.
inline const std::array<const char*, 8>& svg_palette() {
    static const std::array<const char*, 8> palette = {
        "#e41a1c", "#4daf4a", "#377eb8", "#ff7f00",
        "#984ea3", "#a65628", "#f781bf", "#999999"};
    return palette;
}

inline std::string svg_coord(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3f", value);
    return buffer;
}

struct SvgAxis {
    double lo = 0.0;
    double hi = 1.0;
    double to_px(double v, double px_lo, double px_hi) const {
        const double span = hi - lo;
        const double unit = span > 0.0 ? (v - lo) / span : 0.5;
        return px_lo + unit * (px_hi - px_lo);
    }
};

// Orthographic projection of a 3D point for the given view angles (degrees).
inline std::pair<double, double> project_ortho(double x, double y, double z, double azimuth,
                                               double elevation) {
    const double az = azimuth * std::numbers::pi / 180.0;
    const double el = elevation * std::numbers::pi / 180.0;
    const double u = -std::sin(az) * x + std::cos(az) * y;
    const double v = -std::sin(el) * std::cos(az) * x - std::sin(el) * std::sin(az) * y +
                     std::cos(el) * z;
    return {u, v};
}

inline std::string svg_header(const std::string& title) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\""
        << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kSvgWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    return out.str();
}

}  // namespace detail

// Variance curve as a polyline (one vertex per grid point) with an optional
// marker and dashed guide at the selected bandwidth.
inline std::string render_curve_svg(const CurveData& curve, double r_hat = -1.0) {
    using namespace detail;
    if (curve.radii.empty() || curve.radii.size() != curve.values.size())
        throw std::invalid_argument("render_curve_svg: empty or mismatched curve");

    SvgAxis x{*std::min_element(curve.radii.begin(), curve.radii.end()),
              *std::max_element(curve.radii.begin(), curve.radii.end())};
    SvgAxis y{*std::min_element(curve.values.begin(), curve.values.end()),
              *std::max_element(curve.values.begin(), curve.values.end())};
    const double px_left = kSvgMargin, px_right = kSvgWidth - kSvgMargin;
    const double px_bottom = kSvgHeight - kSvgMargin, px_top = kSvgMargin;

    std::ostringstream out;
    out << svg_header("Variance estimate");
    out << "<line x1=\"" << px_left << "\" y1=\"" << px_bottom << "\" x2=\"" << px_right
        << "\" y2=\"" << px_bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px_left << "\" y1=\"" << px_bottom << "\" x2=\"" << px_left
        << "\" y2=\"" << px_top << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (px_left + px_right) / 2 << "\" y=\"" << kSvgHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">r</text>\n";
    out << "<text x=\"18\" y=\"" << (px_top + px_bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << (px_top + px_bottom) / 2 << ")\">v_hat</text>\n";
    for (const bool at_max : {false, true}) {
        const double rv = at_max ? x.hi : x.lo;
        const double vx = x.to_px(rv, px_left, px_right);
        out << "<text x=\"" << svg_coord(vx) << "\" y=\"" << px_bottom + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << svg_coord(rv) << "</text>\n";
        const double vv = at_max ? y.hi : y.lo;
        const double vy = y.to_px(vv, px_bottom, px_top);
        out << "<text x=\"" << px_left - 6 << "\" y=\"" << svg_coord(vy + 3)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << svg_coord(vv) << "</text>\n";
    }

    out << "<polyline class=\"curve\" fill=\"none\" stroke=\"#377eb8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < curve.radii.size(); ++k) {
        if (k > 0) out << ' ';
        out << svg_coord(x.to_px(curve.radii[k], px_left, px_right)) << ','
            << svg_coord(y.to_px(curve.values[k], px_bottom, px_top));
    }
    out << "\"/>\n";

    if (r_hat >= x.lo && r_hat <= x.hi) {
        // Marker sits on the curve at the grid point nearest the selection.
        std::size_t nearest = 0;
        for (std::size_t k = 1; k < curve.radii.size(); ++k)
            if (std::abs(curve.radii[k] - r_hat) < std::abs(curve.radii[nearest] - r_hat)) nearest = k;
        const double mx = x.to_px(curve.radii[nearest], px_left, px_right);
        const double my = y.to_px(curve.values[nearest], px_bottom, px_top);
        out << "<line x1=\"" << svg_coord(mx) << "\" y1=\"" << px_bottom << "\" x2=\"" << svg_coord(mx)
            << "\" y2=\"" << px_top << "\" stroke=\"#e41a1c\" stroke-dasharray=\"4 3\"/>\n";
        out << "<circle class=\"rhat-marker\" cx=\"" << svg_coord(mx) << "\" cy=\"" << svg_coord(my)
            << "\" r=\"5\" fill=\"#e41a1c\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

// Scatter plot of up to-3D data under a fixed orthographic projection,
// colored by 1-based labels (all one color if labels are empty).
inline std::string render_scatter_svg(const Matrix& coords, const std::vector<int>& labels,
                                      const std::string& title, double azimuth = 30.0,
                                      double elevation = 20.0) {
    using namespace detail;
    const Index n = coords.rows();
    if (n < 1) throw std::invalid_argument("render_scatter_svg: no points");
    if (!labels.empty() && static_cast<Index>(labels.size()) != n)
        throw std::invalid_argument("render_scatter_svg: label count mismatch");

    std::vector<std::pair<double, double>> projected(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const double x = coords.cols() > 0 ? coords(i, 0) : 0.0;
        const double y = coords.cols() > 1 ? coords(i, 1) : 0.0;
        const double z = coords.cols() > 2 ? coords(i, 2) : 0.0;
        projected[static_cast<std::size_t>(i)] = project_ortho(x, y, z, azimuth, elevation);
    }

    SvgAxis x, y;
    x.lo = x.hi = projected[0].first;
    y.lo = y.hi = projected[0].second;
    for (const auto& [px, py] : projected) {
        x.lo = std::min(x.lo, px), x.hi = std::max(x.hi, px);
        y.lo = std::min(y.lo, py), y.hi = std::max(y.hi, py);
    }
    // Equal scale on both axes so shapes are not distorted.
    const double span = std::max({x.hi - x.lo, y.hi - y.lo, 1e-12});
    const double cx = (x.lo + x.hi) / 2, cy = (y.lo + y.hi) / 2;
    x.lo = cx - span / 2, x.hi = cx + span / 2;
    y.lo = cy - span / 2, y.hi = cy + span / 2;

    const double px_left = kSvgMargin, px_right = kSvgWidth - kSvgMargin;
    const double px_bottom = kSvgHeight - kSvgMargin, px_top = kSvgMargin;

    std::ostringstream out;
    out << svg_header(title);
    for (Index i = 0; i < n; ++i) {
        const auto& [px, py] = projected[static_cast<std::size_t>(i)];
        const char* color = svg_palette()[0];
        if (!labels.empty()) {
            const int label = labels[static_cast<std::size_t>(i)];
            color = svg_palette()[static_cast<std::size_t>((label - 1) % static_cast<int>(svg_palette().size()))];
        }
        out << "<circle class=\"pt\" cx=\"" << svg_coord(x.to_px(px, px_left, px_right))
            << "\" cy=\"" << svg_coord(y.to_px(py, px_bottom, px_top)) << "\" r=\"3\" fill=\""
            << color << "\" fill-opacity=\"0.8\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace heatclust
