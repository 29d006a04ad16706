#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "heatclust/point_cloud.hpp"
#include "heatclust/rng.hpp"

namespace heatclust {

namespace detail {

// Point on the small circle of radius 0.5 whose center sits at angle `alpha`
// on the horizontal unit circle. The small circle is the torus meridian
// through that center (the plane containing the z-axis and the center), so
// every point of it is at Euclidean distance exactly 0.5 from the unit circle.
inline Eigen::Vector3d small_circle_point(double alpha, double phi) {
    const double rho = 1.0 + 0.5 * std::cos(phi);
    return {rho * std::cos(alpha), rho * std::sin(alpha), 0.5 * std::sin(phi)};
}

inline Eigen::Vector3d big_circle_point(double theta) {
    return {std::cos(theta), std::sin(theta), 0.0};
}

// Minimum distance between the two meridian circles at center angles a, b,
// scanned over a dense parameter grid (exact enough for the redraw rule).
inline double small_circle_separation(double a, double b) {
    constexpr int kGrid = 256;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double phi1 = 2.0 * std::numbers::pi * i / kGrid;
        const Eigen::Vector3d p = small_circle_point(a, phi1);
        for (int j = 0; j < kGrid; ++j) {
            const double phi2 = 2.0 * std::numbers::pi * j / kGrid;
            best = std::min(best, (p - small_circle_point(b, phi2)).norm());
        }
    }
    return best;
}

}  // namespace detail

// The three-circles benchmark: a horizontal unit circle plus two circles of
// radius 0.5 centered on random points of it, embedded in R^3 with isotropic
// Gaussian coordinate noise. The two small centers are redrawn until the
// small circles are at least 0.3 apart, which keeps the three components
// separated under the default noise level. Points are split as evenly as
// possible, with the n mod 3 extras on the big circle. Labels: 1 = big
// circle, 2 and 3 = small circles.
inline LabeledPointCloud generate_three_circles(Index n, double sigma, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("generate_three_circles: need n >= 3");
    if (sigma < 0.0) throw std::invalid_argument("generate_three_circles: sigma must be nonnegative");

    Rng rng(seed);
    const double alpha1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double alpha2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    while (detail::small_circle_separation(alpha1, alpha2) < 0.3)
        alpha2 = rng.uniform(0.0, 2.0 * std::numbers::pi);

    const Index base = n / 3;
    const Index counts[3] = {base + n % 3, base, base};

    Matrix coords(n, 3);
    std::vector<int> labels(static_cast<std::size_t>(n));
    Index row = 0;
    for (int circle = 0; circle < 3; ++circle) {
        for (Index i = 0; i < counts[circle]; ++i, ++row) {
            const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            Eigen::Vector3d p;
            switch (circle) {
                case 0: p = detail::big_circle_point(theta); break;
                case 1: p = detail::small_circle_point(alpha1, theta); break;
                default: p = detail::small_circle_point(alpha2, theta); break;
            }
            for (int c = 0; c < 3; ++c) p[c] += sigma * rng.normal();
            coords.row(row) = p;
            labels[static_cast<std::size_t>(row)] = circle + 1;
        }
    }
    return LabeledPointCloud{PointCloud{std::move(coords)}, std::move(labels)};
}

// Two isotropic Gaussian blobs in R^3 with centers 10 apart; labels 1 and 2.
inline LabeledPointCloud generate_blobs(Index n, double sigma, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_blobs: need n >= 2");
    if (sigma < 0.0) throw std::invalid_argument("generate_blobs: sigma must be nonnegative");

    Rng rng(seed);
    const Index n1 = n - n / 2;
    Matrix coords(n, 3);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const bool second = i >= n1;
        coords(i, 0) = (second ? 10.0 : 0.0) + sigma * rng.normal();
        coords(i, 1) = sigma * rng.normal();
        coords(i, 2) = sigma * rng.normal();
        labels[static_cast<std::size_t>(i)] = second ? 2 : 1;
    }
    return LabeledPointCloud{PointCloud{std::move(coords)}, std::move(labels)};
}

// Two unit circles in the z = 0 plane, centers (0,0,0) and (3,0,0); the gap
// between the curves is 1. Labels 1 and 2.
inline LabeledPointCloud generate_two_circles(Index n, double sigma, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_two_circles: need n >= 2");
    if (sigma < 0.0) throw std::invalid_argument("generate_two_circles: sigma must be nonnegative");

    Rng rng(seed);
    const Index n1 = n - n / 2;
    Matrix coords(n, 3);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const bool second = i >= n1;
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        coords(i, 0) = (second ? 3.0 : 0.0) + std::cos(theta) + sigma * rng.normal();
        coords(i, 1) = std::sin(theta) + sigma * rng.normal();
        coords(i, 2) = sigma * rng.normal();
        labels[static_cast<std::size_t>(i)] = second ? 2 : 1;
    }
    return LabeledPointCloud{PointCloud{std::move(coords)}, std::move(labels)};
}

inline LabeledPointCloud generate_dataset(const std::string& family, Index n, double sigma,
                                          std::uint64_t seed) {
    if (family == "three-circles") return generate_three_circles(n, sigma, seed);
    if (family == "blobs") return generate_blobs(n, sigma, seed);
    if (family == "two-circles") return generate_two_circles(n, sigma, seed);
    throw std::invalid_argument("unknown dataset family: " + family);
}

}  // namespace heatclust
