#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatclust/point_cloud.hpp"

namespace heatclust {

// The two supported compactly supported kernel families.
//
// lebesgue_ball is the literal experimental kernel: constant weight
// 1 / (c_d r^d) inside the radius-r ball, where c_d is the unit-ball volume
// of the ambient dimension. row_normalized_ball replaces the ambient volume
// by a symmetric degree normalization 1/sqrt(deg_i deg_j), which keeps the
// weight matrix well scaled on sampled data. The final clusters depend only
// on the kernel support, so both families induce the same components.
enum class KernelFamily { lebesgue_ball, row_normalized_ball };

inline std::string to_string(KernelFamily family) {
    return family == KernelFamily::lebesgue_ball ? "lebesgue-ball" : "row-normalized-ball";
}

// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be positive");
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

struct KernelSpec {
    KernelFamily family = KernelFamily::row_normalized_ball;
    double r = 1.0;       // support radius, > 0
    int ambient_dim = 3;  // used by the lebesgue-ball normalization

    KernelSpec with_bandwidth(double radius) const {
        KernelSpec spec = *this;
        spec.r = radius;
        return spec;
    }

    void validate() const {
        if (!(r > 0.0)) throw std::invalid_argument("KernelSpec: r must be positive");
        if (ambient_dim < 1) throw std::invalid_argument("KernelSpec: ambient_dim must be >= 1");
    }
};

// Symmetric nonnegative weight matrix W with support exactly the pairs at
// distance in (0, r]. The diagonal is zero: the Laplacian's degree term
// absorbs any self weight.
struct KernelMatrix {
    Matrix W;
    double r = 0.0;

    Index size() const { return W.rows(); }
};

inline KernelMatrix evaluate_kernel_matrix(const KernelSpec& spec, const DistanceMatrix& dist) {
    spec.validate();
    dist.validate();
    const Index n = dist.size();
    const Matrix& d = dist.dist;
    Matrix W = Matrix::Zero(n, n);

    if (spec.family == KernelFamily::lebesgue_ball) {
        const double weight = 1.0 / (unit_ball_volume(spec.ambient_dim) *
                                     std::pow(spec.r, spec.ambient_dim));
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                if (d(i, j) > 0.0 && d(i, j) <= spec.r) {
                    W(i, j) = weight;
                    W(j, i) = weight;
                }
    } else {
        // deg_i counts neighbors within r; the weight on a supported pair is
        // 1/sqrt(deg_i deg_j), symmetric by construction.
        std::vector<Index> deg(static_cast<std::size_t>(n), 0);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (i != j && d(i, j) <= spec.r) ++deg[static_cast<std::size_t>(i)];
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                if (d(i, j) > 0.0 && d(i, j) <= spec.r) {
                    const double w = 1.0 / std::sqrt(static_cast<double>(deg[static_cast<std::size_t>(i)]) *
                                                     static_cast<double>(deg[static_cast<std::size_t>(j)]));
                    W(i, j) = w;
                    W(j, i) = w;
                }
    }
    return KernelMatrix{std::move(W), spec.r};
}

// Diagnostics for the discrete analogs of the kernel axioms: weights are a
// function of distance (within the same normalization context), support
// shrinks with r, and row sums are reported but not required to be 1.
struct KernelAxiomReport {
    bool distance_dependence_ok = false;
    bool support_monotone_ok = false;
    Vector row_sums;
    bool row_sums_unit = false;

    bool passed() const { return distance_dependence_ok && support_monotone_ok; }
};

inline KernelAxiomReport check_kernel_axioms(const KernelSpec& spec, const DistanceMatrix& dist) {
    spec.validate();
    dist.validate();
    const Index n = dist.size();
    const KernelMatrix full = evaluate_kernel_matrix(spec, dist);

    KernelAxiomReport report;

    // Pairs at equal distance and equal normalization context get equal weight.
    report.distance_dependence_ok = true;
    std::vector<Index> deg(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i != j && dist.dist(i, j) <= spec.r) ++deg[static_cast<std::size_t>(i)];
    for (Index i = 0; i < n && report.distance_dependence_ok; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            for (Index k = 0; k < n && report.distance_dependence_ok; ++k) {
                for (Index l = k + 1; l < n; ++l) {
                    if (dist.dist(i, j) != dist.dist(k, l)) continue;
                    const bool same_context =
                        spec.family == KernelFamily::lebesgue_ball ||
                        deg[static_cast<std::size_t>(i)] * deg[static_cast<std::size_t>(j)] ==
                            deg[static_cast<std::size_t>(k)] * deg[static_cast<std::size_t>(l)];
                    if (same_context && full.W(i, j) != full.W(k, l)) {
                        report.distance_dependence_ok = false;
                        break;
                    }
                }
            }
        }
    }

    // Support shrinks monotonically as r decreases.
    report.support_monotone_ok = true;
    for (double fraction : {0.25, 0.5, 0.75}) {
        const KernelMatrix smaller = evaluate_kernel_matrix(spec.with_bandwidth(fraction * spec.r), dist);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (smaller.W(i, j) > 0.0 && full.W(i, j) == 0.0) report.support_monotone_ok = false;
    }

    report.row_sums = full.W.rowwise().sum();
    report.row_sums_unit = ((report.row_sums.array() - 1.0).abs() < 1e-9).all();
    return report;
}

}  // namespace heatclust
