#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "heatclust/rng.hpp"

namespace heatclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// n sample points in d-dimensional Euclidean space, one per row.
struct PointCloud {
    Matrix coords;

    Index size() const { return coords.rows(); }
    Index dim() const { return coords.cols(); }

    void validate() const {
        if (coords.rows() < 1 || coords.cols() < 1)
            throw std::invalid_argument("PointCloud: need n >= 1 points and d >= 1 dimensions");
        if (!coords.allFinite())
            throw std::invalid_argument("PointCloud: coordinates must be finite");
    }
};

// Symmetric n x n matrix of pairwise Euclidean distances, zero diagonal.
struct DistanceMatrix {
    Matrix dist;

    Index size() const { return dist.rows(); }

    void validate() const {
        if (dist.rows() != dist.cols() || dist.rows() < 1)
            throw std::invalid_argument("DistanceMatrix: must be square and nonempty");
        if (!dist.allFinite() || (dist.array() < 0.0).any())
            throw std::invalid_argument("DistanceMatrix: entries must be finite and nonnegative");
    }
};

// Sorted subset of point indices, the active set S' of a subsample.
struct SubsampleSet {
    std::vector<Index> indices;  // strictly increasing
    Index parent_size = 0;

    Index size() const { return static_cast<Index>(indices.size()); }

    bool contains(Index i) const {
        return std::binary_search(indices.begin(), indices.end(), i);
    }

    static SubsampleSet full(Index n) {
        SubsampleSet s;
        s.parent_size = n;
        s.indices.resize(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) s.indices[static_cast<std::size_t>(i)] = i;
        return s;
    }

    void validate() const {
        if (indices.empty()) throw std::invalid_argument("SubsampleSet: must be nonempty");
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] < 0 || indices[k] >= parent_size)
                throw std::invalid_argument("SubsampleSet: index out of range");
            if (k > 0 && indices[k] <= indices[k - 1])
                throw std::invalid_argument("SubsampleSet: indices must be strictly increasing");
        }
    }
};

// Point cloud plus ground-truth labels in {1..k}, for validating clusterings.
struct LabeledPointCloud {
    PointCloud cloud;
    std::vector<int> truth_labels;

    void validate() const {
        cloud.validate();
        if (static_cast<Index>(truth_labels.size()) != cloud.size())
            throw std::invalid_argument("LabeledPointCloud: label count must equal point count");
        const int k = *std::max_element(truth_labels.begin(), truth_labels.end());
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        for (int label : truth_labels) {
            if (label < 1 || label > k)
                throw std::invalid_argument("LabeledPointCloud: labels must lie in {1..k}");
            seen[static_cast<std::size_t>(label - 1)] = true;
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
            throw std::invalid_argument("LabeledPointCloud: every label class must be nonempty");
    }
};

inline DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    cloud.validate();
    const Index n = cloud.size();
    Matrix dist = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double d = (cloud.coords.row(i) - cloud.coords.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return DistanceMatrix{std::move(dist)};
}

// Largest pairwise distance; the r_max of the radius grid.
inline double diameter(const DistanceMatrix& dist) {
    dist.validate();
    return dist.dist.maxCoeff();
}

// Uniform subset without replacement of size round(fraction * n), at least 1.
inline SubsampleSet subsample(Index n, double fraction, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("subsample: n must be positive");
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw std::invalid_argument("subsample: fraction must lie in (0,1)");
    const Index m = std::max<Index>(1, static_cast<Index>(std::llround(fraction * static_cast<double>(n))));

    Rng rng(seed);
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    // Partial Fisher-Yates: the first m entries are the sample.
    for (Index i = 0; i < m; ++i) {
        const auto j = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(m));
    std::sort(pool.begin(), pool.end());

    SubsampleSet out;
    out.indices = std::move(pool);
    out.parent_size = n;
    return out;
}

}  // namespace heatclust
