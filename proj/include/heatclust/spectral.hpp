#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "heatclust/bandwidth.hpp"
#include "heatclust/errors.hpp"
#include "heatclust/heat.hpp"
#include "heatclust/kernel.hpp"
#include "heatclust/laplacian.hpp"
#include "heatclust/point_cloud.hpp"
#include "heatclust/union_find.hpp"

namespace heatclust {

// Orthonormal basis of the eigenvalue-1 eigenspace of a heat operator.
// Row i holds the eigenvector f_i evaluated at every sample point, so the
// column j is the eigenmap image F(x_j) in R^k. k estimates beta_0.
struct EigenBasis {
    Matrix Psi;  // k x n, rows orthonormal
    Vector eigenvalues;
    double tolerance = 0.0;

    Index k() const { return Psi.rows(); }
    Index n() const { return Psi.cols(); }
};

inline EigenBasis unit_eigenspace(const HeatOperator& H, double tol) {
    if (!(tol > 0.0) || !(tol < 1.0))
        throw std::invalid_argument("unit_eigenspace: tol must lie in (0,1)");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(H.H);
    if (eig.info() != Eigen::Success)
        throw NumericalError("unit_eigenspace: eigendecomposition failed");

    const Index n = H.size();
    Index first = n;  // eigenvalues come back ascending
    while (first > 0 && eig.eigenvalues()(first - 1) >= 1.0 - tol) --first;
    const Index k = n - first;
    if (k == 0)
        throw NoUnitEigenvalue("unit_eigenspace: no eigenvalue within tolerance of 1");

    EigenBasis basis;
    basis.Psi.resize(k, n);
    basis.eigenvalues.resize(k);
    for (Index i = 0; i < k; ++i) {
        // Descending order: the eigenvalue closest to 1 first.
        basis.Psi.row(i) = eig.eigenvectors().col(n - 1 - i).transpose();
        basis.eigenvalues(i) = eig.eigenvalues()(n - 1 - i);
    }
    basis.tolerance = tol;
    return basis;
}

// Result of column-pivoted elimination on Psi. Phi is stored in the original
// column order, so Phi.col(j) is the map image of point j; the recorded
// permutation maps permuted column position -> original point index, and the
// leading k x k block in permuted order is the identity.
struct ClusterMap {
    Matrix Phi;  // k x n, original column order
    std::vector<Index> column_permutation;

    Index k() const { return Phi.rows(); }
    Index n() const { return Phi.cols(); }
};

// Gaussian elimination with column pivoting on the eigenbasis: each round
// swaps the largest-magnitude entry of row i (ties to the smallest column)
// into the pivot position, rescales the row, and clears the pivot column.
// With exact component indicators this sends every point to a standard basis
// vector; with estimation error it lands nearby.
inline ClusterMap modified_gaussian_elimination(const EigenBasis& basis) {
    const Index k = basis.k();
    const Index n = basis.n();
    if (k < 1 || n < k)
        throw std::invalid_argument("modified_gaussian_elimination: need 1 <= k <= n");

    Matrix work = basis.Psi;
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;

    for (Index i = 0; i < k; ++i) {
        Index pivot = i;
        double best = std::abs(work(i, i));
        for (Index j = i + 1; j < n; ++j) {
            const double candidate = std::abs(work(i, j));
            if (candidate > best) {
                best = candidate;
                pivot = j;
            }
        }
        if (best < 1e-12)
            throw DegenerateEigenbasis("modified_gaussian_elimination: pivot below 1e-12");
        if (pivot != i) {
            work.col(i).swap(work.col(pivot));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pivot)]);
        }
        work.row(i) /= work(i, i);
        for (Index row = 0; row < k; ++row) {
            if (row == i) continue;
            work.row(row) -= work(row, i) * work.row(i);
        }
    }

    // Undo the column reordering so labels align with input order.
    ClusterMap map;
    map.Phi.resize(k, n);
    for (Index j = 0; j < n; ++j) map.Phi.col(perm[static_cast<std::size_t>(j)]) = work.col(j);
    map.column_permutation = std::move(perm);
    return map;
}

// Final clustering: beta_0, per-point labels in {1..beta_0}, the distances
// d_i(x) to each standard basis vector, and the selected bandwidth.
struct ClusteringResult {
    Index beta0 = 0;
    std::vector<int> labels;
    Matrix distances;  // n x beta0
    double r_hat = 0.0;
    bool no_elbow_warning = false;
    std::vector<Index> ambiguous_points;
    std::vector<std::string> warnings;
};

// Nearest-basis-vector assignment; ties go to the smallest cluster index and
// near-ties (margin below 1e-6) are recorded as ambiguous.
inline ClusteringResult assign_clusters(const ClusterMap& map) {
    const Index k = map.k();
    const Index n = map.n();
    ClusteringResult result;
    result.beta0 = k;
    result.labels.resize(static_cast<std::size_t>(n));
    result.distances.resize(n, k);

    for (Index j = 0; j < n; ++j) {
        const double base = map.Phi.col(j).squaredNorm();
        Index argmin = 0;
        for (Index i = 0; i < k; ++i) {
            // ||Phi(x_j) - e_i||^2 = ||Phi(x_j)||^2 - 2 Phi(i,j) + 1
            const double squared = std::max(0.0, base - 2.0 * map.Phi(i, j) + 1.0);
            result.distances(j, i) = std::sqrt(squared);
            if (result.distances(j, i) < result.distances(j, argmin)) argmin = i;
        }
        result.labels[static_cast<std::size_t>(j)] = static_cast<int>(argmin) + 1;
        if (k > 1) {
            double runner_up = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < k; ++i)
                if (i != argmin) runner_up = std::min(runner_up, result.distances(j, i));
            if (runner_up - result.distances(j, argmin) < 1e-6) result.ambiguous_points.push_back(j);
        }
    }
    if (!result.ambiguous_points.empty())
        result.warnings.push_back("ambiguous assignment for " +
                                  std::to_string(result.ambiguous_points.size()) + " point(s)");
    return result;
}

// Exact component labels of the graph joining pairs at distance in (0, r],
// numbered by smallest member index. The independent oracle for the
// spectral pipeline.
inline std::vector<int> connected_components_oracle(const DistanceMatrix& dist, double r) {
    if (r < 0.0) throw std::invalid_argument("connected_components_oracle: r must be nonnegative");
    const Index n = dist.size();
    UnionFind uf(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (dist.dist(i, j) > 0.0 && dist.dist(i, j) <= r)
                uf.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return uf.component_labels();
}

struct ClusterConfig {
    KernelFamily family = KernelFamily::row_normalized_ball;
    BandwidthMode mode = BandwidthMode::elbow;
    double fixed_r = 0.0;     // used when mode == fixed
    Index grid_size = 30;     // R
    Index subsamples = 10;    // N
    double fraction = 0.8;
    double t = 1.0;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Full pipeline output, including the intermediates the CLI reports.
struct ClusterRun {
    ClusteringResult result;
    VarianceCurve curve;        // empty in fixed-bandwidth or degenerate runs
    Vector unit_eigenvalues;
    Index r_hat_index = -1;     // 0-based grid index; -1 when no curve
    Matrix phi;                 // k x n eliminated map
};

// The end-to-end clustering pipeline: draw subsamples, evaluate the variance
// curve, select the bandwidth, extract the unit eigenspace of the full-sample
// heat operator, eliminate, and assign clusters.
inline ClusterRun cluster_run(const PointCloud& cloud, const ClusterConfig& config) {
    cloud.validate();
    const DistanceMatrix dist = pairwise_distances(cloud);
    const Index n = cloud.size();

    ClusterRun run;

    if (n == 1 || diameter(dist) == 0.0) {
        // Single point or fully coincident cloud: one cluster by convention.
        run.result.beta0 = 1;
        run.result.labels.assign(static_cast<std::size_t>(n), 1);
        run.result.distances = Matrix::Zero(n, 1);
        run.result.r_hat = 0.0;
        run.result.warnings.push_back("degenerate input: zero-diameter point cloud");
        run.unit_eigenvalues = Vector::Ones(1);
        run.phi = Matrix::Ones(1, n);
        return run;
    }

    KernelSpec spec;
    spec.family = config.family;
    spec.ambient_dim = static_cast<int>(cloud.dim());

    BandwidthSelection selection;
    if (config.mode == BandwidthMode::fixed) {
        selection = select_bandwidth(VarianceCurve{}, BandwidthMode::fixed, config.fixed_r);
    } else {
        const RadiusGrid grid = radius_grid(dist, config.grid_size);
        run.curve = variance_curve(dist, spec, grid, config.t, config.subsamples, config.fraction,
                                   config.seed, config.threads);
        selection = select_bandwidth(run.curve, config.mode);
    }

    const KernelMatrix W = evaluate_kernel_matrix(spec.with_bandwidth(selection.r_hat), dist);
    const LaplacianMatrix L = build_laplacian(W, SubsampleSet::full(n));
    const HeatOperator H = heat_operator(L, config.t);
    const EigenBasis basis = unit_eigenspace(H, config.tol);
    const ClusterMap map = modified_gaussian_elimination(basis);

    run.result = assign_clusters(map);
    run.result.r_hat = selection.r_hat;
    run.result.no_elbow_warning = selection.no_elbow_warning;
    if (selection.no_elbow_warning)
        run.result.warnings.push_back("no interior grid index satisfied the elbow rule; "
                                      "fell back to the smallest interior radius");
    run.unit_eigenvalues = basis.eigenvalues;
    run.r_hat_index = selection.index;
    run.phi = map.Phi;
    return run;
}

inline ClusteringResult cluster(const PointCloud& cloud, const ClusterConfig& config) {
    return cluster_run(cloud, config).result;
}

}  // namespace heatclust
