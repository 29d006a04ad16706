#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "heatclust/datasets.hpp"
#include "heatclust/spectral.hpp"
#include "test_oracles.hpp"

using namespace heatclust;

namespace {

PointCloud random_cloud(Index n, Index d, std::uint64_t seed, double scale = 2.0) {
    Rng rng(seed);
    Matrix coords(n, d);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) coords(i, j) = rng.uniform(-scale, scale);
    return PointCloud{coords};
}

HeatOperator heat_at(const DistanceMatrix& dist, double r, double t = 1.0) {
    const KernelSpec spec{KernelFamily::row_normalized_ball, r,
                          static_cast<int>(std::max<Index>(1, dist.size() > 0 ? 2 : 1))};
    const KernelMatrix W = evaluate_kernel_matrix(spec, dist);
    return heat_operator(build_laplacian(W, SubsampleSet::full(dist.size())), t);
}

// Normalized indicator rows for the given component sizes.
EigenBasis indicator_basis(const std::vector<Index>& sizes) {
    Index n = 0;
    for (Index s : sizes) n += s;
    EigenBasis basis;
    basis.Psi = Matrix::Zero(static_cast<Index>(sizes.size()), n);
    Index offset = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        for (Index j = 0; j < sizes[c]; ++j)
            basis.Psi(static_cast<Index>(c), offset + j) = 1.0 / std::sqrt(static_cast<double>(sizes[c]));
        offset += sizes[c];
    }
    basis.eigenvalues = Vector::Ones(static_cast<Index>(sizes.size()));
    basis.tolerance = 1e-6;
    return basis;
}

// Random invertible k x k mixing with condition number at most `cond`.
Matrix random_mixing(Index k, double cond, Rng& rng) {
    auto random_orthogonal = [&] {
        Matrix A(k, k);
        for (Index i = 0; i < k; ++i)
            for (Index j = 0; j < k; ++j) A(i, j) = rng.normal();
        return Eigen::HouseholderQR<Matrix>(A).householderQ() * Matrix::Identity(k, k);
    };
    Vector singular(k);
    for (Index i = 0; i < k; ++i) singular(i) = rng.uniform(1.0, cond);
    singular(0) = 1.0;
    if (k > 1) singular(k - 1) = cond;
    return random_orthogonal() * singular.asDiagonal() * random_orthogonal();
}

std::vector<int> spectral_labels_at(const DistanceMatrix& dist, double r) {
    const EigenBasis basis = unit_eigenspace(heat_at(dist, r), 1e-6);
    return assign_clusters(modified_gaussian_elimination(basis)).labels;
}

}  // namespace

TEST_CASE("unit eigenspace: identity operator yields n singleton components", "[spectral]") {
    const Index n = 7;
    HeatOperator H;
    H.H = Matrix::Identity(n, n);
    H.t = 1.0;
    const EigenBasis basis = unit_eigenspace(H, 1e-6);
    REQUIRE(basis.k() == n);
    for (Index i = 0; i < n; ++i) REQUIRE(basis.eigenvalues(i) == Catch::Approx(1.0));

    const std::vector<int> labels = assign_clusters(modified_gaussian_elimination(basis)).labels;
    const std::set<int> distinct(labels.begin(), labels.end());
    REQUIRE(distinct.size() == static_cast<std::size_t>(n));
}

TEST_CASE("unit eigenspace: two 3-cliques give k = 2 spanning the block indicators", "[spectral]") {
    Matrix W = Matrix::Zero(6, 6);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
            if (i != j) {
                W(i, j) = 0.4;
                W(i + 3, j + 3) = 0.6;
            }
    const HeatOperator H = heat_operator(build_laplacian(KernelMatrix{W, 1.0}, SubsampleSet::full(6)), 1.0);
    const EigenBasis basis = unit_eigenspace(H, 1e-6);
    REQUIRE(basis.k() == 2);

    // Rows are orthonormal and constant on each block.
    REQUIRE((basis.Psi * basis.Psi.transpose() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    for (Index row = 0; row < 2; ++row) {
        for (Index j = 1; j < 3; ++j) {
            REQUIRE(basis.Psi(row, j) == Catch::Approx(basis.Psi(row, 0)).margin(1e-10));
            REQUIRE(basis.Psi(row, 3 + j) == Catch::Approx(basis.Psi(row, 3)).margin(1e-10));
        }
    }
}

TEST_CASE("unit eigenspace input validation", "[spectral]") {
    HeatOperator H;
    H.H = 0.5 * Matrix::Identity(3, 3);  // not a real heat operator
    REQUIRE_THROWS_AS(unit_eigenspace(H, 1e-6), NoUnitEigenvalue);

    H.H = Matrix::Identity(3, 3);
    REQUIRE_THROWS_AS(unit_eigenspace(H, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(unit_eigenspace(H, 1.0), std::invalid_argument);
}

TEST_CASE("elimination: exact indicators map every point to a basis vector", "[spectral]") {
    const EigenBasis basis = indicator_basis({3, 4});
    const ClusterMap map = modified_gaussian_elimination(basis);
    for (Index j = 0; j < 7; ++j) {
        const Index component = j < 3 ? 0 : 1;
        for (Index i = 0; i < 2; ++i)
            REQUIRE(map.Phi(i, j) == Catch::Approx(i == component ? 1.0 : 0.0).margin(1e-12));
    }

    // Permuted leading block is the identity.
    Matrix permuted(2, 7);
    for (Index c = 0; c < 7; ++c)
        permuted.col(c) = map.Phi.col(map.column_permutation[static_cast<std::size_t>(c)]);
    REQUIRE((permuted.leftCols(2) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("elimination: mixing the indicator rows changes nothing", "[spectral]") {
    Rng rng(101);
    const EigenBasis plain = indicator_basis({4, 5});
    const ClusterMap unmixed = modified_gaussian_elimination(plain);
    const std::vector<int> labels_unmixed = assign_clusters(unmixed).labels;

    for (int trial = 0; trial < 10; ++trial) {
        EigenBasis mixed = plain;
        mixed.Psi = random_mixing(2, 50.0, rng) * plain.Psi;
        const ClusterMap map = modified_gaussian_elimination(mixed);
        REQUIRE((map.Phi - unmixed.Phi).cwiseAbs().maxCoeff() < 1e-8);
        REQUIRE(oracle::same_partition(assign_clusters(map).labels, labels_unmixed));
    }
}

TEST_CASE("elimination: k = 1 constant row gives the all-ones map", "[spectral]") {
    EigenBasis basis;
    basis.Psi = Matrix::Constant(1, 5, 1.0 / std::sqrt(5.0));
    basis.eigenvalues = Vector::Ones(1);
    basis.tolerance = 1e-6;
    const ClusterMap map = modified_gaussian_elimination(basis);
    for (Index j = 0; j < 5; ++j) REQUIRE(map.Phi(0, j) == Catch::Approx(1.0).margin(1e-12));

    const ClusteringResult result = assign_clusters(map);
    REQUIRE(result.beta0 == 1);
    REQUIRE(result.labels == std::vector<int>(5, 1));
}

TEST_CASE("elimination rejects a degenerate eigenbasis", "[spectral]") {
    EigenBasis basis;
    basis.Psi = Matrix::Zero(2, 4);
    basis.Psi.row(0) = Matrix::Constant(1, 4, 0.5);
    basis.Psi.row(1) = basis.Psi.row(0);  // rank 1
    basis.eigenvalues = Vector::Ones(2);
    REQUIRE_THROWS_AS(modified_gaussian_elimination(basis), DegenerateEigenbasis);
}

TEST_CASE("assignment: exact basis vector and tie-break behavior", "[spectral]") {
    ClusterMap map;
    map.Phi = Matrix::Zero(3, 2);
    map.Phi(1, 0) = 1.0;             // point 0 exactly at e_2
    map.Phi.col(1) << 0.5, 0.5, 0.0;  // point 1 equidistant from e_1 and e_2
    map.column_permutation = {0, 1};

    const ClusteringResult result = assign_clusters(map);
    REQUIRE(result.labels[0] == 2);
    REQUIRE(result.distances(0, 1) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(result.distances(0, 0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(result.distances(0, 2) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));

    REQUIRE(result.labels[1] == 1);  // tie broken toward the smallest index
    REQUIRE(std::find(result.ambiguous_points.begin(), result.ambiguous_points.end(), 1) !=
            result.ambiguous_points.end());
    REQUIRE_FALSE(result.warnings.empty());

    // labels agree with the per-point argmin of the distances matrix
    for (Index j = 0; j < 2; ++j) {
        Index argmin = 0;
        for (Index i = 1; i < 3; ++i)
            if (result.distances(j, i) < result.distances(j, argmin)) argmin = i;
        REQUIRE(result.labels[static_cast<std::size_t>(j)] == static_cast<int>(argmin) + 1);
    }
}

TEST_CASE("connected components oracle: trivial radii", "[spectral]") {
    Matrix coords(4, 1);
    coords << 0.0, 1.0, 2.0, 10.0;
    const DistanceMatrix dist = pairwise_distances(PointCloud{coords});

    const std::vector<int> singletons = connected_components_oracle(dist, 0.0);
    REQUIRE(singletons == std::vector<int>{1, 2, 3, 4});

    const std::vector<int> merged = connected_components_oracle(dist, diameter(dist));
    REQUIRE(merged == std::vector<int>(4, 1));

    const std::vector<int> split = connected_components_oracle(dist, 1.5);
    REQUIRE(split == std::vector<int>{1, 1, 1, 2});
}

TEST_CASE("connected components oracle agrees with BFS on random instances", "[spectral]") {
    Rng rng(103);
    for (int instance = 0; instance < 30; ++instance) {
        const Index n = 2 + static_cast<Index>(rng.uniform_index(40));
        const DistanceMatrix dist = pairwise_distances(random_cloud(n, 2, rng.next_u64()));
        const double r = rng.uniform(0.0, 4.0);
        REQUIRE(connected_components_oracle(dist, r) == oracle::bfs_components(dist.dist, r));
    }
}

TEST_CASE("oracle equivalence: spectral labels equal union-find components", "[spectral]") {
    Rng rng(107);
    for (int instance = 0; instance < 40; ++instance) {
        const Index n = 2 + static_cast<Index>(rng.uniform_index(59));
        const Index d = 1 + static_cast<Index>(rng.uniform_index(3));
        const DistanceMatrix dist = pairwise_distances(random_cloud(n, d, rng.next_u64()));
        const double r = rng.uniform(0.05, diameter(dist) * 1.05);

        const std::vector<int> spectral = spectral_labels_at(dist, r);
        const std::vector<int> expected = connected_components_oracle(dist, r);
        INFO("n=" << n << " d=" << d << " r=" << r);
        REQUIRE(oracle::same_partition(spectral, expected));
    }
}

TEST_CASE("Proposition 1 (graph form): eigenmap image has exactly beta0 points", "[spectral]") {
    Rng rng(109);
    for (int instance = 0; instance < 15; ++instance) {
        const Index n = 6 + static_cast<Index>(rng.uniform_index(40));
        const DistanceMatrix dist = pairwise_distances(random_cloud(n, 2, rng.next_u64(), 4.0));
        const double r = rng.uniform(0.3, 2.0);

        const std::vector<int> components = connected_components_oracle(dist, r);
        const int beta0 = *std::max_element(components.begin(), components.end());

        const EigenBasis basis = unit_eigenspace(heat_at(dist, r), 1e-6);
        REQUIRE(basis.k() == beta0);

        // Intra-component spread below 1e-8, inter-component distance above 1e-6.
        for (int c = 1; c <= beta0; ++c) {
            Index representative = -1;
            for (Index j = 0; j < n; ++j) {
                if (components[static_cast<std::size_t>(j)] != c) continue;
                if (representative < 0) representative = j;
                REQUIRE((basis.Psi.col(j) - basis.Psi.col(representative)).norm() < 1e-8);
            }
        }
        for (Index a = 0; a < n; ++a)
            for (Index b = a + 1; b < n; ++b)
                if (components[static_cast<std::size_t>(a)] != components[static_cast<std::size_t>(b)])
                    REQUIRE((basis.Psi.col(a) - basis.Psi.col(b)).norm() > 1e-6);
    }
}

TEST_CASE("basis invariance: well-conditioned mixing leaves labels unchanged", "[spectral]") {
    Rng rng(113);
    for (int instance = 0; instance < 15; ++instance) {
        const Index n = 10 + static_cast<Index>(rng.uniform_index(30));
        const DistanceMatrix dist = pairwise_distances(random_cloud(n, 2, rng.next_u64(), 4.0));
        const double r = rng.uniform(0.4, 1.5);

        const EigenBasis basis = unit_eigenspace(heat_at(dist, r), 1e-6);
        const ClusterMap map = modified_gaussian_elimination(basis);
        const std::vector<int> labels = assign_clusters(map).labels;

        EigenBasis mixed = basis;
        mixed.Psi = random_mixing(basis.k(), 100.0, rng) * basis.Psi;
        const ClusterMap mixed_map = modified_gaussian_elimination(mixed);
        REQUIRE((mixed_map.Phi - map.Phi).cwiseAbs().maxCoeff() < 1e-8);
        REQUIRE(oracle::same_partition(assign_clusters(mixed_map).labels, labels));
    }
}

TEST_CASE("labels are stable under point reordering", "[spectral]") {
    Rng rng(127);
    const Index n = 24;
    const PointCloud cloud = random_cloud(n, 2, 991, 3.0);
    const DistanceMatrix dist = pairwise_distances(cloud);
    const double r = 1.0;
    const std::vector<int> labels = spectral_labels_at(dist, r);

    // Random permutation of the points.
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Index i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.uniform_index(static_cast<std::uint64_t>(i + 1)))]);

    Matrix shuffled(n, 2);
    for (Index i = 0; i < n; ++i) shuffled.row(i) = cloud.coords.row(perm[static_cast<std::size_t>(i)]);
    const std::vector<int> shuffled_labels =
        spectral_labels_at(pairwise_distances(PointCloud{shuffled}), r);

    std::vector<int> pulled_back(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        pulled_back[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
            shuffled_labels[static_cast<std::size_t>(i)];
    REQUIRE(oracle::same_partition(pulled_back, labels));
}

TEST_CASE("beta0 is nonincreasing along the radius grid", "[spectral]") {
    Rng rng(131);
    for (int instance = 0; instance < 10; ++instance) {
        const Index n = 8 + static_cast<Index>(rng.uniform_index(30));
        const DistanceMatrix dist = pairwise_distances(random_cloud(n, 2, rng.next_u64(), 3.0));
        const RadiusGrid grid = radius_grid(dist, 12);
        int previous = std::numeric_limits<int>::max();
        for (double r : grid.radii) {
            const EigenBasis basis = unit_eigenspace(heat_at(dist, r), 1e-6);
            REQUIRE(basis.k() <= previous);
            previous = static_cast<int>(basis.k());
        }
    }
}

TEST_CASE("cluster: two far-separated blobs with automatic bandwidth", "[spectral]") {
    const LabeledPointCloud data = generate_blobs(60, 0.1, 7);
    ClusterConfig config;
    config.seed = 5;
    config.threads = 2;
    const ClusteringResult result = cluster(data.cloud, config);
    REQUIRE(result.beta0 == 2);
    REQUIRE(oracle::same_partition(result.labels, data.truth_labels));
    // Labels must agree with the oracle at the selected radius.
    const std::vector<int> expected =
        connected_components_oracle(pairwise_distances(data.cloud), result.r_hat);
    REQUIRE(oracle::same_partition(result.labels, expected));
}

TEST_CASE("cluster: fixed bandwidth matches the oracle and skips the curve", "[spectral]") {
    const LabeledPointCloud data = generate_blobs(40, 0.15, 9);
    ClusterConfig config;
    config.mode = BandwidthMode::fixed;
    config.fixed_r = 1.0;
    config.seed = 1;
    const ClusterRun run = cluster_run(data.cloud, config);
    REQUIRE(run.curve.values.empty());
    REQUIRE(run.result.r_hat == 1.0);
    const std::vector<int> expected =
        connected_components_oracle(pairwise_distances(data.cloud), 1.0);
    REQUIRE(oracle::same_partition(run.result.labels, expected));
}

TEST_CASE("cluster: single point is one cluster", "[spectral]") {
    ClusterConfig config;
    config.seed = 3;
    const ClusteringResult result = cluster(PointCloud{Matrix::Zero(1, 3)}, config);
    REQUIRE(result.beta0 == 1);
    REQUIRE(result.labels == std::vector<int>{1});
    REQUIRE_FALSE(result.warnings.empty());
}

TEST_CASE("cluster: every label class is nonempty and argmin-consistent", "[spectral]") {
    const LabeledPointCloud data = generate_two_circles(80, 0.03, 17);
    ClusterConfig config;
    config.seed = 11;
    const ClusteringResult result = cluster(data.cloud, config);

    std::vector<Index> counts(static_cast<std::size_t>(result.beta0), 0);
    for (int label : result.labels) {
        REQUIRE(label >= 1);
        REQUIRE(label <= result.beta0);
        ++counts[static_cast<std::size_t>(label - 1)];
    }
    for (Index c : counts) REQUIRE(c > 0);
}
