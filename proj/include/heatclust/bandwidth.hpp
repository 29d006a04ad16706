#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "heatclust/heat.hpp"
#include "heatclust/kernel.hpp"
#include "heatclust/laplacian.hpp"
#include "heatclust/matrix_exp.hpp"
#include "heatclust/point_cloud.hpp"

namespace heatclust {

// Strictly increasing radii ending exactly at the data diameter.
struct RadiusGrid {
    std::vector<double> radii;

    Index size() const { return static_cast<Index>(radii.size()); }

    void validate() const {
        if (radii.size() < 3) throw std::invalid_argument("RadiusGrid: need at least 3 radii");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] > 0.0)) throw std::invalid_argument("RadiusGrid: radii must be positive");
            if (i > 0 && radii[i] <= radii[i - 1])
                throw std::invalid_argument("RadiusGrid: radii must be strictly increasing");
        }
    }
};

// R evenly spaced radii from diameter/R to the diameter inclusive.
inline RadiusGrid radius_grid(const DistanceMatrix& dist, Index R) {
    if (R < 3) throw std::invalid_argument("radius_grid: need R >= 3 grid points");
    const double diam = diameter(dist);
    if (!(diam > 0.0))
        throw std::invalid_argument("radius_grid: data diameter must be positive");
    RadiusGrid grid;
    grid.radii.resize(static_cast<std::size_t>(R));
    for (Index k = 1; k <= R; ++k)
        grid.radii[static_cast<std::size_t>(k - 1)] =
            diam * (static_cast<double>(k) / static_cast<double>(R));
    return grid;
}

// Cross-validation variance proxy over the radius grid: for each r, the mean
// Hilbert-Schmidt distance between the subsample heat operators and the
// full-sample one. The same subsamples are reused across all radii.
struct VarianceCurve {
    RadiusGrid grid;
    std::vector<double> values;
    Index subsample_count = 0;
    double fraction = 0.0;
    std::uint64_t seed = 0;
};

// V-hat at a single radius. Terms are accumulated in subsample-index order so
// the floating-point result is reproducible.
inline double variance_estimate(const DistanceMatrix& dist, const KernelSpec& spec, double r,
                                double t, const std::vector<SubsampleSet>& subsamples) {
    if (subsamples.empty()) throw std::invalid_argument("variance_estimate: need N >= 1 subsamples");
    const Index n = dist.size();
    const KernelMatrix W = evaluate_kernel_matrix(spec.with_bandwidth(r), dist);
    const HeatOperator full = heat_operator(build_laplacian(W, SubsampleSet::full(n)), t);

    double sum = 0.0;
    for (const SubsampleSet& subset : subsamples) {
        if (subset.parent_size != n)
            throw std::invalid_argument("variance_estimate: subsample for a different sample size");
        const HeatOperator sub = heat_operator(build_laplacian(W, subset), t);
        sum += hs_distance(sub.H, full.H);
    }
    return sum / static_cast<double>(subsamples.size());
}

inline std::vector<SubsampleSet> draw_subsamples(Index n, Index N, double fraction,
                                                 std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("draw_subsamples: need N >= 1");
    const Rng root(seed);
    std::vector<SubsampleSet> subsamples;
    subsamples.reserve(static_cast<std::size_t>(N));
    for (Index i = 0; i < N; ++i)
        subsamples.push_back(subsample(n, fraction, root.child(static_cast<std::uint64_t>(i)).seed()));
    return subsamples;
}

// Evaluates V-hat at every grid radius with one shared draw of N subsamples.
// Radii are independent, so they may be evaluated by several worker threads;
// the result does not depend on the thread count.
inline VarianceCurve variance_curve(const DistanceMatrix& dist, const KernelSpec& spec,
                                    const RadiusGrid& grid, double t, Index N, double fraction,
                                    std::uint64_t seed, unsigned threads = 1) {
    grid.validate();
    const std::vector<SubsampleSet> subsamples = draw_subsamples(dist.size(), N, fraction, seed);

    VarianceCurve curve;
    curve.grid = grid;
    curve.values.assign(grid.radii.size(), 0.0);
    curve.subsample_count = N;
    curve.fraction = fraction;
    curve.seed = seed;

    const std::size_t jobs = grid.radii.size();
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
    if (workers == 1) {
        for (std::size_t k = 0; k < jobs; ++k)
            curve.values[k] = variance_estimate(dist, spec, grid.radii[k], t, subsamples);
        return curve;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t k = next.fetch_add(1); k < jobs; k = next.fetch_add(1))
                curve.values[k] = variance_estimate(dist, spec, grid.radii[k], t, subsamples);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return curve;
}

enum class BandwidthMode { elbow, max, fixed };

inline std::string to_string(BandwidthMode mode) {
    switch (mode) {
        case BandwidthMode::elbow: return "elbow";
        case BandwidthMode::max: return "max";
        default: return "fixed";
    }
}

struct BandwidthSelection {
    double r_hat = 0.0;
    Index index = -1;  // 0-based grid index; -1 for fixed mode
    bool no_elbow_warning = false;
};

// Bandwidth choice from the variance curve.
//
// elbow: the largest interior grid index i (1-based 2..R-1) whose centered
// difference (V[i+1] - V[i-1]) / 2 is below the overall slope
// (V[R] - V[1]) / (R - 1); past that index the curve flattens relative to
// its average decline. If no index qualifies, falls back to the smallest
// interior index and sets a warning. max: the argmax of V-hat, smallest
// index on ties. fixed: passes fixed_r through untouched.
inline BandwidthSelection select_bandwidth(const VarianceCurve& curve, BandwidthMode mode,
                                           double fixed_r = 0.0) {
    if (mode == BandwidthMode::fixed) {
        if (!(fixed_r > 0.0)) throw std::invalid_argument("select_bandwidth: fixed r must be positive");
        return BandwidthSelection{fixed_r, -1, false};
    }
    const Index R = static_cast<Index>(curve.values.size());
    if (R < 3) throw std::invalid_argument("select_bandwidth: curve needs at least 3 points");
    if (curve.grid.size() != R)
        throw std::invalid_argument("select_bandwidth: curve and grid lengths differ");
    const std::vector<double>& v = curve.values;

    if (mode == BandwidthMode::max) {
        Index best = 0;
        for (Index i = 1; i < R; ++i)
            if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(best)]) best = i;
        return BandwidthSelection{curve.grid.radii[static_cast<std::size_t>(best)], best, false};
    }

    const double overall_slope = (v[static_cast<std::size_t>(R - 1)] - v[0]) / static_cast<double>(R - 1);
    for (Index i = R - 2; i >= 1; --i) {
        const double centered =
            (v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i - 1)]) / 2.0;
        if (centered < overall_slope)
            return BandwidthSelection{curve.grid.radii[static_cast<std::size_t>(i)], i, false};
    }
    return BandwidthSelection{curve.grid.radii[1], 1, true};
}

}  // namespace heatclust
