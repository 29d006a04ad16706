#pragma once

#include <string_view>

#include "heatclust/kernel.hpp"
#include "heatclust/point_cloud.hpp"

namespace heatclust {

// Graph Laplacian of the kernel weight matrix restricted to an active set.
//
// Off-diagonal entries are -W(i,j) when both endpoints are active, else 0;
// the diagonal carries sum_{j active} W(i,j) for every row, including
// inactive ones, so inactive rows are diagonal-only. The sign is the
// positive-semidefinite convention (L = D - W on the active block), so the
// heat operator exp(-tL) has spectrum in (0, 1] and its eigenvalue-1
// eigenspace is spanned by the active component indicators.
struct LaplacianMatrix {
    Matrix M;
    SubsampleSet active;
    double r = 0.0;

    static constexpr std::string_view sign_convention =
        "positive semidefinite: D - W on the active block";

    Index size() const { return M.rows(); }
};

inline LaplacianMatrix build_laplacian(const KernelMatrix& W, const SubsampleSet& active) {
    active.validate();
    const Index n = W.size();
    if (active.parent_size != n)
        throw std::invalid_argument("build_laplacian: active set is for a different sample size");

    std::vector<char> is_active(static_cast<std::size_t>(n), 0);
    for (Index i : active.indices) is_active[static_cast<std::size_t>(i)] = 1;

    Matrix L = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        double degree = 0.0;
        for (Index j : active.indices)
            if (j != i) degree += W.W(i, j);
        L(i, i) = degree;
        if (!is_active[static_cast<std::size_t>(i)]) continue;
        for (Index j : active.indices)
            if (j != i) L(i, j) = -W.W(i, j);
    }
    return LaplacianMatrix{std::move(L), active, W.r};
}

}  // namespace heatclust
