#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "heatclust/errors.hpp"
#include "heatclust/laplacian.hpp"
#include "heatclust/matrix_exp.hpp"

namespace heatclust {

// The heat operator exp(-tL) of a Laplacian. Symmetric with eigenvalues in
// (0, 1]; the eigenvalue-1 multiplicity counts the connected components of
// the active support graph (plus inactive points with no active neighbor).
struct HeatOperator {
    Matrix H;
    double t = 1.0;
    double r = 0.0;
    SubsampleSet active;

    Index size() const { return H.rows(); }
};

inline HeatOperator heat_operator(const LaplacianMatrix& L, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_operator: t must be positive");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(L.M);
    if (eig.info() != Eigen::Success)
        throw NumericalError("heat_operator: eigendecomposition failed");
    Matrix H = eig.eigenvectors() *
               (-t * eig.eigenvalues().array()).exp().matrix().asDiagonal() *
               eig.eigenvectors().transpose();
    // Symmetrize away the last-ulp asymmetry of V D V^T.
    H = ((H + H.transpose()) / 2.0).eval();
    if (!H.allFinite()) throw NumericalError("heat_operator: non-finite result");
    return HeatOperator{std::move(H), t, L.r, L.active};
}

}  // namespace heatclust
