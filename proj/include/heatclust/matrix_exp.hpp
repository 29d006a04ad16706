#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "heatclust/errors.hpp"
#include "heatclust/point_cloud.hpp"

namespace heatclust {

// Hilbert-Schmidt (Frobenius) norm: sqrt of the sum of squared entries,
// equivalently sqrt(trace(A^T A)).
inline double hs_norm(const Matrix& A) { return A.norm(); }

inline double hs_distance(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("hs_distance: shape mismatch");
    return (A - B).norm();
}

namespace detail {

// Pade(13) approximant with scaling and squaring (Higham 2005). Good to
// machine precision once the scaled matrix has 1-norm below theta_13.
inline Matrix expm_pade13(const Matrix& A) {
    static constexpr double kTheta13 = 5.371920351148152;
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};
    const Index n = A.rows();
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    const Matrix As = A / std::pow(2.0, squarings);

    const Matrix A2 = As * As;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A2 * A4;
    const Matrix I = Matrix::Identity(n, n);

    const Matrix U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                           b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                     b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    Matrix E = (V - U).partialPivLu().solve(V + U);
    for (int s = 0; s < squarings; ++s) E = E * E;
    return E;
}

}  // namespace detail

// exp(M) for a square real matrix. Symmetric inputs go through an
// eigendecomposition (exact symmetry is checked, which the pipeline's
// Laplacians satisfy by construction); everything else through scaling and
// squaring with a Pade approximant.
inline Matrix matrix_exponential(const Matrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("matrix_exponential: matrix must be square");
    if (!M.allFinite()) throw NumericalError("matrix_exponential: non-finite input");

    Matrix result;
    if (M == M.transpose()) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(M);
        if (eig.info() != Eigen::Success)
            throw NumericalError("matrix_exponential: eigendecomposition failed");
        result = eig.eigenvectors() *
                 eig.eigenvalues().array().exp().matrix().asDiagonal() *
                 eig.eigenvectors().transpose();
    } else {
        result = detail::expm_pade13(M);
    }
    if (!result.allFinite()) throw NumericalError("matrix_exponential: non-finite result");
    return result;
}

}  // namespace heatclust
