#pragma once

#include "choaelm/matrix.hpp"

#include <vector>

namespace choaelm {

/// Thin singular value decomposition a = u * diag(s) * v^T with singular
/// values sorted descending. u is rows x k and v is cols x k, k = min(rows, cols).
struct SvdResult {
    Matrix u;
    std::vector<double> singular_values;
    Matrix v;
};

SvdResult svd(const Matrix& a);

/// Moore-Penrose pseudoinverse via SVD with rank truncation: singular values
/// below tol are treated as zero. tol = 0 selects the conventional default
/// max(rows, cols) * machine epsilon * sigma_max.
Matrix pseudoinverse(const Matrix& a, double tol = 0.0);

/// Minimal-Frobenius-norm solution of min_Q ||H Q - T||_F, i.e. Q = pinv(H) * T,
/// computed directly from the SVD of H.
Matrix least_squares_min_norm(const Matrix& h, const Matrix& t, double tol = 0.0);

} // namespace choaelm
