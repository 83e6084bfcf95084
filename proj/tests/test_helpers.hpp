#pragma once

#include "choaelm/matrix.hpp"
#include "choaelm/rng.hpp"

#include <filesystem>
#include <string>
#include <unistd.h>
#include <vector>

namespace choaelm::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0,
                            double hi = 1.0) {
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.uniform(lo, hi);
    return m;
}

/// rows x cols matrix of the given rank (product of thin random factors).
inline Matrix random_rank_deficient(std::size_t rows, std::size_t cols, std::size_t rank,
                                    Rng& rng) {
    const Matrix a = random_matrix(rows, rank, rng);
    const Matrix b = random_matrix(rank, cols, rng);
    return a * b;
}

/// Gaussian elimination with partial pivoting; the independent normal-equations
/// oracle used against the SVD path.
inline std::vector<double> solve_dense(Matrix a, std::vector<double> rhs) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double sum = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= a(i, j) * x[j];
        x[i] = sum / a(i, i);
    }
    return x;
}

/// Fresh scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("choaelm_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace choaelm::testing
