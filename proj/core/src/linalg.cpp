#include "choaelm/linalg.hpp"

#include "choaelm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace choaelm {

namespace {

// One-sided Jacobi (Hestenes) SVD for a tall-or-square matrix, m >= n.
// Works on column-major copies so the inner rotations stream contiguously.
SvdResult jacobi_svd_tall(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    std::vector<double> w(m * n);  // column j at w[j*m .. j*m+m)
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            w[j * m + i] = a(i, j);
        }
    }
    std::vector<double> v(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;

    const double eps = std::numeric_limits<double>::epsilon();
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double* wp = w.data() + p * m;
                double* wq = w.data() + q * m;
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += wp[i] * wp[i];
                    beta += wq[i] * wq[i];
                    gamma += wp[i] * wq[i];
                }
                if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wpi = wp[i];
                    const double wqi = wq[i];
                    wp[i] = c * wpi - s * wqi;
                    wq[i] = s * wpi + c * wqi;
                }
                double* vp = v.data() + p * n;
                double* vq = v.data() + q * n;
                for (std::size_t i = 0; i < n; ++i) {
                    const double vpi = vp[i];
                    const double vqi = vq[i];
                    vp[i] = c * vpi - s * vqi;
                    vq[i] = s * vpi + c * vqi;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        const double* col = w.data() + j * m;
        for (std::size_t i = 0; i < m; ++i) sum += col[i] * col[i];
        sigma[j] = std::sqrt(sum);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        out.singular_values[jj] = sigma[j];
        const double inv = sigma[j] > 0.0 ? 1.0 / sigma[j] : 0.0;
        const double* wcol = w.data() + j * m;
        for (std::size_t i = 0; i < m; ++i) out.u(i, jj) = wcol[i] * inv;
        const double* vcol = v.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) out.v(i, jj) = vcol[i];
    }
    return out;
}

double effective_tolerance(const SvdResult& s, std::size_t m, std::size_t n, double tol) {
    if (tol > 0.0) return tol;
    const double sigma_max = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    return static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon() *
           sigma_max;
}

} // namespace

SvdResult svd(const Matrix& a) {
    if (a.empty()) throw InvalidInput("svd of empty matrix");
    if (!a.all_finite()) throw InvalidInput("svd input has non-finite entries");
    if (a.rows() >= a.cols()) {
        return jacobi_svd_tall(a);
    }
    // Wide input: a^T = U S V^T  =>  a = V S U^T.
    SvdResult t = jacobi_svd_tall(a.transposed());
    return SvdResult{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

Matrix pseudoinverse(const Matrix& a, double tol) {
    if (a.empty()) throw InvalidInput("pseudoinverse of empty matrix");
    if (!a.all_finite()) throw InvalidInput("pseudoinverse input has non-finite entries");
    if (tol < 0.0) throw InvalidInput("pseudoinverse tolerance must be non-negative");

    const SvdResult s = svd(a);
    const double cutoff = effective_tolerance(s, a.rows(), a.cols(), tol);

    // pinv = V * diag(1/sigma, truncated) * U^T
    Matrix out(a.cols(), a.rows());
    const std::size_t k = s.singular_values.size();
    for (std::size_t r = 0; r < k; ++r) {
        const double sv = s.singular_values[r];
        if (sv <= 0.0 || sv < cutoff) continue;
        const double inv = 1.0 / sv;
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double vir = s.v(i, r) * inv;
            if (vir == 0.0) continue;
            for (std::size_t j = 0; j < a.rows(); ++j) {
                out(i, j) += vir * s.u(j, r);
            }
        }
    }
    if (!out.all_finite()) throw NumericError("pseudoinverse produced non-finite entries");
    return out;
}

Matrix least_squares_min_norm(const Matrix& h, const Matrix& t, double tol) {
    if (h.rows() != t.rows()) {
        throw InvalidInput("least squares shape mismatch: H has " + std::to_string(h.rows()) +
                           " rows, T has " + std::to_string(t.rows()));
    }
    if (tol < 0.0) throw InvalidInput("least squares tolerance must be non-negative");
    if (!h.all_finite() || !t.all_finite()) {
        throw InvalidInput("least squares input has non-finite entries");
    }

    const SvdResult s = svd(h);
    const double cutoff = effective_tolerance(s, h.rows(), h.cols(), tol);
    const std::size_t k = s.singular_values.size();

    // Q = V * diag(1/sigma) * (U^T T), truncating small singular values.
    Matrix ut_t(k, t.cols());
    for (std::size_t r = 0; r < k; ++r) {
        const double sv = s.singular_values[r];
        if (sv <= 0.0 || sv < cutoff) continue;
        const double inv = 1.0 / sv;
        for (std::size_t c = 0; c < t.cols(); ++c) {
            double sum = 0.0;
            for (std::size_t i = 0; i < h.rows(); ++i) {
                sum += s.u(i, r) * t(i, c);
            }
            ut_t(r, c) = sum * inv;
        }
    }
    Matrix q = s.v * ut_t;
    if (!q.all_finite()) throw NumericError("least squares produced non-finite entries");
    return q;
}

} // namespace choaelm
