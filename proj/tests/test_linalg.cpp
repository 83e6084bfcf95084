#include "choaelm/linalg.hpp"

#include "choaelm/errors.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace choaelm;
using testing::random_matrix;
using testing::random_rank_deficient;
using testing::solve_dense;

namespace {

double penrose_violation(const Matrix& a, const Matrix& pinv) {
    const Matrix apa = a * pinv * a;
    const Matrix pap = pinv * a * pinv;
    const Matrix ap = a * pinv;
    const Matrix pa = pinv * a;
    double worst = (apa - a).frobenius_norm();
    worst = std::max(worst, (pap - pinv).frobenius_norm());
    worst = std::max(worst, (ap - ap.transposed()).frobenius_norm());
    worst = std::max(worst, (pa - pa.transposed()).frobenius_norm());
    return worst;
}

} // namespace

TEST_CASE("pseudoinverse of the identity is the identity") {
    const Matrix id = Matrix::identity(3);
    const Matrix p = pseudoinverse(id);
    CHECK((p - id).frobenius_norm() < 1e-14);
}

TEST_CASE("pseudoinverse inverts nonzero singular values only") {
    const Matrix a(2, 2, {2.0, 0.0, 0.0, 0.0});
    const Matrix p = pseudoinverse(a);
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p(0, 1) == 0.0);
    CHECK(p(1, 0) == 0.0);
    CHECK(p(1, 1) == 0.0);
}

TEST_CASE("pseudoinverse of a random full-rank 5x3 satisfies the Penrose conditions") {
    Rng rng(42);
    const Matrix a = random_matrix(5, 3, rng);
    const Matrix p = pseudoinverse(a);
    CHECK(p.rows() == 3);
    CHECK(p.cols() == 5);
    CHECK((a * p * a - a).frobenius_norm() < 1e-10);
    CHECK(penrose_violation(a, p) < 1e-10);
}

TEST_CASE("pseudoinverse rejects bad input") {
    CHECK_THROWS_AS(pseudoinverse(Matrix::identity(2), -1.0), InvalidInput);
    Matrix bad = Matrix::identity(2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pseudoinverse(bad), InvalidInput);
}

TEST_CASE("Penrose conditions hold across shapes including rank-deficient") {
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix cases[] = {
            random_matrix(3, 3, rng),
            random_matrix(5, 3, rng),
            random_matrix(3, 5, rng),
            random_rank_deficient(4, 4, 2, rng),
        };
        for (const Matrix& a : cases) {
            CHECK(penrose_violation(a, pseudoinverse(a)) < 1e-9);
        }
    }
}

TEST_CASE("least squares with identity design returns the targets") {
    Rng rng(3);
    const Matrix t = random_matrix(4, 2, rng);
    const Matrix q = least_squares_min_norm(Matrix::identity(4), t);
    CHECK((q - t).frobenius_norm() < 1e-14);
}

TEST_CASE("least squares matches the normal-equations oracle on full column rank") {
    Rng rng(11);
    const Matrix h = random_matrix(4, 2, rng);
    const Matrix t = random_matrix(4, 1, rng);

    const Matrix q = least_squares_min_norm(h, t);

    // Oracle: (H^T H) q = H^T t solved by Gaussian elimination.
    const Matrix hth = h.transposed() * h;
    const Matrix htt = h.transposed() * t;
    const auto oracle = solve_dense(hth, {htt(0, 0), htt(1, 0)});
    CHECK(q(0, 0) == doctest::Approx(oracle[0]).epsilon(1e-10));
    CHECK(q(1, 0) == doctest::Approx(oracle[1]).epsilon(1e-10));
}

TEST_CASE("least squares of a zero design is the zero matrix") {
    const Matrix h(2, 2);
    Rng rng(5);
    const Matrix t = random_matrix(2, 2, rng);
    const Matrix q = least_squares_min_norm(h, t);
    CHECK(q.frobenius_norm() == 0.0);
}

TEST_CASE("least squares rejects row mismatches") {
    CHECK_THROWS_AS(least_squares_min_norm(Matrix::identity(3), Matrix::identity(2)),
                    InvalidInput);
}

TEST_CASE("minimal-norm property against null-space perturbations") {
    Rng rng(23);
    const Matrix h = random_rank_deficient(6, 4, 2, rng);
    const Matrix t = random_matrix(6, 2, rng);
    const Matrix q = least_squares_min_norm(h, t);
    const double qnorm = q.frobenius_norm();
    const double residual = (h * q - t).frobenius_norm();

    // Null-space basis from the SVD: columns of V past the rank.
    const SvdResult s = svd(h);
    std::vector<std::size_t> null_cols;
    for (std::size_t j = 0; j < s.singular_values.size(); ++j) {
        if (s.singular_values[j] < 1e-10) null_cols.push_back(j);
    }
    REQUIRE(!null_cols.empty());

    for (int rep = 0; rep < 100; ++rep) {
        Matrix perturbed = q;
        for (std::size_t j : null_cols) {
            const double scale = rng.uniform(-2.0, 2.0);
            for (std::size_t i = 0; i < q.rows(); ++i) {
                for (std::size_t c = 0; c < q.cols(); ++c) {
                    perturbed(i, c) += scale * s.v(i, j);
                }
            }
        }
        // Residual unchanged inside the null space, norm never smaller.
        CHECK((h * perturbed - t).frobenius_norm() == doctest::Approx(residual).epsilon(1e-8));
        CHECK(perturbed.frobenius_norm() >= qnorm - 1e-9);
    }
}

TEST_CASE("residual optimality against random alternatives") {
    Rng rng(31);
    const Matrix h = random_matrix(6, 3, rng);
    const Matrix t = random_matrix(6, 2, rng);
    const Matrix q = least_squares_min_norm(h, t);
    const double residual = (h * q - t).frobenius_norm();
    for (int rep = 0; rep < 100; ++rep) {
        const Matrix other = random_matrix(3, 2, rng, -3.0, 3.0);
        CHECK(residual <= (h * other - t).frobenius_norm() + 1e-9);
    }
}

TEST_CASE("svd reconstructs its input") {
    Rng rng(77);
    for (const auto& [r, c] : {std::pair<std::size_t, std::size_t>{4, 6},
                               std::pair<std::size_t, std::size_t>{6, 4},
                               std::pair<std::size_t, std::size_t>{5, 5}}) {
        const Matrix a = random_matrix(r, c, rng);
        const SvdResult s = svd(a);
        Matrix sigma(s.singular_values.size(), s.singular_values.size());
        for (std::size_t i = 0; i < s.singular_values.size(); ++i) {
            sigma(i, i) = s.singular_values[i];
            if (i > 0) CHECK(s.singular_values[i] <= s.singular_values[i - 1]);
        }
        CHECK((s.u * sigma * s.v.transposed() - a).frobenius_norm() < 1e-10);
    }
}
