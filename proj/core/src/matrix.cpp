#include "choaelm/matrix.hpp"

#include "choaelm/errors.hpp"

#include <cmath>
#include <string>

namespace choaelm {

namespace {

void require_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw InvalidInput("matrix entries must be finite");
        }
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw InvalidInput("matrix dimensions must be positive");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) {
        throw InvalidInput("matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw InvalidInput("matrix data length " + std::to_string(data_.size()) +
                           " does not match shape " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw InvalidInput("from_rows requires a non-empty rectangular input");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw InvalidInput("from_rows requires equal-length rows");
        }
        data.insert(data.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), cols, std::move(data));
}

std::span<const double> Matrix::row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix Matrix::scaled(double s) const {
    if (!std::isfinite(s)) throw InvalidInput("scale factor must be finite");
    Matrix out = *this;
    for (double& v : out.data_) v *= s;
    return out;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum);
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw InvalidInput("matrix product shape mismatch: " + std::to_string(a.rows_) +
                           "x" + std::to_string(a.cols_) + " * " + std::to_string(b.rows_) +
                           "x" + std::to_string(b.cols_));
    }
    Matrix out(a.rows_, b.cols_);
    // i-k-j order keeps both operands streaming in row-major storage.
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.data_.data() + k * b.cols_;
            double* orow = out.data_.data() + i * out.cols_;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                orow[j] += aik * brow[j];
            }
        }
    }
    if (!out.all_finite()) throw NumericError("matrix product produced non-finite entries");
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw InvalidInput("matrix sum shape mismatch");
    }
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    if (!out.all_finite()) throw NumericError("matrix sum produced non-finite entries");
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw InvalidInput("matrix difference shape mismatch");
    }
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    if (!out.all_finite()) throw NumericError("matrix difference produced non-finite entries");
    return out;
}

} // namespace choaelm
