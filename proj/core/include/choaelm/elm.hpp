#pragma once

#include "choaelm/linalg.hpp"
#include "choaelm/matrix.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace choaelm {

/// Single-hidden-layer network shape. The activation is the logistic sigmoid.
struct ElmConfig {
    std::size_t n_inputs = 0;
    std::size_t n_hidden = 120;
    std::size_t n_outputs = 2;
    double weight_lo = -1.0;
    double weight_hi = 1.0;

    void validate() const;
};

/// Input weights and biases plus the analytically solved output weights.
struct ElmModel {
    ElmConfig config;
    Matrix input_weights;        // n_inputs x n_hidden
    std::vector<double> biases;  // n_hidden
    Matrix output_weights;       // n_hidden x n_outputs

    void validate_shapes() const;
};

/// Uniform input weights/biases within the configured bounds.
std::pair<Matrix, std::vector<double>> elm_random_init(const ElmConfig& cfg, std::uint64_t seed);

/// H[j][i] = sigmoid(w_i . x_j + b_i) for samples in the rows of x.
Matrix hidden_matrix(const Matrix& x, const Matrix& w, const std::vector<double>& b);

/// One-shot training step: minimal-norm least squares of H Q = T.
Matrix fit_output_weights(const Matrix& h, const Matrix& targets);

Matrix elm_predict(const ElmModel& model, const Matrix& x);

/// Root mean squared error over all output scalars:
/// sqrt(sum_j ||predict(x_j) - t_j||^2 / (n_outputs * N)).
double elm_rmse_loss(const ElmModel& model, const Matrix& x, const Matrix& targets);

std::string elm_to_json(const ElmModel& model);
ElmModel elm_from_json(const std::string& text);

} // namespace choaelm
