#include "choaelm/elm.hpp"

#include "choaelm/errors.hpp"
#include "choaelm/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace choaelm {

namespace {

using nlohmann::json;

constexpr int kElmFormatVersion = 1;

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    std::vector<std::vector<double>> rows;
    for (const auto& row : j) {
        rows.push_back(row.get<std::vector<double>>());
    }
    return Matrix::from_rows(rows);
}

} // namespace

void ElmConfig::validate() const {
    if (n_inputs == 0 || n_hidden == 0 || n_outputs == 0) {
        throw InvalidInput("ELM layer sizes must be at least 1");
    }
    if (!(weight_lo < weight_hi)) {
        throw InvalidInput("ELM weight bounds must satisfy lo < hi");
    }
}

void ElmModel::validate_shapes() const {
    config.validate();
    if (input_weights.rows() != config.n_inputs || input_weights.cols() != config.n_hidden ||
        biases.size() != config.n_hidden || output_weights.rows() != config.n_hidden ||
        output_weights.cols() != config.n_outputs) {
        throw InvalidInput("ELM model shapes are inconsistent with its config");
    }
}

std::pair<Matrix, std::vector<double>> elm_random_init(const ElmConfig& cfg,
                                                       std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    Matrix w(cfg.n_inputs, cfg.n_hidden);
    for (double& v : w.data()) v = rng.uniform(cfg.weight_lo, cfg.weight_hi);
    std::vector<double> b(cfg.n_hidden);
    for (double& v : b) v = rng.uniform(cfg.weight_lo, cfg.weight_hi);
    return {std::move(w), std::move(b)};
}

Matrix hidden_matrix(const Matrix& x, const Matrix& w, const std::vector<double>& b) {
    if (x.cols() != w.rows()) {
        throw InvalidInput("hidden_matrix: sample width " + std::to_string(x.cols()) +
                           " does not match weight rows " + std::to_string(w.rows()));
    }
    if (b.size() != w.cols()) {
        throw InvalidInput("hidden_matrix: bias length does not match hidden width");
    }
    Matrix h = x * w;
    for (std::size_t j = 0; j < h.rows(); ++j) {
        for (std::size_t i = 0; i < h.cols(); ++i) {
            h(j, i) = sigmoid(h(j, i) + b[i]);
        }
    }
    return h;
}

Matrix fit_output_weights(const Matrix& h, const Matrix& targets) {
    return least_squares_min_norm(h, targets);
}

Matrix elm_predict(const ElmModel& model, const Matrix& x) {
    model.validate_shapes();
    return hidden_matrix(x, model.input_weights, model.biases) * model.output_weights;
}

double elm_rmse_loss(const ElmModel& model, const Matrix& x, const Matrix& targets) {
    if (targets.rows() != x.rows() || targets.cols() != model.config.n_outputs) {
        throw InvalidInput("elm_rmse_loss: target shape mismatch");
    }
    const Matrix pred = elm_predict(model, x);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.rows(); ++i) {
        for (std::size_t j = 0; j < pred.cols(); ++j) {
            const double e = pred(i, j) - targets(i, j);
            sum += e * e;
        }
    }
    return std::sqrt(sum / (static_cast<double>(pred.cols()) * static_cast<double>(pred.rows())));
}

std::string elm_to_json(const ElmModel& model) {
    model.validate_shapes();
    json doc;
    doc["format_version"] = kElmFormatVersion;
    doc["config"] = {
        {"n_inputs", model.config.n_inputs},   {"n_hidden", model.config.n_hidden},
        {"n_outputs", model.config.n_outputs}, {"activation", "sigmoid"},
        {"weight_lo", model.config.weight_lo}, {"weight_hi", model.config.weight_hi},
    };
    doc["input_weights"] = matrix_to_json(model.input_weights);
    doc["biases"] = model.biases;
    doc["output_weights"] = matrix_to_json(model.output_weights);
    return doc.dump(2);
}

ElmModel elm_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("ELM JSON parse error: ") + e.what());
    }
    try {
        if (doc.at("format_version").get<int>() != kElmFormatVersion) {
            throw DataError("unsupported ELM format_version");
        }
        const auto& cfg = doc.at("config");
        if (cfg.at("activation").get<std::string>() != "sigmoid") {
            throw DataError("unsupported ELM activation");
        }
        ElmModel model;
        model.config.n_inputs = cfg.at("n_inputs").get<std::size_t>();
        model.config.n_hidden = cfg.at("n_hidden").get<std::size_t>();
        model.config.n_outputs = cfg.at("n_outputs").get<std::size_t>();
        model.config.weight_lo = cfg.at("weight_lo").get<double>();
        model.config.weight_hi = cfg.at("weight_hi").get<double>();
        model.input_weights = matrix_from_json(doc.at("input_weights"));
        model.biases = doc.at("biases").get<std::vector<double>>();
        model.output_weights = matrix_from_json(doc.at("output_weights"));
        model.validate_shapes();
        return model;
    } catch (const json::exception& e) {
        throw DataError(std::string("ELM JSON field error: ") + e.what());
    }
}

} // namespace choaelm
