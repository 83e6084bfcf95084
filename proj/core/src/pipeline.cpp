#include "choaelm/pipeline.hpp"

#include "choaelm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace choaelm {

namespace {

using nlohmann::json;

constexpr int kDetectorFormatVersion = 1;

} // namespace

std::vector<double> encode_elm(const Matrix& w, const std::vector<double>& b) {
    if (w.cols() != b.size()) {
        throw InvalidInput("encode_elm: bias length must equal hidden width");
    }
    std::vector<double> v;
    v.reserve(w.rows() * w.cols() + b.size());
    v.insert(v.end(), w.data().begin(), w.data().end()); // row-major = W11, W12, ..., WnL
    v.insert(v.end(), b.begin(), b.end());
    return v;
}

std::pair<Matrix, std::vector<double>> decode_elm(const std::vector<double>& v,
                                                  const ChimpLayout& layout) {
    if (v.size() != layout.total_dim()) {
        throw InvalidInput("decode_elm: vector length " + std::to_string(v.size()) +
                           " does not match layout dimension " +
                           std::to_string(layout.total_dim()));
    }
    const std::size_t wn = layout.n_inputs * layout.n_hidden;
    Matrix w(layout.n_inputs, layout.n_hidden,
             std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(wn)));
    std::vector<double> b(v.begin() + static_cast<std::ptrdiff_t>(wn), v.end());
    return {std::move(w), std::move(b)};
}

double elm_fitness(const std::vector<double>& v, const Matrix& features, const Matrix& targets,
                   const ChimpLayout& layout) {
    if (features.cols() != layout.n_inputs) {
        throw InvalidInput("elm_fitness: feature width does not match layout");
    }
    auto [w, b] = decode_elm(v, layout);
    const Matrix h = hidden_matrix(features, w, b);
    const Matrix q = fit_output_weights(h, targets);

    ElmModel model;
    model.config.n_inputs = layout.n_inputs;
    model.config.n_hidden = layout.n_hidden;
    model.config.n_outputs = targets.cols();
    model.input_weights = std::move(w);
    model.biases = std::move(b);
    model.output_weights = q;
    return elm_rmse_loss(model, features, targets);
}

TrainedDetector train_detector(const Matrix& features, const Matrix& targets,
                               const TrainOptions& options) {
    if (features.rows() != targets.rows()) {
        throw InvalidInput("train_detector: features and targets disagree on sample count");
    }
    const auto t0 = std::chrono::steady_clock::now();

    const ChimpLayout layout{features.cols(), options.n_hidden};
    const SearchSpace space =
        SearchSpace::cube(layout.total_dim(), options.weight_lo, options.weight_hi);
    const ObjectiveFn fitness = [&](const std::vector<double>& v) {
        return elm_fitness(v, features, targets, layout);
    };

    const RunTrace trace =
        run_optimizer(options.optimizer, options.strategy, space, fitness, options.config);

    auto [w, b] = decode_elm(trace.best_vector, layout);

    TrainedDetector detector;
    detector.structure = options.structure;
    detector.weight_source = options.weight_source;
    detector.elm.config.n_inputs = layout.n_inputs;
    detector.elm.config.n_hidden = layout.n_hidden;
    detector.elm.config.n_outputs = targets.cols();
    detector.elm.config.weight_lo = options.weight_lo;
    detector.elm.config.weight_hi = options.weight_hi;
    detector.elm.input_weights = std::move(w);
    detector.elm.biases = std::move(b);
    // One final analytic solve on the winning input layer.
    detector.elm.output_weights = fit_output_weights(
        hidden_matrix(features, detector.elm.input_weights, detector.elm.biases), targets);

    detector.training.optimizer = options.optimizer;
    detector.training.strategy = options.strategy;
    detector.training.chaos_map = options.config.chaos_map;
    detector.training.seed = options.config.seed;
    detector.training.population = options.config.population;
    detector.training.iterations = trace.iterations();
    detector.training.evaluations = trace.evaluations;
    detector.training.final_loss = trace.best_loss;
    detector.training.trace = trace.best_per_iter;
    detector.training.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return detector;
}

std::vector<double> predict_epg(const TrainedDetector& detector, const Matrix& features) {
    if (features.cols() != detector.elm.config.n_inputs) {
        throw InvalidInput("predict_epg: feature width does not match the model");
    }
    if (detector.elm.config.n_outputs != 2) {
        throw InvalidInput("predict_epg requires a two-output model");
    }
    const Matrix raw = elm_predict(detector.elm, features);
    std::vector<double> epgs(raw.rows());
    for (std::size_t i = 0; i < raw.rows(); ++i) {
        // softmax over (positive, negative) raw outputs, stabilized
        const double zp = raw(i, 0);
        const double zn = raw(i, 1);
        const double m = std::max(zp, zn);
        const double ep = std::exp(zp - m);
        const double en = std::exp(zn - m);
        epgs[i] = ep / (ep + en);
    }
    return epgs;
}

std::vector<int> classify(const std::vector<double>& epgs, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw InvalidInput("classify: threshold must lie in [0, 1]");
    }
    std::vector<int> labels(epgs.size());
    for (std::size_t i = 0; i < epgs.size(); ++i) {
        labels[i] = epgs[i] >= threshold ? 1 : 0;
    }
    return labels;
}

std::string detector_to_json(const TrainedDetector& detector) {
    json doc;
    doc["format_version"] = kDetectorFormatVersion;
    doc["kind"] = "trained_detector";
    doc["structure"] = detector.structure;
    if (detector.weight_source.type == WeightSource::Type::Seed) {
        doc["weight_source"] = {{"type", "seed"}, {"seed", detector.weight_source.seed}};
    } else {
        doc["weight_source"] = {{"type", "file"}, {"path", detector.weight_source.path}};
    }
    doc["class_names"] = detector.class_names;
    doc["elm"] = json::parse(elm_to_json(detector.elm));
    doc["training"] = {
        {"optimizer", std::string(optimizer_kind_name(detector.training.optimizer))},
        {"choa_strategy", std::string(choa_strategy_name(detector.training.strategy))},
        {"chaos_map", std::string(chaotic_map_name(detector.training.chaos_map))},
        {"seed", detector.training.seed},
        {"population", detector.training.population},
        {"iterations", detector.training.iterations},
        {"evaluations", detector.training.evaluations},
        {"final_loss", detector.training.final_loss},
        {"trace", detector.training.trace},
    };
    return doc.dump(2);
}

TrainedDetector detector_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("detector JSON parse error: ") + e.what());
    }
    try {
        if (doc.at("format_version").get<int>() != kDetectorFormatVersion ||
            doc.at("kind").get<std::string>() != "trained_detector") {
            throw DataError("not a trained_detector document");
        }
        TrainedDetector d;
        d.structure = doc.at("structure").get<std::string>();
        const auto& ws = doc.at("weight_source");
        if (ws.at("type").get<std::string>() == "seed") {
            d.weight_source = WeightSource::from_seed(ws.at("seed").get<std::uint64_t>());
        } else {
            d.weight_source = WeightSource::from_file(ws.at("path").get<std::string>());
        }
        const auto names = doc.at("class_names").get<std::vector<std::string>>();
        if (names.size() == 2) {
            d.class_names = {names[0], names[1]};
        }
        d.elm = elm_from_json(doc.at("elm").dump());
        const auto& tr = doc.at("training");
        if (auto kind = optimizer_kind_from_name(tr.at("optimizer").get<std::string>())) {
            d.training.optimizer = *kind;
        }
        if (auto strat = choa_strategy_from_name(tr.at("choa_strategy").get<std::string>())) {
            d.training.strategy = *strat;
        }
        if (auto map = chaotic_map_from_name(tr.at("chaos_map").get<std::string>())) {
            d.training.chaos_map = *map;
        }
        d.training.seed = tr.at("seed").get<std::uint64_t>();
        d.training.population = tr.at("population").get<std::size_t>();
        d.training.iterations = tr.at("iterations").get<std::size_t>();
        d.training.evaluations = tr.at("evaluations").get<std::size_t>();
        d.training.final_loss = tr.at("final_loss").get<double>();
        d.training.trace = tr.at("trace").get<std::vector<double>>();
        return d;
    } catch (const json::exception& e) {
        throw DataError(std::string("detector JSON field error: ") + e.what());
    }
}

} // namespace choaelm
