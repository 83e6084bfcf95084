#pragma once

#include "choaelm/baselines.hpp"
#include "choaelm/cnn.hpp"
#include "choaelm/elm.hpp"

#include <array>
#include <string>
#include <vector>

namespace choaelm {

/// Flat encoding of the ELM input layer: all weights row-major (input index
/// outer, hidden index inner), then the hidden biases.
struct ChimpLayout {
    std::size_t n_inputs = 0;
    std::size_t n_hidden = 0;

    std::size_t total_dim() const { return n_inputs * n_hidden + n_hidden; }
};

std::vector<double> encode_elm(const Matrix& w, const std::vector<double>& b);
std::pair<Matrix, std::vector<double>> decode_elm(const std::vector<double>& v,
                                                  const ChimpLayout& layout);

/// Candidate loss: decode the vector, solve the output weights analytically,
/// and score with the RMSE loss on the given training set.
double elm_fitness(const std::vector<double>& v, const Matrix& features, const Matrix& targets,
                   const ChimpLayout& layout);

struct TrainingMeta {
    OptimizerKind optimizer = OptimizerKind::None;
    ChoaStrategy strategy = ChoaStrategy::Choa1;
    ChaoticMapKind chaos_map = ChaoticMapKind::GaussMouse;
    std::uint64_t seed = 1;
    std::size_t population = 50;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    double final_loss = 0.0;
    std::vector<double> trace;
    double wall_seconds = 0.0; // informational only, never serialized
};

/// A frozen extractor reference plus the tuned ELM head.
struct TrainedDetector {
    std::string structure;
    WeightSource weight_source;
    ElmModel elm;
    std::array<std::string, 2> class_names{"positive", "negative"};
    TrainingMeta training;
};

struct TrainOptions {
    OptimizerKind optimizer = OptimizerKind::Choa;
    ChoaStrategy strategy = ChoaStrategy::Choa1;
    OptimizerConfig config;
    std::size_t n_hidden = 120;
    double weight_lo = -1.0;
    double weight_hi = 1.0;
    std::string structure;      // metadata passthrough
    WeightSource weight_source; // metadata passthrough
};

/// Search the ELM input layer over the cached feature matrix, then refit the
/// output weights once on the winner. optimizer = none keeps a single random
/// initialization (the unoptimized baseline).
TrainedDetector train_detector(const Matrix& features, const Matrix& targets,
                               const TrainOptions& options);

/// Positive-class probability per sample: softmax over the two raw outputs.
std::vector<double> predict_epg(const TrainedDetector& detector, const Matrix& features);

/// 1 where epg >= threshold, else 0.
std::vector<int> classify(const std::vector<double>& epgs, double threshold);

std::string detector_to_json(const TrainedDetector& detector);
TrainedDetector detector_from_json(const std::string& text);

} // namespace choaelm
