#pragma once

#include "choaelm/matrix.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace choaelm {

/// C x H x W grayscale tensor, channel-major storage.
struct ImageTensor {
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> data;

    ImageTensor() = default;
    ImageTensor(std::size_t c, std::size_t h, std::size_t w)
        : channels(c), height(h), width(w), data(c * h * w, 0.0) {}

    double at(std::size_t c, std::size_t y, std::size_t x) const {
        return data[(c * height + y) * width + x];
    }
    double& at(std::size_t c, std::size_t y, std::size_t x) {
        return data[(c * height + y) * width + x];
    }
};

/// Parsed structure string: alternating 5x5 valid convolutions and 2x2
/// stride-2 pools over a 1x32x32 input, e.g. "in_6c_2p_12c_2p".
struct NetworkSpec {
    static constexpr std::size_t kInputSize = 32;
    static constexpr std::size_t kKernel = 5;

    std::string structure;
    std::vector<std::size_t> conv_channels; // one conv+pool stage per entry

    std::size_t stages() const { return conv_channels.size(); }
    /// (channels, height, width) after each stage's pool.
    std::vector<std::array<std::size_t, 3>> stage_shapes() const;
    std::size_t feature_dim() const;
};

NetworkSpec parse_structure(std::string_view s);

struct ConvWeights {
    std::size_t out_channels = 0;
    std::size_t in_channels = 0;
    std::vector<double> kernels; // out x in x 5 x 5
    std::vector<double> biases;  // out

    double kernel_at(std::size_t o, std::size_t i, std::size_t ky, std::size_t kx) const {
        return kernels[((o * in_channels + i) * NetworkSpec::kKernel + ky) *
                           NetworkSpec::kKernel +
                       kx];
    }
};

struct PoolWeights {
    double beta = 0.25;
    double bias = 0.0;
};

struct WeightStore {
    std::vector<ConvWeights> conv;
    std::vector<PoolWeights> pool;
};

struct WeightSource {
    enum class Type { Seed, File };
    Type type = Type::Seed;
    std::uint64_t seed = 0;
    std::string path;

    static WeightSource from_seed(std::uint64_t seed) {
        return WeightSource{Type::Seed, seed, {}};
    }
    static WeightSource from_file(std::string path) {
        return WeightSource{Type::File, 0, std::move(path)};
    }
};

/// Valid cross-correlation, bias, tanh. 5x5 kernels shrink each spatial dim by 4.
ImageTensor conv_forward(const ImageTensor& x, const ConvWeights& layer);

/// Per 2x2 window: tanh(beta * (sum of the four values) + bias); halves each
/// spatial dim, which must be even.
ImageTensor avgpool_forward(const ImageTensor& x, double beta, double bias);

/// Full forward pass; the final tensor is flattened channel-major.
std::vector<double> extract_features(const ImageTensor& image, const NetworkSpec& spec,
                                     const WeightStore& weights);

/// One feature row per image.
Matrix extract_features_batch(const std::vector<ImageTensor>& images, const NetworkSpec& spec,
                              const WeightStore& weights);

/// Load from file or seed fresh: uniform conv weights in [-s, s] with
/// s = 1/sqrt(fan_in); pools get beta = 0.25, bias = 0.
WeightStore frozen_weights(const NetworkSpec& spec, const WeightSource& source);
WeightStore seeded_weights(const NetworkSpec& spec, std::uint64_t seed);
WeightStore load_weights(const NetworkSpec& spec, const std::filesystem::path& path);
void save_weights(const NetworkSpec& spec, const WeightStore& weights,
                  const std::filesystem::path& path);

} // namespace choaelm
