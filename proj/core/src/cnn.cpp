#include "choaelm/cnn.hpp"

#include "choaelm/errors.hpp"
#include "choaelm/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace choaelm {

namespace {

using nlohmann::json;

constexpr int kWeightsFormatVersion = 1;

std::vector<std::string> split_tokens(std::string_view s) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : s) {
        if (ch == '_') {
            tokens.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    tokens.push_back(current);
    return tokens;
}

} // namespace

std::vector<std::array<std::size_t, 3>> NetworkSpec::stage_shapes() const {
    std::vector<std::array<std::size_t, 3>> shapes;
    std::size_t side = kInputSize;
    for (std::size_t c : conv_channels) {
        side -= kKernel - 1; // valid 5x5 convolution
        side /= 2;           // 2x2 stride-2 pool
        shapes.push_back({c, side, side});
    }
    return shapes;
}

std::size_t NetworkSpec::feature_dim() const {
    const auto shapes = stage_shapes();
    const auto& last = shapes.back();
    return last[0] * last[1] * last[2];
}

NetworkSpec parse_structure(std::string_view s) {
    const auto tokens = split_tokens(s);
    if (tokens.empty() || tokens.front() != "in") {
        throw InvalidInput("structure string must start with 'in': got \"" + std::string(s) +
                           "\"");
    }
    if (tokens.size() < 3 || (tokens.size() - 1) % 2 != 0) {
        throw InvalidInput("structure string must alternate conv and pool tokens: \"" +
                           std::string(s) + "\"");
    }

    NetworkSpec spec;
    spec.structure = std::string(s);
    std::size_t side = NetworkSpec::kInputSize;
    for (std::size_t i = 1; i < tokens.size(); i += 2) {
        const std::string& conv_tok = tokens[i];
        const std::string& pool_tok = tokens[i + 1];

        if (conv_tok.size() < 2 || conv_tok.back() != 'c') {
            throw InvalidInput("expected conv token like '6c', got \"" + conv_tok + "\"");
        }
        std::size_t channels = 0;
        for (char ch : conv_tok.substr(0, conv_tok.size() - 1)) {
            if (ch < '0' || ch > '9') {
                throw InvalidInput("expected conv token like '6c', got \"" + conv_tok + "\"");
            }
            channels = channels * 10 + static_cast<std::size_t>(ch - '0');
        }
        if (channels == 0) {
            throw InvalidInput("conv token must have positive channels: \"" + conv_tok + "\"");
        }
        if (pool_tok != "2p") {
            throw InvalidInput("expected pool token '2p', got \"" + pool_tok + "\"");
        }

        if (side < NetworkSpec::kKernel) {
            throw InvalidInput("conv token \"" + conv_tok + "\" underflows the " +
                               std::to_string(side) + "-pixel input");
        }
        side -= NetworkSpec::kKernel - 1;
        if (side % 2 != 0 || side == 0) {
            throw InvalidInput("pool token after \"" + conv_tok + "\" needs an even spatial dim, got " +
                               std::to_string(side));
        }
        side /= 2;
        spec.conv_channels.push_back(channels);
    }
    return spec;
}

ImageTensor conv_forward(const ImageTensor& x, const ConvWeights& layer) {
    if (x.channels != layer.in_channels) {
        throw InvalidInput("conv_forward: input has " + std::to_string(x.channels) +
                           " channels, kernels expect " + std::to_string(layer.in_channels));
    }
    constexpr std::size_t k = NetworkSpec::kKernel;
    if (x.height < k || x.width < k) {
        throw InvalidInput("conv_forward: input smaller than the kernel");
    }
    const std::size_t oh = x.height - (k - 1);
    const std::size_t ow = x.width - (k - 1);

    ImageTensor out(layer.out_channels, oh, ow);
    for (std::size_t o = 0; o < layer.out_channels; ++o) {
        for (std::size_t y = 0; y < oh; ++y) {
            for (std::size_t xx = 0; xx < ow; ++xx) {
                double acc = layer.biases[o];
                for (std::size_t c = 0; c < x.channels; ++c) {
                    for (std::size_t ky = 0; ky < k; ++ky) {
                        for (std::size_t kx = 0; kx < k; ++kx) {
                            acc += layer.kernel_at(o, c, ky, kx) * x.at(c, y + ky, xx + kx);
                        }
                    }
                }
                out.at(o, y, xx) = std::tanh(acc);
            }
        }
    }
    return out;
}

ImageTensor avgpool_forward(const ImageTensor& x, double beta, double bias) {
    if (x.height % 2 != 0 || x.width % 2 != 0) {
        throw InvalidInput("avgpool_forward requires even spatial dims, got " +
                           std::to_string(x.height) + "x" + std::to_string(x.width));
    }
    ImageTensor out(x.channels, x.height / 2, x.width / 2);
    for (std::size_t c = 0; c < x.channels; ++c) {
        for (std::size_t y = 0; y < out.height; ++y) {
            for (std::size_t xx = 0; xx < out.width; ++xx) {
                const double sum = x.at(c, 2 * y, 2 * xx) + x.at(c, 2 * y, 2 * xx + 1) +
                                   x.at(c, 2 * y + 1, 2 * xx) + x.at(c, 2 * y + 1, 2 * xx + 1);
                out.at(c, y, xx) = std::tanh(beta * sum + bias);
            }
        }
    }
    return out;
}

std::vector<double> extract_features(const ImageTensor& image, const NetworkSpec& spec,
                                     const WeightStore& weights) {
    if (image.channels != 1 || image.height != NetworkSpec::kInputSize ||
        image.width != NetworkSpec::kInputSize) {
        throw InvalidInput("extract_features expects a 1x32x32 input image");
    }
    if (weights.conv.size() != spec.stages() || weights.pool.size() != spec.stages()) {
        throw InvalidInput("weight store does not match the network structure");
    }
    ImageTensor t = image;
    for (std::size_t s = 0; s < spec.stages(); ++s) {
        t = conv_forward(t, weights.conv[s]);
        t = avgpool_forward(t, weights.pool[s].beta, weights.pool[s].bias);
    }
    return t.data; // already channel-major
}

Matrix extract_features_batch(const std::vector<ImageTensor>& images, const NetworkSpec& spec,
                              const WeightStore& weights) {
    if (images.empty()) throw InvalidInput("extract_features_batch requires images");
    Matrix out(images.size(), spec.feature_dim());
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto row = extract_features(images[i], spec, weights);
        for (std::size_t j = 0; j < row.size(); ++j) out(i, j) = row[j];
    }
    return out;
}

WeightStore seeded_weights(const NetworkSpec& spec, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, 0xC0FFEE);
    WeightStore store;
    std::size_t in_channels = 1;
    for (std::size_t out_channels : spec.conv_channels) {
        ConvWeights layer;
        layer.out_channels = out_channels;
        layer.in_channels = in_channels;
        const std::size_t fan_in =
            in_channels * NetworkSpec::kKernel * NetworkSpec::kKernel;
        const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
        layer.kernels.resize(out_channels * in_channels * NetworkSpec::kKernel *
                             NetworkSpec::kKernel);
        for (double& v : layer.kernels) v = rng.uniform(-s, s);
        layer.biases.assign(out_channels, 0.0);
        for (double& v : layer.biases) v = rng.uniform(-s, s);
        store.conv.push_back(std::move(layer));
        store.pool.push_back(PoolWeights{});
        in_channels = out_channels;
    }
    return store;
}

WeightStore frozen_weights(const NetworkSpec& spec, const WeightSource& source) {
    if (source.type == WeightSource::Type::Seed) {
        return seeded_weights(spec, source.seed);
    }
    return load_weights(spec, source.path);
}

void save_weights(const NetworkSpec& spec, const WeightStore& weights,
                  const std::filesystem::path& path) {
    json doc;
    doc["format_version"] = kWeightsFormatVersion;
    doc["structure_string"] = spec.structure;
    json convs = json::array();
    for (const auto& layer : weights.conv) {
        json kernels = json::array(); // out x in x 5 x 5 nested
        for (std::size_t o = 0; o < layer.out_channels; ++o) {
            json per_in = json::array();
            for (std::size_t i = 0; i < layer.in_channels; ++i) {
                json rows = json::array();
                for (std::size_t ky = 0; ky < NetworkSpec::kKernel; ++ky) {
                    json row = json::array();
                    for (std::size_t kx = 0; kx < NetworkSpec::kKernel; ++kx) {
                        row.push_back(layer.kernel_at(o, i, ky, kx));
                    }
                    rows.push_back(std::move(row));
                }
                per_in.push_back(std::move(rows));
            }
            kernels.push_back(std::move(per_in));
        }
        convs.push_back(json{{"kernels", std::move(kernels)}, {"biases", layer.biases}});
    }
    doc["conv_layers"] = std::move(convs);
    json pools = json::array();
    for (const auto& p : weights.pool) {
        pools.push_back(json{{"beta", p.beta}, {"bias", p.bias}});
    }
    doc["pool_layers"] = std::move(pools);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open weight file for writing: " + path.string());
    out << doc.dump(2) << '\n';
}

WeightStore load_weights(const NetworkSpec& spec, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open weight file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();

    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw DataError("weight file parse error: " + std::string(e.what()));
    }

    try {
        if (doc.at("format_version").get<int>() != kWeightsFormatVersion) {
            throw DataError("unsupported weight file format_version");
        }
        if (doc.at("structure_string").get<std::string>() != spec.structure) {
            throw DataError("weight file was saved for structure \"" +
                            doc.at("structure_string").get<std::string>() +
                            "\", expected \"" + spec.structure + "\"");
        }
        const auto& convs = doc.at("conv_layers");
        const auto& pools = doc.at("pool_layers");
        if (convs.size() != spec.stages() || pools.size() != spec.stages()) {
            throw DataError("weight file has " + std::to_string(convs.size()) +
                            " conv layers, structure expects " +
                            std::to_string(spec.stages()));
        }

        WeightStore store;
        std::size_t in_channels = 1;
        for (std::size_t s = 0; s < spec.stages(); ++s) {
            const std::size_t out_channels = spec.conv_channels[s];
            ConvWeights layer;
            layer.out_channels = out_channels;
            layer.in_channels = in_channels;
            const auto& kernels = convs[s].at("kernels");
            constexpr std::size_t k = NetworkSpec::kKernel;
            if (kernels.size() != out_channels) {
                throw DataError("conv layer " + std::to_string(s) + ": expected " +
                                std::to_string(out_channels) + " kernels, found " +
                                std::to_string(kernels.size()));
            }
            layer.kernels.resize(out_channels * in_channels * k * k);
            for (std::size_t o = 0; o < out_channels; ++o) {
                if (kernels[o].size() != in_channels) {
                    throw DataError("conv layer " + std::to_string(s) + " kernel " +
                                    std::to_string(o) + ": expected " +
                                    std::to_string(in_channels) + " input channels, found " +
                                    std::to_string(kernels[o].size()));
                }
                for (std::size_t i = 0; i < in_channels; ++i) {
                    const auto& rows = kernels[o][i];
                    if (rows.size() != k) {
                        throw DataError("conv layer " + std::to_string(s) +
                                        ": kernel rows must be 5");
                    }
                    for (std::size_t ky = 0; ky < k; ++ky) {
                        if (rows[ky].size() != k) {
                            throw DataError("conv layer " + std::to_string(s) +
                                            ": kernel cols must be 5");
                        }
                        for (std::size_t kx = 0; kx < k; ++kx) {
                            layer.kernels[((o * in_channels + i) * k + ky) * k + kx] =
                                rows[ky][kx].get<double>();
                        }
                    }
                }
            }
            layer.biases = convs[s].at("biases").get<std::vector<double>>();
            if (layer.biases.size() != out_channels) {
                throw DataError("conv layer " + std::to_string(s) + ": expected " +
                                std::to_string(out_channels) + " biases, found " +
                                std::to_string(layer.biases.size()));
            }
            for (double v : layer.kernels) {
                if (!std::isfinite(v)) {
                    throw DataError("conv layer " + std::to_string(s) +
                                    " contains non-finite weights");
                }
            }
            store.conv.push_back(std::move(layer));
            store.pool.push_back(PoolWeights{pools[s].at("beta").get<double>(),
                                             pools[s].at("bias").get<double>()});
            in_channels = out_channels;
        }
        return store;
    } catch (const json::exception& e) {
        throw DataError("weight file field error: " + std::string(e.what()));
    }
}

} // namespace choaelm
