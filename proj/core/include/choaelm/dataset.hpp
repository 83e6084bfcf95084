#pragma once

#include "choaelm/cnn.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace choaelm {

enum class Label : int { Negative = 0, Positive = 1 };
enum class Split { Train, Test };

struct ManifestRecord {
    std::string image_path;
    Label label;
    Split split;
};

struct Manifest {
    std::vector<ManifestRecord> records;
};

/// CSV with header `path,label,split`. Label tokens (case-insensitive):
/// covid / positive / 1 map to positive; normal / pneumonia / negative / 0 map
/// to negative. Paths must be unique and the train split must contain both
/// classes.
Manifest load_manifest(const std::filesystem::path& path);

/// Binary 8-bit PGM (P5, maxval 255) loaded as a 1xHxW tensor scaled to [0, 1].
ImageTensor load_pgm(const std::filesystem::path& path);

/// Write a single-channel tensor as binary PGM, rounding to 8 bits.
void save_pgm(const ImageTensor& image, const std::filesystem::path& path);

/// Bilinear resample with half-pixel-centered sampling.
ImageTensor resize_bilinear(const ImageTensor& image, std::size_t height, std::size_t width);

/// Deterministic x5 expansion: original, horizontal flip, and three integer
/// translations of up to +-3 px (zero-padded).
std::vector<ImageTensor> augment(const ImageTensor& image, std::uint64_t seed);

struct SynthOptions {
    std::size_t train_per_class = 100;
    std::size_t test_per_class = 100;
    std::size_t image_size = 40;
    std::uint64_t seed = 7;
};

/// Built-in synthetic grayscale dataset: a blurred blob whose position encodes
/// the class, plus background noise. Writes PGM images and manifest.csv under
/// out_dir, so the whole pipeline runs with zero external data.
void generate_synthetic_dataset(const std::filesystem::path& out_dir,
                                const SynthOptions& options);

} // namespace choaelm
