#pragma once

#include "choaelm/dataset.hpp"
#include "choaelm/matrix.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace choaelm {

/// Extracted feature matrix plus the per-row label/split bookkeeping the
/// training and evaluation stages need.
struct FeatureSet {
    Matrix features; // one row per sample
    std::vector<Label> labels;
    std::vector<Split> splits;
    std::string structure;
    std::string config_echo_json; // full extraction config, echoed verbatim

    void validate() const;
};

/// Binary layout: magic "DCEF", u32 rows, u32 cols, row-major little-endian
/// f64 payload, then a u64-length-prefixed JSON metadata blob carrying labels,
/// splits, the structure string and the config echo. Written atomically.
void save_features(const FeatureSet& set, const std::filesystem::path& path);
FeatureSet load_features(const std::filesystem::path& path);

/// Rows of one split, with labels as 1 (positive) / 0 (negative).
std::pair<Matrix, std::vector<int>> select_split(const FeatureSet& set, Split split);

/// One-hot targets: positive -> (1, 0), negative -> (0, 1).
Matrix one_hot_targets(const std::vector<int>& labels);

} // namespace choaelm
