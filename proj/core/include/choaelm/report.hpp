#pragma once

#include "choaelm/feature_file.hpp"
#include "choaelm/pipeline.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace choaelm {

struct EvalOptions {
    std::vector<double> thresholds = {0.1, 0.2, 0.3, 0.4};
    double ci_p = 1.96; // 95% interval
    Split split = Split::Test;
};

/// Write report.json plus roc.csv, pr.csv, epg_hist.csv and thresholds.csv
/// into out_dir. Returns the report JSON text. config_echo_json is embedded
/// verbatim so the report is rerunnable from its own header.
std::string write_eval_report(const TrainedDetector& detector, const FeatureSet& features,
                              const EvalOptions& options,
                              const std::filesystem::path& out_dir,
                              const std::string& config_echo_json);

/// Shortest round-trip decimal rendering, used for all CSV numerics.
std::string format_double(double v);

/// Temp-file-plus-rename write.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace choaelm
