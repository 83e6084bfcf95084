#include "choaelm/report.hpp"

#include "choaelm/errors.hpp"
#include "choaelm/metrics.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

namespace choaelm {

namespace {

using nlohmann::json;

constexpr int kReportFormatVersion = 1;

json rate_or_null(const std::optional<double>& r) {
    return r ? json(*r) : json(nullptr);
}

} // namespace

std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw NumericError("failed to format a double");
    return std::string(buf.data(), ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot open for writing: " + path.string());
        out << content;
        if (!out) throw DataError("failed writing: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string write_eval_report(const TrainedDetector& detector, const FeatureSet& features,
                              const EvalOptions& options,
                              const std::filesystem::path& out_dir,
                              const std::string& config_echo_json) {
    if (options.thresholds.empty()) {
        throw InvalidInput("eval needs at least one threshold");
    }
    std::filesystem::create_directories(out_dir);

    const auto t0 = std::chrono::steady_clock::now();
    auto [x, truth] = select_split(features, options.split);
    const std::vector<double> epgs = predict_epg(detector, x);
    const double eval_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::size_t n_pos = 0, n_neg = 0;
    for (int t : truth) (t != 0 ? n_pos : n_neg)++;

    // Per-threshold rate table with the binomial interval half-widths.
    json threshold_rows = json::array();
    std::ostringstream threshold_csv;
    threshold_csv << "threshold,tp,fn,fp,tn,sensitivity,specificity,precision,accuracy,f1,"
                     "sensitivity_ci,specificity_ci\n";
    for (double th : options.thresholds) {
        const ConfusionMatrix cm = confusion(truth, classify(epgs, th));
        const Rates r = rates(cm);
        json row;
        row["threshold"] = th;
        row["confusion"] = {{"tp", cm.tp}, {"fn", cm.fn}, {"fp", cm.fp}, {"tn", cm.tn}};
        row["sensitivity"] = rate_or_null(r.sensitivity);
        row["specificity"] = rate_or_null(r.specificity);
        row["precision"] = rate_or_null(r.precision);
        row["accuracy"] = rate_or_null(r.accuracy);
        row["f1"] = rate_or_null(r.f1);
        row["sensitivity_ci"] =
            r.sensitivity ? json(confidence_interval(*r.sensitivity, n_pos, options.ci_p))
                          : json(nullptr);
        row["specificity_ci"] =
            r.specificity ? json(confidence_interval(*r.specificity, n_neg, options.ci_p))
                          : json(nullptr);
        threshold_rows.push_back(std::move(row));

        auto cell = [](const std::optional<double>& v) {
            return v ? format_double(*v) : std::string("undefined");
        };
        threshold_csv << format_double(th) << ',' << cm.tp << ',' << cm.fn << ',' << cm.fp
                      << ',' << cm.tn << ',' << cell(r.sensitivity) << ','
                      << cell(r.specificity) << ',' << cell(r.precision) << ','
                      << cell(r.accuracy) << ',' << cell(r.f1) << ','
                      << (r.sensitivity
                              ? format_double(confidence_interval(*r.sensitivity, n_pos,
                                                                  options.ci_p))
                              : std::string("undefined"))
                      << ','
                      << (r.specificity
                              ? format_double(confidence_interval(*r.specificity, n_neg,
                                                                  options.ci_p))
                              : std::string("undefined"))
                      << '\n';
    }

    const CurveData roc = curve(truth, epgs, CurveKind::Roc);
    const CurveData pr = curve(truth, epgs, CurveKind::Pr);
    const double auc_value = auc_checked(truth, epgs);

    std::ostringstream roc_csv;
    roc_csv << "threshold,fpr,tpr\n";
    for (const auto& p : roc) {
        roc_csv << format_double(p.threshold) << ',' << format_double(p.x) << ','
                << format_double(p.y) << '\n';
    }
    std::ostringstream pr_csv;
    pr_csv << "threshold,recall,precision\n";
    for (const auto& p : pr) {
        pr_csv << format_double(p.threshold) << ',' << format_double(p.x) << ','
               << format_double(p.y) << '\n';
    }

    // Score histogram per class, 20 bins over [0, 1].
    constexpr std::size_t kBins = 20;
    std::array<std::size_t, kBins> pos_bins{}, neg_bins{};
    for (std::size_t i = 0; i < epgs.size(); ++i) {
        auto bin = static_cast<std::size_t>(epgs[i] * kBins);
        if (bin >= kBins) bin = kBins - 1;
        (truth[i] != 0 ? pos_bins : neg_bins)[bin]++;
    }
    std::ostringstream hist_csv;
    hist_csv << "bin_lo,bin_hi,positives,negatives\n";
    for (std::size_t b = 0; b < kBins; ++b) {
        hist_csv << format_double(static_cast<double>(b) / kBins) << ','
                 << format_double(static_cast<double>(b + 1) / kBins) << ',' << pos_bins[b]
                 << ',' << neg_bins[b] << '\n';
    }

    json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["kind"] = "eval_report";
    doc["config_echo"] =
        config_echo_json.empty() ? json::object() : json::parse(config_echo_json);
    doc["split"] = options.split == Split::Train ? "train" : "test";
    doc["num_samples"] = truth.size();
    doc["num_positives"] = n_pos;
    doc["num_negatives"] = n_neg;
    doc["ci_p"] = options.ci_p;
    doc["thresholds"] = std::move(threshold_rows);
    doc["auc_roc"] = auc_value;
    doc["curves"] = {{"roc_csv", "roc.csv"}, {"pr_csv", "pr.csv"}};
    doc["epg_histogram_csv"] = "epg_hist.csv";
    doc["optimizer_trace"] = detector.training.trace;
    doc["timing"] = {
        {"eval_seconds", eval_seconds},
        {"per_image_ms", truth.empty() ? 0.0 : 1000.0 * eval_seconds / truth.size()},
    };
    const std::string report = doc.dump(2);

    write_text_atomic(out_dir / "roc.csv", roc_csv.str());
    write_text_atomic(out_dir / "pr.csv", pr_csv.str());
    write_text_atomic(out_dir / "epg_hist.csv", hist_csv.str());
    write_text_atomic(out_dir / "thresholds.csv", threshold_csv.str());
    write_text_atomic(out_dir / "report.json", report);
    return report;
}

} // namespace choaelm
