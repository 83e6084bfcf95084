#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace choaelm {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;

    std::size_t positives() const { return tp + fn; }
    std::size_t negatives() const { return tn + fp; }
    std::size_t total() const { return tp + fn + fp + tn; }
};

/// Count the four cells; labels are 1 = positive, 0 = negative.
ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& pred);

/// Standard rates. A cell with a zero denominator yields an empty optional
/// rather than NaN, so degenerate class balances surface explicitly.
struct Rates {
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> precision;
    std::optional<double> accuracy;
    std::optional<double> f1;
};

Rates rates(const ConfusionMatrix& cm);

enum class CurveKind { Roc, Pr };

/// One sweep point. For ROC x = FPR, y = TPR; for PR x = recall, y = precision
/// (1.0 by convention when nothing is predicted positive).
struct CurvePoint {
    double threshold;
    double x;
    double y;
};
using CurveData = std::vector<CurvePoint>;

/// Threshold sweep over all distinct scores plus sentinels above the top score
/// and at zero; prediction is positive iff score >= threshold. Consecutive
/// duplicate points are dropped.
CurveData curve(const std::vector<int>& truth, const std::vector<double>& scores,
                CurveKind kind);

/// Trapezoidal area under an ROC curve (over FPR in [0, 1]).
double auc(const CurveData& roc);

/// Tie-corrected rank (Mann-Whitney) route to the same area.
double auc_rank(const std::vector<int>& truth, const std::vector<double>& scores);

/// Computes both routes, insists they agree to 1e-10, returns the trapezoid.
double auc_checked(const std::vector<int>& truth, const std::vector<double>& scores);

/// Half-width of the binomial confidence interval: p * sqrt(rate*(1-rate)/n).
double confidence_interval(double rate, std::size_t n, double p = 1.96);

struct WilcoxonResult {
    double u_statistic; // U of the first sample, tie-corrected
    double p_value;     // two-sided
};

/// Rank-sum test: exact enumeration up to 12 pooled values, otherwise the
/// normal approximation with tie and continuity corrections.
WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

} // namespace choaelm
