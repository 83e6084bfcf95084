#include "choaelm/metrics.hpp"

#include "choaelm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace choaelm {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

// Midranks of the pooled sample, then U of the first group:
// U = R_a - n_a(n_a+1)/2, counting tied cross-pairs as 1/2.
double u_statistic(const std::vector<double>& pooled, const std::vector<char>& in_a,
                   std::size_t na) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });

    double rank_sum_a = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (in_a[order[k]]) rank_sum_a += midrank;
        }
        i = j + 1;
    }
    return rank_sum_a - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.size() != pred.size()) {
        throw InvalidInput("confusion: label vectors differ in length");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] != 0) {
            pred[i] != 0 ? ++cm.tp : ++cm.fn;
        } else {
            pred[i] != 0 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

Rates rates(const ConfusionMatrix& cm) {
    Rates r;
    r.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    r.specificity = ratio(cm.tn, cm.tn + cm.fp);
    r.precision = ratio(cm.tp, cm.tp + cm.fp);
    r.accuracy = ratio(cm.tp + cm.tn, cm.total());
    if (r.precision && r.sensitivity && (*r.precision + *r.sensitivity) > 0.0) {
        r.f1 = 2.0 * *r.precision * *r.sensitivity / (*r.precision + *r.sensitivity);
    }
    return r;
}

CurveData curve(const std::vector<int>& truth, const std::vector<double>& scores,
                CurveKind kind) {
    if (truth.size() != scores.size()) {
        throw InvalidInput("curve: truth and scores differ in length");
    }
    if (truth.empty()) throw InvalidInput("curve: empty input");
    for (double s : scores) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw InvalidInput("curve: scores must lie in [0, 1]");
        }
    }

    std::size_t n_pos = 0, n_neg = 0;
    for (int t : truth) (t != 0 ? n_pos : n_neg)++;

    // Sort by descending score; sweep thresholds through the distinct scores
    // plus a sentinel above everything and one at zero.
    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<double> thresholds;
    thresholds.push_back(std::nextafter(1.0, 2.0));
    for (std::size_t i : order) {
        if (thresholds.back() != scores[i]) thresholds.push_back(scores[i]);
    }
    if (thresholds.back() != 0.0) thresholds.push_back(0.0);

    CurveData out;
    std::size_t tp = 0, fp = 0, consumed = 0;
    for (double th : thresholds) {
        while (consumed < order.size() && scores[order[consumed]] >= th) {
            (truth[order[consumed]] != 0 ? tp : fp)++;
            ++consumed;
        }
        double x, y;
        if (kind == CurveKind::Roc) {
            x = n_neg ? static_cast<double>(fp) / static_cast<double>(n_neg) : 0.0;
            y = n_pos ? static_cast<double>(tp) / static_cast<double>(n_pos) : 0.0;
        } else {
            x = n_pos ? static_cast<double>(tp) / static_cast<double>(n_pos) : 0.0;
            y = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 1.0;
        }
        if (!out.empty() && out.back().x == x && out.back().y == y) continue;
        out.push_back(CurvePoint{th, x, y});
    }
    return out;
}

double auc(const CurveData& roc) {
    if (roc.size() < 2) return 0.0;
    double area = 0.0;
    for (std::size_t i = 1; i < roc.size(); ++i) {
        area += (roc[i].x - roc[i - 1].x) * 0.5 * (roc[i].y + roc[i - 1].y);
    }
    return area;
}

double auc_rank(const std::vector<int>& truth, const std::vector<double>& scores) {
    if (truth.size() != scores.size()) {
        throw InvalidInput("auc_rank: truth and scores differ in length");
    }
    std::size_t n_pos = 0, n_neg = 0;
    for (int t : truth) (t != 0 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) {
        throw InvalidInput("auc_rank requires both classes present");
    }
    std::vector<char> in_a(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) in_a[i] = truth[i] != 0 ? 1 : 0;
    const double u = u_statistic(scores, in_a, n_pos);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double auc_checked(const std::vector<int>& truth, const std::vector<double>& scores) {
    const double trapezoid = auc(curve(truth, scores, CurveKind::Roc));
    const double ranked = auc_rank(truth, scores);
    if (std::abs(trapezoid - ranked) > 1e-10) {
        throw NumericError("AUC routes disagree: trapezoid " + std::to_string(trapezoid) +
                           " vs rank " + std::to_string(ranked));
    }
    return trapezoid;
}

double confidence_interval(double rate, std::size_t n, double p) {
    if (n == 0) throw InvalidInput("confidence_interval requires n >= 1");
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw InvalidInput("confidence_interval requires rate in [0, 1]");
    }
    return p * std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
}

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw InvalidInput("wilcoxon_rank_sum requires two non-empty samples");
    }
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<char> in_a(n, 0);
    std::fill(in_a.begin(), in_a.begin() + static_cast<std::ptrdiff_t>(na), char{1});

    const double u_obs = u_statistic(pooled, in_a, na);
    const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
    const double dev = std::abs(u_obs - mu);

    if (n <= 12) {
        // Exact permutation distribution: every assignment of na labels to the
        // pooled values is equally likely under the null.
        std::size_t extreme = 0, count = 0;
        std::vector<char> mask(n, 0);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(na), char{1});
        // iterate all combinations via prev_permutation on the mask
        do {
            const double u = u_statistic(pooled, mask, na);
            if (std::abs(u - mu) >= dev - 1e-12) ++extreme;
            ++count;
        } while (std::prev_permutation(mask.begin(), mask.end()));
        return WilcoxonResult{u_obs, static_cast<double>(extreme) / static_cast<double>(count)};
    }

    // Tie-corrected variance.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double nd = static_cast<double>(n);
    const double var = (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
                       ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (var <= 0.0) {
        return WilcoxonResult{u_obs, 1.0}; // all pooled values identical
    }
    const double cc = dev > 0.5 ? 0.5 : dev; // continuity correction
    const double z = (dev - cc) / std::sqrt(var);
    const double p = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    return WilcoxonResult{u_obs, p};
}

} // namespace choaelm
