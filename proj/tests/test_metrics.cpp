#include "choaelm/metrics.hpp"

#include "choaelm/errors.hpp"
#include "choaelm/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace choaelm;

namespace {

// Build label/prediction vectors realizing a target confusion matrix.
void fill_case(std::size_t n, int truth_value, int pred_value, std::vector<int>& truth,
               std::vector<int>& pred) {
    for (std::size_t i = 0; i < n; ++i) {
        truth.push_back(truth_value);
        pred.push_back(pred_value);
    }
}

// Naive O(n^2) sweep used as the curve oracle.
CurveData brute_force_curve(const std::vector<int>& truth, const std::vector<double>& scores,
                            CurveKind kind) {
    std::set<double, std::greater<>> levels;
    levels.insert(std::nextafter(1.0, 2.0));
    for (double s : scores) levels.insert(s);
    levels.insert(0.0);

    std::size_t n_pos = 0, n_neg = 0;
    for (int t : truth) (t != 0 ? n_pos : n_neg)++;

    CurveData out;
    for (double th : levels) {
        std::size_t tp = 0, fp = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (scores[i] >= th) (truth[i] != 0 ? tp : fp)++;
        }
        double x, y;
        if (kind == CurveKind::Roc) {
            x = static_cast<double>(fp) / static_cast<double>(n_neg);
            y = static_cast<double>(tp) / static_cast<double>(n_pos);
        } else {
            x = static_cast<double>(tp) / static_cast<double>(n_pos);
            y = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 1.0;
        }
        if (!out.empty() && out.back().x == x && out.back().y == y) continue;
        out.push_back({th, x, y});
    }
    return out;
}

// Direct pair-count AUC oracle: wins + half-ties over all pos/neg pairs.
double pair_count_auc(const std::vector<int>& truth, const std::vector<double>& scores) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 0) continue;
        for (std::size_t j = 0; j < truth.size(); ++j) {
            if (truth[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

} // namespace

TEST_CASE("confusion counts the four cells") {
    std::vector<int> truth, pred;
    fill_case(99, 1, 1, truth, pred);   // tp
    fill_case(1, 1, 0, truth, pred);    // fn
    fill_case(290, 0, 1, truth, pred);  // fp
    fill_case(2710, 0, 0, truth, pred); // tn
    const ConfusionMatrix cm = confusion(truth, pred);
    CHECK(cm.tp == 99);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 290);
    CHECK(cm.tn == 2710);
    CHECK(cm.positives() == 100);
    CHECK(cm.negatives() == 3000);

    CHECK_THROWS_AS(confusion({1, 0}, {1}), InvalidInput);
}

TEST_CASE("perfect and all-positive predictors") {
    const std::vector<int> truth{1, 1, 0, 0};
    const ConfusionMatrix perfect = confusion(truth, truth);
    CHECK(perfect.fn == 0);
    CHECK(perfect.fp == 0);

    const ConfusionMatrix allpos = confusion(truth, {1, 1, 1, 1});
    CHECK(allpos.tn == 0);
    CHECK(allpos.fp == 2);
}

TEST_CASE("rates reproduce the stored confusion matrices") {
    const Rates a = rates(ConfusionMatrix{99, 1, 290, 2710});
    REQUIRE(a.sensitivity.has_value());
    REQUIRE(a.specificity.has_value());
    CHECK(*a.sensitivity == doctest::Approx(0.99).epsilon(1e-12));
    CHECK(*a.specificity == doctest::Approx(2710.0 / 3000.0).epsilon(1e-12));

    const Rates b = rates(ConfusionMatrix{68, 1, 287, 2723});
    CHECK(*b.sensitivity == doctest::Approx(68.0 / 69.0).epsilon(1e-12));

    // No positives at all: sensitivity is explicitly undefined, not NaN.
    const Rates c = rates(ConfusionMatrix{0, 0, 3, 7});
    CHECK(!c.sensitivity.has_value());
    CHECK(!c.f1.has_value());
    CHECK(c.specificity.has_value());
}

TEST_CASE("roc passes through the perfect corner for separable scores") {
    const std::vector<int> truth{1, 1, 0, 0};
    const std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
    const CurveData roc = curve(truth, scores, CurveKind::Roc);
    const bool corner =
        std::any_of(roc.begin(), roc.end(),
                    [](const CurvePoint& p) { return p.x == 0.0 && p.y == 1.0; });
    CHECK(corner);
    CHECK(auc(roc) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant scores collapse the roc onto the diagonal") {
    const std::vector<int> truth{1, 0, 1, 0, 1};
    const std::vector<double> scores(5, 0.37);
    const CurveData roc = curve(truth, scores, CurveKind::Roc);
    REQUIRE(roc.size() == 2);
    CHECK(roc[0].x == 0.0);
    CHECK(roc[0].y == 0.0);
    CHECK(roc[1].x == 1.0);
    CHECK(roc[1].y == 1.0);
    CHECK(auc(roc) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("four-sample hand case matches the exhaustive sweep") {
    const std::vector<int> truth{1, 1, 0, 0};
    const std::vector<double> scores{0.9, 0.4, 0.6, 0.1};
    for (CurveKind kind : {CurveKind::Roc, CurveKind::Pr}) {
        const CurveData got = curve(truth, scores, kind);
        const CurveData want = brute_force_curve(truth, scores, kind);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].threshold == doctest::Approx(want[i].threshold).epsilon(1e-15));
            CHECK(got[i].x == doctest::Approx(want[i].x).epsilon(1e-15));
            CHECK(got[i].y == doctest::Approx(want[i].y).epsilon(1e-15));
        }
    }
    // Pair counting gives 3 wins out of 4 positive/negative pairs.
    CHECK(pair_count_auc(truth, scores) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(auc(curve(truth, scores, CurveKind::Roc)) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(auc_checked(truth, scores) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("curve invariants on random scores") {
    Rng rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<int> truth;
        std::vector<double> scores;
        for (int i = 0; i < 40; ++i) {
            truth.push_back(rng.uniform() < 0.4 ? 1 : 0);
            // Half the repetitions quantize scores to force ties.
            const double s = rng.uniform();
            scores.push_back(rep % 2 == 0 ? std::round(s * 8.0) / 8.0 : s);
        }
        if (std::count(truth.begin(), truth.end(), 1) == 0) truth[0] = 1;
        if (std::count(truth.begin(), truth.end(), 0) == 0) truth[1] = 0;

        const CurveData roc = curve(truth, scores, CurveKind::Roc);
        for (std::size_t i = 1; i < roc.size(); ++i) {
            CHECK(roc[i].threshold < roc[i - 1].threshold);
            CHECK(roc[i].x >= roc[i - 1].x);
            CHECK(roc[i].y >= roc[i - 1].y);
        }
        const CurveData pr = curve(truth, scores, CurveKind::Pr);
        for (std::size_t i = 1; i < pr.size(); ++i) {
            CHECK(pr[i].x >= pr[i - 1].x);
        }
    }
}

TEST_CASE("trapezoid auc equals the tie-corrected rank auc") {
    Rng rng(66);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<int> truth;
        std::vector<double> scores;
        const int n = 10 + static_cast<int>(rng.index(60));
        for (int i = 0; i < n; ++i) {
            truth.push_back(rng.uniform() < 0.5 ? 1 : 0);
            const double s = rng.uniform();
            scores.push_back(rep % 2 == 0 ? std::round(s * 6.0) / 6.0 : s);
        }
        if (std::count(truth.begin(), truth.end(), 1) == 0) truth[0] = 1;
        if (std::count(truth.begin(), truth.end(), 0) == 0) truth[1] = 0;

        const double trapezoid = auc(curve(truth, scores, CurveKind::Roc));
        const double ranked = auc_rank(truth, scores);
        CHECK(std::abs(trapezoid - ranked) < 1e-10);
        CHECK(trapezoid == doctest::Approx(pair_count_auc(truth, scores)).epsilon(1e-10));
    }
}

TEST_CASE("confidence interval reference values") {
    CHECK(confidence_interval(0.98, 100) == doctest::Approx(0.02744).epsilon(2e-4));
    CHECK(confidence_interval(0.8447, 3000) == doctest::Approx(0.012961).epsilon(2e-4));
    CHECK(confidence_interval(0.0, 50) == 0.0);
    CHECK(confidence_interval(1.0, 50) == 0.0);
    CHECK_THROWS_AS(confidence_interval(0.5, 0), InvalidInput);
    CHECK_THROWS_AS(confidence_interval(1.5, 10), InvalidInput);
}

TEST_CASE("confidence interval is symmetric in rate and its complement") {
    Rng rng(77);
    for (int rep = 0; rep < 50; ++rep) {
        const double rate = rng.uniform();
        const std::size_t n = 1 + rng.index(5000);
        CHECK(confidence_interval(rate, n) ==
              doctest::Approx(confidence_interval(1.0 - rate, n)).epsilon(1e-12));
    }
}

namespace {

// Exact enumeration oracle for the separated three-versus-three case.
double enumerate_two_sided_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size();
    const std::size_t na = a.size();

    auto u_of = [&](const std::vector<std::size_t>& subset) {
        double u = 0.0;
        for (std::size_t i : subset) {
            for (std::size_t j = 0; j < n; ++j) {
                const bool j_in_a =
                    std::find(subset.begin(), subset.end(), j) != subset.end();
                if (j_in_a) continue;
                if (pooled[i] > pooled[j]) u += 1.0;
                else if (pooled[i] == pooled[j]) u += 0.5;
            }
        }
        return u;
    };

    std::vector<std::size_t> obs(na);
    for (std::size_t i = 0; i < na; ++i) obs[i] = i;
    const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(n - na);
    const double dev = std::abs(u_of(obs) - mu);

    std::size_t extreme = 0, count = 0;
    std::vector<std::size_t> subset;
    // Enumerate all combinations of indices.
    std::vector<char> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(na), char{1});
    do {
        subset.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) subset.push_back(i);
        }
        if (std::abs(u_of(subset) - mu) >= dev - 1e-12) ++extreme;
        ++count;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return static_cast<double>(extreme) / static_cast<double>(count);
}

} // namespace

TEST_CASE("wilcoxon exact case against the enumeration oracle") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{4.0, 5.0, 6.0};
    const WilcoxonResult r = wilcoxon_rank_sum(a, b);
    CHECK(r.u_statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(enumerate_two_sided_p(a, b) == doctest::Approx(0.1).epsilon(1e-12));

    // Oracle agreement on a tied mixed case as well.
    const std::vector<double> c{1.0, 2.0, 2.0, 5.0};
    const std::vector<double> d{2.0, 3.0, 4.0};
    CHECK(wilcoxon_rank_sum(c, d).p_value ==
          doctest::Approx(enumerate_two_sided_p(c, d)).epsilon(1e-12));
}

TEST_CASE("wilcoxon on identical samples is insignificant") {
    const std::vector<double> a{0.3, 0.5, 0.9, 0.1};
    CHECK(wilcoxon_rank_sum(a, a).p_value >= 0.9);

    // Large identical samples hit the normal branch and stay at p = 1.
    std::vector<double> big(20);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
    CHECK(wilcoxon_rank_sum(big, big).p_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wilcoxon is symmetric under swapping the samples") {
    Rng rng(88);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> a(4 + rng.index(8)), b(4 + rng.index(8));
        for (double& v : a) v = std::round(rng.uniform() * 10.0);
        for (double& v : b) v = std::round(rng.uniform() * 10.0);
        const double pab = wilcoxon_rank_sum(a, b).p_value;
        const double pba = wilcoxon_rank_sum(b, a).p_value;
        CHECK(pab == doctest::Approx(pba).epsilon(1e-12));
        CHECK(pab >= 0.0);
        CHECK(pab <= 1.0);
    }
    CHECK_THROWS_AS(wilcoxon_rank_sum({}, {1.0}), InvalidInput);
}

TEST_CASE("wilcoxon separates clearly shifted large samples") {
    std::vector<double> lo(15), hi(15);
    for (std::size_t i = 0; i < 15; ++i) {
        lo[i] = static_cast<double>(i);
        hi[i] = static_cast<double>(i) + 50.0;
    }
    CHECK(wilcoxon_rank_sum(lo, hi).p_value < 1e-5);
}
