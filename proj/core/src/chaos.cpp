#include "choaelm/chaos.hpp"

#include "choaelm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace choaelm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double fract(double x) { return x - std::floor(x); }

double apply_map(ChaoticMapKind kind, double x, std::uint64_t index) {
    switch (kind) {
    case ChaoticMapKind::Chebyshev:
        return std::cos(static_cast<double>(index) * std::acos(x));
    case ChaoticMapKind::GaussMouse: {
        // 1/x mod 1, with any state of zero fractional part mapping to 1 so
        // the recurrence stays total.
        const double f = fract(x);
        if (f == 0.0) return 1.0;
        return fract(1.0 / f);
    }
    case ChaoticMapKind::Singer:
        return 1.07 * (7.86 * x - 23.31 * x * x + 28.75 * x * x * x -
                       13.302875 * x * x * x * x);
    case ChaoticMapKind::Bernoulli:
        return fract(2.0 * x);
    case ChaoticMapKind::Sine:
        return std::sin(kPi * x); // a/4 with a = 4
    case ChaoticMapKind::Circle:
        return fract(x + 0.2 - (0.5 / (2.0 * kPi)) * std::sin(2.0 * kPi * x));
    }
    throw InvalidInput("unknown chaotic map");
}

} // namespace

MapRange chaotic_map_range(ChaoticMapKind kind) {
    return kind == ChaoticMapKind::Chebyshev ? MapRange{-1.0, 1.0} : MapRange{0.0, 1.0};
}

std::string_view chaotic_map_name(ChaoticMapKind kind) {
    switch (kind) {
    case ChaoticMapKind::Chebyshev: return "chebyshev";
    case ChaoticMapKind::GaussMouse: return "gauss";
    case ChaoticMapKind::Singer: return "singer";
    case ChaoticMapKind::Bernoulli: return "bernoulli";
    case ChaoticMapKind::Sine: return "sine";
    case ChaoticMapKind::Circle: return "circle";
    }
    return "?";
}

std::optional<ChaoticMapKind> chaotic_map_from_name(std::string_view name) {
    for (ChaoticMapKind kind : all_chaotic_maps()) {
        if (name == chaotic_map_name(kind)) return kind;
    }
    return std::nullopt;
}

const std::vector<ChaoticMapKind>& all_chaotic_maps() {
    static const std::vector<ChaoticMapKind> kinds = {
        ChaoticMapKind::Chebyshev, ChaoticMapKind::GaussMouse, ChaoticMapKind::Singer,
        ChaoticMapKind::Bernoulli, ChaoticMapKind::Sine,       ChaoticMapKind::Circle,
    };
    return kinds;
}

ChaoticStream::ChaoticStream(ChaoticMapKind kind, double seed)
    : kind_(kind), state_(seed), index_(1) {
    const MapRange range = chaotic_map_range(kind);
    if (!(seed >= range.lo && seed <= range.hi)) {
        throw InvalidInput("chaotic seed " + std::to_string(seed) + " outside [" +
                           std::to_string(range.lo) + ", " + std::to_string(range.hi) +
                           "] for map " + std::string(chaotic_map_name(kind)));
    }
}

namespace {

// States each recurrence cannot leave on its own (or, for Sine, the
// boundary that funnels straight into one).
bool is_absorbing(ChaoticMapKind kind, double v) {
    switch (kind) {
    case ChaoticMapKind::Chebyshev: return v == 1.0 || v == -1.0;
    case ChaoticMapKind::Singer: return v == 0.0;
    case ChaoticMapKind::Bernoulli: return v == 0.0;
    case ChaoticMapKind::Sine: return v == 0.0 || v == 1.0;
    case ChaoticMapKind::GaussMouse: return false; // 1 -> 1, caught as a stall below
    case ChaoticMapKind::Circle: return false;     // no fixed points
    }
    return false;
}

} // namespace

double ChaoticStream::step() {
    const MapRange range = chaotic_map_range(kind_);
    const double raw = apply_map(kind_, state_, index_);
    const double emitted = std::clamp(raw, range.lo, range.hi);

    // Rescue absorbing states right away, and any stalled orbit (new state
    // equal to the old one) on its second visit.
    double stored = emitted;
    if (is_absorbing(kind_, stored) || stored == state_) {
        stored = stored >= 0.5 * (range.lo + range.hi) ? stored - kRescueEps
                                                       : stored + kRescueEps;
        stored = std::clamp(stored, range.lo + kRescueEps, range.hi - kRescueEps);
    }
    state_ = stored;
    ++index_;
    return emitted;
}

double ChaoticStream::step_unit() {
    const double v = step();
    if (kind_ == ChaoticMapKind::Chebyshev) {
        return 0.5 * (v + 1.0);
    }
    return v;
}

std::vector<double> chaotic_sequence(ChaoticMapKind kind, double seed, std::size_t n) {
    if (n == 0) throw InvalidInput("chaotic sequence length must be at least 1");
    ChaoticStream stream(kind, seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(stream.step());
    return out;
}

} // namespace choaelm
