#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace choaelm {

/// The six chaotic recurrences used for the m coefficient and for chaotic
/// repositioning. Chebyshev lives on [-1, 1], all others on [0, 1].
enum class ChaoticMapKind { Chebyshev, GaussMouse, Singer, Bernoulli, Sine, Circle };

struct MapRange {
    double lo;
    double hi;
};

MapRange chaotic_map_range(ChaoticMapKind kind);
std::string_view chaotic_map_name(ChaoticMapKind kind); // lowercase CLI name
std::optional<ChaoticMapKind> chaotic_map_from_name(std::string_view name);
const std::vector<ChaoticMapKind>& all_chaotic_maps();

/// A single chaotic orbit stepped one value at a time. The object is a plain
/// value: copy it to fork the orbit, step it to advance.
///
/// Each step applies the map's recurrence, clamps the result into the closed
/// range, and then nudges boundary states by 1e-9 toward the interior so the
/// orbit never sticks to an absorbing point. The emitted value is the
/// pre-nudge (clamped) result; the nudge only affects the stored state.
class ChaoticStream {
public:
    static constexpr double kDefaultSeed = 0.7;
    static constexpr double kRescueEps = 1e-9;

    explicit ChaoticStream(ChaoticMapKind kind, double seed = kDefaultSeed);

    ChaoticMapKind kind() const { return kind_; }
    double state() const { return state_; }
    std::uint64_t iteration_index() const { return index_; }

    /// Advance one step and return the new value (within the closed range).
    double step();

    /// Next value rescaled into [0, 1]; Chebyshev is mapped affinely from
    /// [-1, 1], the other maps already live there.
    double step_unit();

private:
    ChaoticMapKind kind_;
    double state_;
    std::uint64_t index_; // running index consumed by the Chebyshev recurrence
};

/// The n successive values of repeated stepping from the given seed.
std::vector<double> chaotic_sequence(ChaoticMapKind kind, double seed, std::size_t n);

} // namespace choaelm
