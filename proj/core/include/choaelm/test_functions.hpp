#pragma once

#include <cmath>
#include <vector>

namespace choaelm {

/// Classic benchmark objectives, minimum 0 at the origin.
inline double sphere(const std::vector<double>& x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

inline double rastrigin(const std::vector<double>& x) {
    constexpr double two_pi = 6.28318530717958647692;
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(two_pi * v);
    return sum;
}

} // namespace choaelm
