#pragma once

#include <numbers>

namespace nlsvqa {

/// Box constraint applied identically to every parameter component.
struct Bounds {
    double lower = -2.0 * std::numbers::pi;
    double upper = 2.0 * std::numbers::pi;

    bool contains(double x) const { return x >= lower && x <= upper; }
    double clamp(double x) const { return x < lower ? lower : (x > upper ? upper : x); }

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

} // namespace nlsvqa
