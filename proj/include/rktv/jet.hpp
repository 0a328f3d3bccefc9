#pragma once

// Second-order Taylor jets with respect to a single scalar (time).
// A Jet carries (value, d/dt, d2/dt2) and propagates them through
// arithmetic by the truncated-Taylor product/chain rules.

#include <cmath>

namespace rktv::ad {

struct Jet {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    constexpr Jet() = default;
    constexpr Jet(double v, double d1 = 0.0, double d2 = 0.0) : v(v), d1(d1), d2(d2) {}

    // The time variable itself: t + dt.
    static constexpr Jet variable(double t) { return Jet{t, 1.0, 0.0}; }
};

constexpr Jet operator+(const Jet& a, const Jet& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

constexpr Jet operator-(const Jet& a, const Jet& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

constexpr Jet operator-(const Jet& a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v,
            a.v * b.d1 + a.d1 * b.v,
            a.v * b.d2 + 2.0 * a.d1 * b.d1 + a.d2 * b.v};
}

constexpr Jet operator*(double c, const Jet& a) { return {c * a.v, c * a.d1, c * a.d2}; }
constexpr Jet operator*(const Jet& a, double c) { return c * a; }
constexpr Jet operator+(const Jet& a, double c) { return {a.v + c, a.d1, a.d2}; }
constexpr Jet operator+(double c, const Jet& a) { return a + c; }
constexpr Jet operator-(const Jet& a, double c) { return {a.v - c, a.d1, a.d2}; }

inline Jet sin(const Jet& a) {
    const double s = std::sin(a.v);
    const double c = std::cos(a.v);
    return {s, c * a.d1, -s * a.d1 * a.d1 + c * a.d2};
}

inline Jet cos(const Jet& a) {
    const double s = std::sin(a.v);
    const double c = std::cos(a.v);
    return {c, -s * a.d1, -c * a.d1 * a.d1 - s * a.d2};
}

inline bool is_finite(const Jet& a) {
    return std::isfinite(a.v) && std::isfinite(a.d1) && std::isfinite(a.d2);
}

}  // namespace rktv::ad
