#ifndef TWISTLOOP_DUAL2_HPP
#define TWISTLOOP_DUAL2_HPP

#include <cmath>

namespace twistloop::detail {

// Forward-mode scalar carrying partials in t and z.
struct D2 {
    double v = 0, dt = 0, dz = 0;

    D2() = default;
    D2(double value) : v(value) {}
    D2(double value, double d_t, double d_z) : v(value), dt(d_t), dz(d_z) {}
};

inline D2 operator+(const D2& a, const D2& b) {
    return {a.v + b.v, a.dt + b.dt, a.dz + b.dz};
}
inline D2 operator-(const D2& a, const D2& b) {
    return {a.v - b.v, a.dt - b.dt, a.dz - b.dz};
}
inline D2 operator-(const D2& a) { return {-a.v, -a.dt, -a.dz}; }
inline D2 operator*(const D2& a, const D2& b) {
    return {a.v * b.v, a.dt * b.v + a.v * b.dt, a.dz * b.v + a.v * b.dz};
}
inline D2 operator/(const D2& a, const D2& b) {
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.dt - q * b.dt) * inv, (a.dz - q * b.dz) * inv};
}
inline D2 sin(const D2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {s, c * a.dt, c * a.dz};
}
inline D2 cos(const D2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {c, -s * a.dt, -s * a.dz};
}
inline D2 sqrt(const D2& a) {
    const double r = std::sqrt(a.v);
    const double inv = 0.5 / r;
    return {r, inv * a.dt, inv * a.dz};
}

// C^3 smoothstep: 0 below 0, 1 above 1.
inline D2 smoothstep(const D2& x) {
    if (x.v <= 0.0) return {0.0};
    if (x.v >= 1.0) return {1.0};
    // -20 x^7 + 70 x^6 - 84 x^5 + 35 x^4
    const D2 x2 = x * x;
    const D2 x3 = x2 * x;
    const D2 val = x3 * x * (D2(35.0) + x * (D2(-84.0) + x * (D2(70.0) + x * D2(-20.0))));
    return val;
}

// 1 for |x| <= a, 0 for |x| >= b, C^3 in between. Requires 0 < a < b.
inline D2 plateau(const D2& x, double a, double b) {
    D2 ax = x.v < 0 ? -x : x;
    if (ax.v <= a) return {1.0};
    if (ax.v >= b) return {0.0};
    return D2(1.0) - smoothstep((ax - D2(a)) / D2(b - a));
}

// -1 below -1, +1 above 1, odd C^3 ramp in between.
inline D2 oddstep(const D2& x) {
    if (x.v <= -1.0) return {-1.0};
    if (x.v >= 1.0) return {1.0};
    return D2(2.0) * smoothstep((x + D2(1.0)) / D2(2.0)) - D2(1.0);
}

} // namespace twistloop::detail

#endif
