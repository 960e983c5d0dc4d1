#ifndef TWISTLOOP_GEOM_HPP
#define TWISTLOOP_GEOM_HPP

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "twistloop/errors.hpp"

namespace twistloop {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }
inline Vec4 sub4(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 add4(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 scale4(const Vec4& a, double s) {
    return {a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}

// Canonical angle in [0, 2pi).
double norm_angle(double a);
// Distance on the circle, in [0, pi].
double angle_dist(double a, double b);
// Representative of a in [0, 2pi).
inline double mod_2pi(double a) { return norm_angle(a); }

// Unit vector in R^4 (renormalized on construction).
struct SpherePoint {
    Vec4 v;
    explicit SpherePoint(const Vec4& raw);
};

// Oriented stereographic chart on S^3, projecting from -center.
// forward(center) = 0; orientation-preserving for the fixed orientation
// in which a tangent frame (f1,f2,f3) at v is positive iff
// det[v, f1, f2, f3] > 0.
class Chart3 {
  public:
    explicit Chart3(const Vec4& center);

    const Vec4& center() const { return center_; }
    Vec3 forward(const Vec4& v) const;
    // Differential of forward at v applied to tangent vector dv.
    Vec3 push(const Vec4& v, const Vec4& dv) const;
    Vec4 inverse(const Vec3& y) const;

  private:
    Vec4 center_;
    std::array<Vec4, 3> frame_;
};

// Total continuous angular displacement of a sampled path of angles.
// Consecutive gaps must be < pi (caller refines otherwise).
double lift_angle_path(std::span<const double> samples);

// Adaptive lift of z -> angle_fn(z) over [a,b]; doubles sampling up to
// 2^16 points until every gap is below pi/2.
double lift_angle_function(const std::function<double(double)>& angle_fn,
                           double a, double b, int initial = 64);

// Signed transverse crossings of the lifted path through zslice + 2pi*Z.
// Positive crossing = increasing lift.
int signed_crossings(std::span<const double> samples, double zslice);

// One crossing of a sampled path with a slice.
struct Crossing {
    double position;  // parameter in [0,1] along the sampled path
    int sign;
};

// Crossings with segment-level positions (linear interpolation of the lift).
std::vector<Crossing> find_crossings(std::span<const double> samples,
                                     double zslice);

Chart3 stereo_chart(const Vec4& center);

} // namespace twistloop

#endif
