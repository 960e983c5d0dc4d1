#include "twistloop/geom.hpp"

#include <algorithm>
#include <cmath>

namespace twistloop {

double norm_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double angle_dist(double a, double b) {
    double d = std::fabs(std::remainder(a - b, kTwoPi));
    return d;
}

SpherePoint::SpherePoint(const Vec4& raw) : v(raw) {
    const double n = norm4(raw);
    if (n < 1e-12) throw Error("SpherePoint: zero vector");
    v = scale4(raw, 1.0 / n);
}

Chart3::Chart3(const Vec4& center) {
    const double n = norm4(center);
    if (n < 1e-12) throw Error("Chart3: zero center");
    center_ = scale4(center, 1.0 / n);

    // Gram-Schmidt the standard axes against the center; keep the first
    // three that stay well-conditioned.
    int got = 0;
    for (int axis = 0; axis < 4 && got < 3; ++axis) {
        Vec4 e{0, 0, 0, 0};
        e[axis] = 1.0;
        Vec4 w = sub4(e, scale4(center_, dot4(e, center_)));
        for (int j = 0; j < got; ++j)
            w = sub4(w, scale4(frame_[j], dot4(w, frame_[j])));
        const double wn = norm4(w);
        if (wn < 0.1) continue;
        frame_[got++] = scale4(w, 1.0 / wn);
    }
    if (got < 3) throw Error("Chart3: degenerate frame");

    // Fix orientation: det[center, e1, e2, e3] = +1.
    const Vec4& c = center_;
    const Vec4& a = frame_[0];
    const Vec4& b = frame_[1];
    const Vec4& d = frame_[2];
    auto det3 = [](double a0, double a1, double a2, double b0, double b1,
                   double b2, double c0, double c1, double c2) {
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
               a2 * (b0 * c1 - b1 * c0);
    };
    double det = 0.0;
    for (int col = 0; col < 4; ++col) {
        int idx[3];
        int m = 0;
        for (int j = 0; j < 4; ++j)
            if (j != col) idx[m++] = j;
        const double minor =
            det3(a[idx[0]], a[idx[1]], a[idx[2]], b[idx[0]], b[idx[1]],
                 b[idx[2]], d[idx[0]], d[idx[1]], d[idx[2]]);
        det += ((col % 2 == 0) ? 1.0 : -1.0) * c[col] * minor;
    }
    if (det < 0)
        for (auto& x : frame_[2]) x = -x;
}

Vec3 Chart3::forward(const Vec4& v) const {
    const double b = 1.0 + dot4(v, center_);
    if (b < 1e-6) throw NearAntipode("Chart3::forward: near -center");
    return {dot4(v, frame_[0]) / b, dot4(v, frame_[1]) / b,
            dot4(v, frame_[2]) / b};
}

Vec3 Chart3::push(const Vec4& v, const Vec4& dv) const {
    const double b = 1.0 + dot4(v, center_);
    if (b < 1e-6) throw NearAntipode("Chart3::push: near -center");
    const double db = dot4(dv, center_);
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        const double a = dot4(v, frame_[i]);
        const double da = dot4(dv, frame_[i]);
        out[i] = (da * b - a * db) / (b * b);
    }
    return out;
}

Vec4 Chart3::inverse(const Vec3& y) const {
    const double r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    Vec4 v = scale4(center_, (1.0 - r2));
    for (int i = 0; i < 3; ++i) v = add4(v, scale4(frame_[i], 2.0 * y[i]));
    return scale4(v, 1.0 / (1.0 + r2));
}

Chart3 stereo_chart(const Vec4& center) { return Chart3(center); }

namespace {

std::vector<double> lift_samples(std::span<const double> samples) {
    if (samples.empty()) throw Error("lift: empty sample list");
    std::vector<double> lifted;
    lifted.reserve(samples.size());
    lifted.push_back(samples[0]);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double step = std::remainder(samples[i] - samples[i - 1], kTwoPi);
        if (std::fabs(step) >= 3.14159265)
            throw StepTooLarge("lift: consecutive angular gap >= pi");
        lifted.push_back(lifted.back() + step);
    }
    return lifted;
}

} // namespace

double lift_angle_path(std::span<const double> samples) {
    const auto lifted = lift_samples(samples);
    return lifted.back() - lifted.front();
}

double lift_angle_function(const std::function<double(double)>& angle_fn,
                           double a, double b, int initial) {
    int n = std::max(initial, 8);
    const int max_n = 1 << 16;
    while (true) {
        std::vector<double> s(n + 1);
        for (int i = 0; i <= n; ++i)
            s[i] = angle_fn(a + (b - a) * i / double(n));
        bool ok = true;
        for (int i = 1; i <= n; ++i) {
            if (std::fabs(std::remainder(s[i] - s[i - 1], kTwoPi)) >=
                1.5707963) {
                ok = false;
                break;
            }
        }
        if (ok) return lift_angle_path(s);
        if (n >= max_n)
            throw StepTooLarge("lift_angle_function: refinement budget exhausted");
        n *= 2;
    }
}

std::vector<Crossing> find_crossings(std::span<const double> samples,
                                     double zslice) {
    const auto lifted = lift_samples(samples);
    if (angle_dist(samples.front(), zslice) < 1e-9 ||
        angle_dist(samples.back(), zslice) < 1e-9)
        throw SliceHitsEndpoint("crossings: endpoint lies on slice");
    // Interior samples on (or numerically at) a slice level are treated
    // as non-generic rather than silently counted.
    for (std::size_t i = 1; i + 1 < samples.size(); ++i)
        if (angle_dist(samples[i], zslice) < 1e-9)
            throw NonGenericSlice("crossings: sample on slice");

    std::vector<Crossing> out;
    const std::size_t nseg = lifted.size() - 1;
    for (std::size_t i = 0; i < nseg; ++i) {
        const double la = lifted[i], lb = lifted[i + 1];
        if (la == lb) continue;
        const double lo = std::min(la, lb), hi = std::max(la, lb);
        const int sgn = lb > la ? 1 : -1;
        const long long k0 = (long long)std::floor((lo - zslice) / kTwoPi) - 1;
        const long long k1 = (long long)std::ceil((hi - zslice) / kTwoPi) + 1;
        for (long long k = k0; k <= k1; ++k) {
            const double level = zslice + kTwoPi * double(k);
            if (level > lo && level < hi) {
                const double frac = (level - la) / (lb - la);
                out.push_back(
                    {(double(i) + frac) / double(nseg), sgn});
            }
        }
    }
    return out;
}

int signed_crossings(std::span<const double> samples, double zslice) {
    int total = 0;
    for (const auto& c : find_crossings(samples, zslice)) total += c.sign;
    return total;
}

} // namespace twistloop
