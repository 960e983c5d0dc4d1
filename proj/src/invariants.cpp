#include "twistloop/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace twistloop {

namespace {

constexpr double kIntegralityGuard = 1e-6;
constexpr double kSliceShift = 1e-2;

// Adaptive theta samples along z in [a, a+span] at fixed t: doubles the
// grid until consecutive angular gaps drop below pi/2.
std::vector<double> theta_samples(const LoopFamily& f, double t, double a,
                                  double span, int initial = 256) {
    int n = std::max(initial, 16);
    const int max_n = 1 << 16;
    while (true) {
        std::vector<double> s(n + 1);
        for (int i = 0; i <= n; ++i)
            s[i] = f.at(t, a + span * double(i) / double(n)).theta;
        bool ok = true;
        for (int i = 1; i <= n; ++i)
            if (std::fabs(std::remainder(s[i] - s[i - 1], kTwoPi)) >=
                kTwoPi / 4.0) {
                ok = false;
                break;
            }
        if (ok) return s;
        if (n >= max_n)
            throw StepTooLarge("theta_samples: refinement budget exhausted");
        n *= 2;
    }
}

} // namespace

int compute_w1(const LoopFamily& f) {
    const double delta = lift_angle_function(
        [&f](double t) { return f.at(t, 0.0).theta; }, 0.0, 1.0);
    const double k = delta / kTwoPi;
    const double r = std::round(k);
    if (std::fabs(k - r) > kIntegralityGuard) {
        std::ostringstream os;
        os << "w1: basepoint trace winding " << k << " is not an integer";
        throw NonIntegralDegree(os.str());
    }
    return int(r);
}

DegreeTrace degree_kp(const LoopFamily& f, const CollisionPoint& c,
                      double slice_angle) {
    const double span = norm_angle(c.z2 - c.z1);
    if (span <= 0.0) throw Error("degree_kp: coincident collision strands");
    const auto samples = theta_samples(f, c.t, c.z1, span);

    const double theta1 = samples.front();
    const double theta2 = samples.back();
    const double delta_arc = lift_angle_path(samples);
    const double ret = norm_angle(theta2 - theta1);
    const double delta_B = -ret;

    const double kd = (delta_arc + delta_B) / kTwoPi;
    const double kr = std::round(kd);
    if (std::fabs(kd - kr) > kIntegralityGuard) {
        std::ostringstream os;
        os << "degree_kp: lift route value " << kd << " is not an integer";
        throw NonIntegralDegree(os.str());
    }
    const int k = int(kr);

    // Independent route: signed slice crossings along the arc plus the
    // crossing (if any) of the negative return path from theta2 to theta1.
    int ks = signed_crossings(samples, slice_angle);
    const double back = norm_angle(theta2 - slice_angle);
    if (back > 0.0 && back < ret) ks -= 1;

    if (ks != k) {
        std::ostringstream os;
        os << "degree_kp: lift route k=" << k << " disagrees with slice route k="
           << ks << " at t=" << c.t;
        throw DegreeMismatch(os.str());
    }
    return {delta_arc, delta_B, k, ks, slice_angle};
}

DegreeTrace degree_with_slice(const LoopFamily& f, const CollisionPoint& c,
                              double initial, int max_retries) {
    double slice = initial;
    for (int attempt = 0;; ++attempt) {
        try {
            return degree_kp(f, c, slice);
        } catch (const SliceHitsEndpoint&) {
            if (attempt >= max_retries) throw;
        } catch (const NonGenericSlice&) {
            if (attempt >= max_retries) throw;
        }
        slice = norm_angle(slice + kSliceShift);
    }
}

double choose_slice(const LoopFamily& f,
                    const std::vector<CollisionPoint>& classes,
                    double initial, int max_retries) {
    double slice = norm_angle(initial);
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        bool ok = true;
        for (const auto& c : classes) {
            const double th1 = norm_angle(f.at(c.t, c.z1).theta);
            const double th2 = norm_angle(f.at(c.t, c.z2).theta);
            if (angle_dist(th1, slice) < 1e-3 || angle_dist(th2, slice) < 1e-3) {
                ok = false;
                break;
            }
        }
        if (ok) return slice;
        slice = norm_angle(slice + kSliceShift);
    }
    throw NonGenericSlice(
        "choose_slice: no slice clears all collision endpoints");
}

InvariantReport compute_invariants(const LoopFamily& f,
                                   const SolverConfig& cfg) {
    InvariantReport rep;
    rep.family = f.name();
    rep.param = f.param();
    rep.config = cfg;
    rep.w1 = compute_w1(f);

    const auto classes = find_collisions(f, cfg);
    double slice = choose_slice(f, classes, cfg.slice_angle, 16);
    // A slice clearing the endpoints can still hit a sample tangentially;
    // keep shifting until every class counts cleanly.
    for (int attempt = 0;; ++attempt) {
        try {
            rep.classes.clear();
            LaurentPoly sum;
            double min_det = std::numeric_limits<double>::infinity();
            double max_res = 0.0;
            for (const auto& c : classes) {
                const DegreeTrace tr = degree_kp(f, c, slice);
                rep.classes.push_back({c, tr});
                sum = laurent_add(sum, LaurentPoly::monomial(tr.k, c.sign));
                min_det = std::min(min_det, c.det_mag);
                max_res = std::max(max_res, c.residual);
            }
            rep.w2 = lambda0_reduce(sum);
            rep.min_det_mag = classes.empty() ? 0.0 : min_det;
            rep.max_residual = max_res;
            rep.slice_angle = slice;
            break;
        } catch (const SliceHitsEndpoint&) {
            if (attempt >= 16) throw;
        } catch (const NonGenericSlice&) {
            if (attempt >= 16) throw;
        }
        slice = norm_angle(slice + kSliceShift);
    }
    for (const auto& ic : rep.classes)
        if (ic.point.residual > cfg.residual_max) {
            std::ostringstream os;
            os << "compute_invariants: residual " << ic.point.residual
               << " exceeds certification ceiling " << cfg.residual_max;
            throw Error(os.str());
        }
    return rep;
}

std::vector<Crossing> slice_profile(const LoopFamily& f, double t,
                                    double slice_angle) {
    const auto samples = theta_samples(f, t, 0.0, kTwoPi);
    return find_crossings(samples, slice_angle);
}

} // namespace twistloop
