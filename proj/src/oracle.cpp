#include "twistloop/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include "twistloop/errors.hpp"
#include "twistloop/geom.hpp"

namespace twistloop {

namespace {

constexpr int kScan = 128;        // dense scan resolution per axis
constexpr double kSeedCut = 0.02; // ambient-distance ceiling for seeds
constexpr double kTargetResidual = 1e-9;

double circ_dist(double a, double b, double period) {
    const double d = std::fabs(std::remainder(a - b, period));
    return d;
}

double det4(const std::array<Vec4, 4>& c) {
    double m[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = c[j][i];
    double det = 1.0;
    for (int k = 0; k < 4; ++k) {
        int p = k;
        for (int i = k + 1; i < 4; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[p][k])) p = i;
        if (m[p][k] == 0.0) return 0.0;
        if (p != k) {
            std::swap(m[p], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (int i = k + 1; i < 4; ++i) {
            const double f = m[i][k] / m[k][k];
            for (int j = k; j < 4; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

struct OracleProbe {
    const LoopFamily& f;
    double sep_floor;

    double ambient(double t, double z1, double z2) const {
        if (circ_dist(z1, z2, kTwoPi) < sep_floor)
            return std::numeric_limits<double>::infinity();
        const Vec4 a = f.at(t, z1).v;
        const Vec4 b = f.at(t, z2).v;
        return norm4(sub4(a, b));
    }
};

struct OracleHit {
    double t, z1, z2, residual;
};

// Derivative-free bisection refinement: 26-point stencil, move to the best
// improving neighbor, halve the radius on stalls.
bool pattern_search(const OracleProbe& probe, double& t, double& z1,
                    double& z2, double& residual) {
    double r = 1.0 / double(kScan);
    double g = probe.ambient(t, z1, z2);
    int budget = 60000;
    while (r > 1e-13 && g > 1e-15 && budget > 0) {
        double bt = t, bz1 = z1, bz2 = z2, bg = g;
        for (int dt = -1; dt <= 1; ++dt)
            for (int d1 = -1; d1 <= 1; ++d1)
                for (int d2 = -1; d2 <= 1; ++d2) {
                    if (!dt && !d1 && !d2) continue;
                    const double nt = t + r * dt;
                    const double n1 = z1 + kTwoPi * r * d1;
                    const double n2 = z2 + kTwoPi * r * d2;
                    const double ng = probe.ambient(nt, n1, n2);
                    --budget;
                    if (ng < bg) {
                        bg = ng;
                        bt = nt;
                        bz1 = n1;
                        bz2 = n2;
                    }
                }
        if (bg < g) {
            t = bt;
            z1 = bz1;
            z2 = bz2;
            g = bg;
        } else {
            r *= 0.5;
        }
    }
    residual = g;
    return g <= kTargetResidual;
}

int fd_sign(const LoopFamily& f, double t, double z1, double z2,
            double* det_mag) {
    const double h = 1e-5;
    auto v = [&f](double tt, double zz) { return f.at(tt, zz).v; };
    const Vec4 v1 = v(t, z1);
    const Vec4 v2 = v(t, z2);
    Vec4 mid = add4(v1, v2);
    mid = scale4(mid, 1.0 / norm4(mid));
    const Vec4 dt1 = scale4(sub4(v(t + h, z1), v(t - h, z1)), 1.0 / (2 * h));
    const Vec4 dt2 = scale4(sub4(v(t + h, z2), v(t - h, z2)), 1.0 / (2 * h));
    const Vec4 dz1 = scale4(sub4(v(t, z1 + h), v(t, z1 - h)), 1.0 / (2 * h));
    const Vec4 dz2 = scale4(sub4(v(t, z2 + h), v(t, z2 - h)), 1.0 / (2 * h));
    const std::array<Vec4, 4> cols = {mid, sub4(dt1, dt2), dz1,
                                      scale4(dz2, -1.0)};
    const double d = det4(cols);
    if (det_mag) *det_mag = std::fabs(d);
    if (d == 0.0) throw NonTransverse("oracle: FD determinant vanished");
    return d > 0 ? 1 : -1;
}

} // namespace

std::vector<CollisionPoint> oracle_collisions(const LoopFamily& f,
                                              const SolverConfig& cfg) {
    const int N = kScan;
    const OracleProbe probe{f, cfg.separation_floor};

    // Tabulate v on the dense (t, z) grid; derive the pair-distance cube.
    std::vector<Vec4> vt(std::size_t(N) * N);
    for (int it = 0; it < N; ++it) {
        const double t = (it + 0.5) / double(N);
        for (int j = 0; j < N; ++j)
            vt[std::size_t(it) * N + j] = f.at(t, (j + 0.5) * kTwoPi / N).v;
    }
    auto pair_g = [&](int it, int j1, int j2) {
        return norm4(sub4(vt[std::size_t(it) * N + j1],
                          vt[std::size_t(it) * N + j2]));
    };
    auto sep_ok = [&](int j1, int j2) {
        return circ_dist((j1 + 0.5) * kTwoPi / N, (j2 + 0.5) * kTwoPi / N,
                         kTwoPi) >= cfg.separation_floor;
    };

    std::vector<OracleHit> hits;
    for (int it = 0; it < N; ++it)
        for (int j1 = 0; j1 < N; ++j1)
            for (int j2 = j1 + 1; j2 < N; ++j2) {
                if (!sep_ok(j1, j2)) continue;
                const double g = pair_g(it, j1, j2);
                if (g >= kSeedCut) continue;
                bool is_min = true;
                for (int a = -1; a <= 1 && is_min; ++a)
                    for (int b = -1; b <= 1 && is_min; ++b)
                        for (int c = -1; c <= 1 && is_min; ++c) {
                            if (!a && !b && !c) continue;
                            const int ni = (it + a + N) % N;
                            const int n1 = (j1 + b + N) % N;
                            const int n2 = (j2 + c + N) % N;
                            if (n1 == n2 || !sep_ok(n1, n2)) continue;
                            if (pair_g(ni, n1, n2) < g) is_min = false;
                        }
                if (!is_min) continue;
                double t = (it + 0.5) / double(N);
                double z1 = (j1 + 0.5) * kTwoPi / N;
                double z2 = (j2 + 0.5) * kTwoPi / N;
                double res = 0;
                if (pattern_search(probe, t, z1, z2, res))
                    hits.push_back({t - std::floor(t), norm_angle(z1),
                                    norm_angle(z2), res});
            }

    for (auto& h : hits)
        if (h.z1 > h.z2) std::swap(h.z1, h.z2);
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.z1, a.z2) < std::tie(b.t, b.z1, b.z2);
    });

    std::vector<CollisionPoint> out;
    std::vector<bool> used(hits.size(), false);
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (used[i]) continue;
        OracleHit best = hits[i];
        for (std::size_t j = i + 1; j < hits.size(); ++j) {
            if (used[j]) continue;
            const bool close =
                circ_dist(hits[j].t, hits[i].t, 1.0) < cfg.dedupe_radius &&
                circ_dist(hits[j].z1, hits[i].z1, kTwoPi) <
                    cfg.dedupe_radius &&
                circ_dist(hits[j].z2, hits[i].z2, kTwoPi) < cfg.dedupe_radius;
            if (!close) continue;
            used[j] = true;
            if (hits[j].residual < best.residual) best = hits[j];
        }
        CollisionPoint p;
        p.t = best.t;
        p.z1 = best.z1;
        p.z2 = best.z2;
        p.residual = best.residual;
        Vec4 mid = add4(f.at(p.t, p.z1).v, f.at(p.t, p.z2).v);
        p.location = scale4(mid, 1.0 / norm4(mid));
        p.sign = fd_sign(f, p.t, p.z1, p.z2, &p.det_mag);
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.z1, a.z2) < std::tie(b.t, b.z1, b.z2);
    });
    return out;
}

Lambda0Element w2_bruteforce(const LoopFamily& f, const SolverConfig& cfg) {
    const auto classes = oracle_collisions(f, cfg);

    // Pure slice-counting degree route.  One slice per report, shifted away
    // from every endpoint angle and retried on non-generic hits.
    double slice = norm_angle(cfg.slice_angle);
    for (int attempt = 0; attempt <= 16; ++attempt) {
        bool clear = true;
        for (const auto& c : classes) {
            if (angle_dist(norm_angle(f.at(c.t, c.z1).theta), slice) < 1e-3 ||
                angle_dist(norm_angle(f.at(c.t, c.z2).theta), slice) < 1e-3) {
                clear = false;
                break;
            }
        }
        if (clear) break;
        if (attempt == 16)
            throw NonGenericSlice("w2_bruteforce: no clear slice found");
        slice = norm_angle(slice + 1e-2);
    }

    for (int attempt = 0;; ++attempt) {
        try {
            LaurentPoly sum;
            for (const auto& c : classes) {
                const double span = norm_angle(c.z2 - c.z1);
                int n = 1 << 12;
                std::vector<double> samples;
                for (;; n *= 2) {
                    samples.assign(std::size_t(n) + 1, 0.0);
                    for (int i = 0; i <= n; ++i)
                        samples[std::size_t(i)] =
                            f.at(c.t, c.z1 + span * double(i) / double(n))
                                .theta;
                    bool fine = true;
                    for (int i = 1; i <= n; ++i)
                        if (std::fabs(std::remainder(
                                samples[std::size_t(i)] -
                                    samples[std::size_t(i) - 1],
                                kTwoPi)) >= kTwoPi / 4.0) {
                            fine = false;
                            break;
                        }
                    if (fine) break;
                    if (n >= (1 << 16))
                        throw StepTooLarge("w2_bruteforce: sampling budget");
                }
                int ks = signed_crossings(samples, slice);
                const double ret = norm_angle(samples.back() - samples.front());
                const double back = norm_angle(samples.back() - slice);
                if (back > 0.0 && back < ret) ks -= 1;
                sum = laurent_add(sum, LaurentPoly::monomial(ks, c.sign));
            }
            return lambda0_reduce(sum);
        } catch (const SliceHitsEndpoint&) {
            if (attempt >= 16) throw;
        } catch (const NonGenericSlice&) {
            if (attempt >= 16) throw;
        }
        slice = norm_angle(slice + 1e-2);
    }
}

} // namespace twistloop
