#include "twistloop/collide.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace twistloop {

namespace {

struct Mat3 {
    double m[3][3];
};

double det3(const Mat3& A) {
    return A.m[0][0] * (A.m[1][1] * A.m[2][2] - A.m[1][2] * A.m[2][1]) -
           A.m[0][1] * (A.m[1][0] * A.m[2][2] - A.m[1][2] * A.m[2][0]) +
           A.m[0][2] * (A.m[1][0] * A.m[2][1] - A.m[1][1] * A.m[2][0]);
}

// Solve A x = b by partial-pivot elimination; false when numerically singular.
bool solve3(Mat3 A, Vec3 b, Vec3& x) {
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A.m[perm[r]][col]) > std::fabs(A.m[perm[piv]][col]))
                piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = A.m[perm[col]][col];
        if (std::fabs(p) < 1e-14) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double f = A.m[perm[r]][col] / p;
            for (int c = col; c < 3; ++c) A.m[perm[r]][c] -= f * A.m[perm[col]][c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double s = b[perm[col]];
        for (int c = col + 1; c < 3; ++c) s -= A.m[perm[col]][c] * x[c];
        x[col] = s / A.m[perm[col]][col];
    }
    return true;
}

double norm3(const Vec3& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

struct ChartState {
    Chart3 chart;
    Vec3 F;
    Mat3 J;
    FamilyJet j1, j2;
};

// Mismatch and Jacobian at (t, z1, z2) in a fixed chart.
ChartState evaluate(const LoopFamily& f, const Chart3& chart, double t,
                    double z1, double z2) {
    ChartState st{chart, {}, {}, f.at(t, z1), f.at(t, z2)};
    const Vec3 y1 = chart.forward(st.j1.v);
    const Vec3 y2 = chart.forward(st.j2.v);
    const Vec3 c0 = chart.push(st.j1.v, st.j1.v_t);
    const Vec3 c0b = chart.push(st.j2.v, st.j2.v_t);
    const Vec3 c1 = chart.push(st.j1.v, st.j1.v_z);
    const Vec3 c2 = chart.push(st.j2.v, st.j2.v_z);
    for (int r = 0; r < 3; ++r) {
        st.F[r] = y1[r] - y2[r];
        st.J.m[r][0] = c0[r] - c0b[r];
        st.J.m[r][1] = c1[r];
        st.J.m[r][2] = -c2[r];
    }
    return st;
}

int resolved_threads(const SolverConfig& cfg) {
    int n = cfg.threads;
    if (n <= 0) return 1;
    if (const char* cap = std::getenv("TWIN_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) n = std::min(n, c);
    }
    return std::max(1, n);
}

} // namespace

std::vector<Candidate> coarse_scan(const LoopFamily& f,
                                   const SolverConfig& cfg) {
    const int nt = cfg.nt, nz = cfg.nz;
    if (nt < 2 || nz < 8) throw Error("coarse_scan: grid too small");
    const double rt = 0.5 / double(nt);
    const double rz = kTwoPi / (2.0 * double(nz));

    struct Node {
        Vec4 v;
        double speed_t, speed_z;
    };
    std::vector<Node> grid(std::size_t(nt) * nz);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nz; ++j) {
            const FamilyJet jet = f.at((double(i) + 0.5) / double(nt),
                                       (double(j) + 0.5) * kTwoPi / double(nz));
            grid[std::size_t(i) * nz + j] = {jet.v, norm4(jet.v_t),
                                             norm4(jet.v_z)};
        }

    std::vector<Candidate> out;
    for (int i = 0; i < nt; ++i) {
        const double t = (double(i) + 0.5) / double(nt);
        for (int j = 0; j < nz; ++j) {
            const double zj = (double(j) + 0.5) * kTwoPi / double(nz);
            const Node& a = grid[std::size_t(i) * nz + j];
            for (int k = j + 1; k < nz; ++k) {
                const double zk = (double(k) + 0.5) * kTwoPi / double(nz);
                if (angle_dist(zj, zk) < cfg.separation_floor) continue;
                const Node& b = grid[std::size_t(i) * nz + k];
                const double bound =
                    cfg.lipschitz_safety * (rt * (a.speed_t + b.speed_t) +
                                            rz * (a.speed_z + b.speed_z));
                if (norm4(sub4(a.v, b.v)) <= bound)
                    out.push_back({t, zj, zk});
            }
        }
    }
    return out;
}

RefineResult refine_newton(const LoopFamily& f, double t, double z1, double z2,
                           const SolverConfig& cfg) {
    RefineResult res;
    res.t = t;
    res.z1 = z1;
    res.z2 = z2;

    FamilyJet j1 = f.at(t, z1), j2 = f.at(t, z2);
    Chart3 chart(add4(j1.v, j2.v));

    double fn = 0.0;
    bool converged = false;
    for (int it = 0; it < cfg.max_newton; ++it) {
        res.iterations = it;
        if (t < 0.0 || t > 1.0) {
            res.status = RefineStatus::out_of_domain;
            res.t = t; res.z1 = z1; res.z2 = z2;
            return res;
        }
        if (angle_dist(z1, z2) < cfg.separation_floor) {
            res.status = RefineStatus::separation_collapse;
            res.t = t; res.z1 = z1; res.z2 = z2;
            return res;
        }
        const ChartState st = evaluate(f, chart, t, z1, z2);
        fn = norm3(st.F);
        if (fn <= cfg.newton_tol) {
            converged = true;
            break;
        }
        Vec3 step;
        if (!solve3(st.J, {-st.F[0], -st.F[1], -st.F[2]}, step)) {
            res.status = RefineStatus::no_convergence;
            return res;
        }
        const double sn = norm3(step);
        double scale = sn > cfg.max_step ? cfg.max_step / sn : 1.0;
        // Backtracking line search on the chart residual.
        bool accepted = false;
        for (int bt = 0; bt < 10; ++bt) {
            const double tn = t + scale * step[0];
            const double z1n = z1 + scale * step[1];
            const double z2n = z2 + scale * step[2];
            if (tn < 0.0 || tn > 1.0) {
                if (bt == 9) {
                    res.status = RefineStatus::out_of_domain;
                    res.t = tn; res.z1 = z1n; res.z2 = z2n;
                    return res;
                }
                scale *= 0.5;
                continue;
            }
            const ChartState trial = evaluate(f, chart, tn, z1n, z2n);
            if (norm3(trial.F) < fn * (1.0 - 1e-4) || scale * sn < 1e-15) {
                t = tn;
                z1 = z1n;
                z2 = z2n;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) {
            res.status = RefineStatus::no_convergence;
            return res;
        }
    }
    if (!converged) {
        // One final residual check after the last accepted step.
        const ChartState st = evaluate(f, chart, t, z1, z2);
        if (norm3(st.F) > cfg.newton_tol) {
            res.status = RefineStatus::no_convergence;
            res.residual = norm3(st.F);
            return res;
        }
    }
    if (angle_dist(z1, z2) < cfg.separation_floor) {
        res.status = RefineStatus::separation_collapse;
        res.t = t; res.z1 = z1; res.z2 = z2;
        return res;
    }

    // Recenter the chart at the converged midpoint and report there.
    j1 = f.at(t, z1);
    j2 = f.at(t, z2);
    Chart3 centered(add4(j1.v, j2.v));
    const ChartState fin = evaluate(f, centered, t, z1, z2);
    const double det = det3(fin.J);
    res.status = RefineStatus::ok;
    res.t = t;
    res.z1 = norm_angle(z1);
    res.z2 = norm_angle(z2);
    res.residual = norm4(sub4(j1.v, j2.v));
    res.det_mag = std::fabs(det);
    res.sign = det > 0 ? 1 : -1;
    res.location = SpherePoint(add4(j1.v, j2.v)).v;
    if (res.det_mag < cfg.det_floor) {
        std::ostringstream os;
        os << "collision at t=" << t << " z1=" << res.z1 << " z2=" << res.z2
           << " has |det|=" << res.det_mag << " below the transversality floor";
        throw NonTransverse(os.str());
    }
    return res;
}

std::vector<CollisionPoint> dedupe_and_quotient(std::vector<RefineResult> in,
                                                const SolverConfig& cfg) {
    std::vector<RefineResult> ok;
    for (auto& r : in)
        if (r.status == RefineStatus::ok) {
            if (r.z1 > r.z2) std::swap(r.z1, r.z2);
            ok.push_back(r);
        }
    std::sort(ok.begin(), ok.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.z1, a.z2, a.residual) <
               std::tie(b.t, b.z1, b.z2, b.residual);
    });

    struct Cluster {
        RefineResult rep;
    };
    std::vector<Cluster> clusters;
    auto same = [&](const RefineResult& a, const RefineResult& b) {
        return std::fabs(a.t - b.t) < cfg.dedupe_radius &&
               angle_dist(a.z1, b.z1) < cfg.dedupe_radius &&
               angle_dist(a.z2, b.z2) < cfg.dedupe_radius;
    };
    for (const auto& r : ok) {
        bool placed = false;
        for (auto& c : clusters) {
            if (!same(r, c.rep)) continue;
            if (r.sign != c.rep.sign) {
                std::ostringstream os;
                os << "cluster near t=" << c.rep.t << " z1=" << c.rep.z1
                   << " z2=" << c.rep.z2 << " mixes collision signs";
                throw AmbiguousCluster(os.str());
            }
            if (r.residual < c.rep.residual) c.rep = r;
            placed = true;
            break;
        }
        if (!placed) clusters.push_back({r});
    }

    std::vector<CollisionPoint> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters)
        out.push_back({c.rep.t, c.rep.z1, c.rep.z2, c.rep.location, c.rep.sign,
                       c.rep.det_mag, c.rep.residual});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.z1, a.z2) < std::tie(b.t, b.z1, b.z2);
    });
    return out;
}

std::vector<CollisionPoint> find_collisions(const LoopFamily& f,
                                            const SolverConfig& cfg) {
    const auto cands = coarse_scan(f, cfg);
    std::vector<RefineResult> refined(cands.size());
    const int nthreads = std::min<int>(resolved_threads(cfg),
                                       int(cands.size()) > 0 ? int(cands.size()) : 1);
    auto work = [&](int tid) {
        for (std::size_t i = tid; i < cands.size(); i += std::size_t(nthreads))
            refined[i] =
                refine_newton(f, cands[i].t, cands[i].z1, cands[i].z2, cfg);
    };
    if (nthreads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex mu;
        for (int tid = 0; tid < nthreads; ++tid)
            pool.emplace_back([&, tid] {
                try {
                    work(tid);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    return dedupe_and_quotient(std::move(refined), cfg);
}

} // namespace twistloop
