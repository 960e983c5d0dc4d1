#include "twistloop/families.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "dual2.hpp"
#include "spline.hpp"

namespace twistloop {

namespace {

using detail::D2;

const double kPi = kTwoPi / 2.0;

// Assemble a jet from dual-number S^1 angle and ambient offsets u: the
// S^3 coordinate is normalize(p + eps*u) with p = (1,0,0,0) and u in the
// 3-plane spanned by e1,e2,e3.
FamilyJet pack_jet(const D2& theta, const D2& ux, const D2& uy, const D2& uw,
                   double eps) {
    const D2 s1 = D2(eps) * ux, s2 = D2(eps) * uy, s3 = D2(eps) * uw;
    const D2 n = detail::sqrt(D2(1.0) + s1 * s1 + s2 * s2 + s3 * s3);
    const D2 v0 = D2(1.0) / n, v1 = s1 / n, v2 = s2 / n, v3 = s3 / n;
    FamilyJet j;
    j.theta = theta.v;
    j.theta_t = theta.dt;
    j.theta_z = theta.dz;
    j.v = {v0.v, v1.v, v2.v, v3.v};
    j.v_t = {v0.dt, v1.dt, v2.dt, v3.dt};
    j.v_z = {v0.dz, v1.dz, v2.dz, v3.dz};
    return j;
}

struct FingerParams {
    int cycles;
    double wind_turns;
    double eps;
    double delta = 0.5;   // finger half-width in z
    double depth = 0.4;   // transverse reach of the finger
    double rho_amp = 0.15; // hairpin radial offset
    double drift_r = 0.06; // rigid drift circle radius
};

FamilyJet finger_jet(const FingerParams& P, double t, double z) {
    const int n = 4 * P.cycles + 2;
    const double tc = std::min(std::max(t, 0.0), 1.0);
    const int phase = std::min(int(tc * n), n - 1);
    const D2 s{tc * double(n) - double(phase), double(n), 0.0};

    // Phase schedule: extend, then per cycle wind / poke-up / unwind /
    // poke-down, then retract.  E = finger extension, Wd = winding turns,
    // L = poke lift.
    D2 E, Wd, L;
    if (phase == 0) {
        E = detail::smoothstep(s);
        Wd = D2(0.0);
        L = D2(0.0);
    } else if (phase == n - 1) {
        E = D2(1.0) - detail::smoothstep(s);
        Wd = D2(0.0);
        L = D2(0.0);
    } else {
        E = D2(1.0);
        const int sub = (phase - 1) % 4;
        const D2 S = detail::smoothstep(s);
        switch (sub) {
            case 0: Wd = D2(P.wind_turns) * S; L = D2(0.0); break;
            case 1: Wd = D2(P.wind_turns); L = S; break;
            case 2: Wd = D2(P.wind_turns) * (D2(1.0) - S); L = D2(1.0); break;
            default: Wd = D2(0.0); L = D2(1.0) - S; break;
        }
    }

    const double zw = std::remainder(z - kPi, kTwoPi);
    const D2 zeta{zw / P.delta, 0.0, 1.0 / P.delta};

    // Profile supports are staggered so that at every instant at least one
    // of (angle, radius, depth) strictly separates distinct strands: the
    // radius ramp m covers the whole inner band, the depth ramp q the whole
    // outer band.
    const D2 g = detail::plateau(zeta, 0.30, 0.90);  // angular sweep
    const D2 q = detail::plateau(zeta, 0.40, 0.95);  // transverse depth
    const D2 e = detail::plateau(zeta, 0.80, 0.95);  // radial envelope
    const D2 m = -detail::oddstep(zeta / D2(0.45)) * e; // hairpin sides
    const D2 Pl = detail::plateau(zeta, 0.15, 0.25); // poke window
    const D2 pphi = detail::plateau(zeta, 0.10, 0.40); // winding carrier

    const D2 Z{z, 0.0, 1.0};
    const D2 phi =
        D2(kPi) + D2(P.delta) * zeta + E * g * (D2(kPi / 2.0) - D2(P.delta) * zeta);
    const D2 rho = D2(1.0) + D2(P.rho_amp) * m * E;
    const D2 w = -D2(P.depth) * q * E + D2(2.0 * P.depth) * L * Pl;
    const D2 theta = Z + D2(kTwoPi) * Wd * pphi;

    const D2 T{tc, 1.0, 0.0};
    const D2 ang = D2(kTwoPi) * T;
    const D2 dx = D2(P.drift_r) * (cos(ang) - D2(1.0));
    const D2 dy = D2(P.drift_r) * sin(ang);

    const D2 ux = rho * cos(phi) + dx;
    const D2 uy = rho * sin(phi) + dy;
    return pack_jet(theta, ux, uy, w, P.eps);
}

FingerParams make_params(int cycles, double wind_turns, double eps,
                         double jitter) {
    if (jitter < -1.0 || jitter > 1.0)
        throw Error("finger family: jitter must lie in [-1, 1]");
    FingerParams P;
    P.cycles = cycles;
    P.wind_turns = wind_turns;
    P.eps = eps;
    P.delta *= 1.0 + 0.03 * jitter;
    P.depth *= 1.0 - 0.02 * jitter;
    return P;
}

LoopFamily certified(LoopFamily f, const std::string& kind, int i, double eps,
                     double jitter) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, double, double>, bool> seen;
    const auto key = std::make_tuple(kind, i, eps, jitter);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (seen.count(key)) return f;
    }
    check_embedded(f);
    std::lock_guard<std::mutex> lock(mu);
    seen[key] = true;
    return f;
}

} // namespace

FamilyJet generic_base(double eps, double z) {
    const D2 Z{z, 0.0, 1.0};
    return pack_jet(Z, cos(Z), sin(Z), D2(0.0), eps);
}

LoopFamily spin_loop(int k, double eps) {
    if (eps <= 0 || eps > 0.1) throw Error("spin_loop: eps must lie in (0, 0.1]");
    auto fn = [k, eps](double t, double z) {
        const D2 phase{z + kTwoPi * double(k) * t, kTwoPi * double(k), 1.0};
        return pack_jet(phase, cos(phase), sin(phase), D2(0.0), eps);
    };
    return LoopFamily(fn, eps, "spin", k);
}

LoopFamily family_T(int i, double eps, double jitter) {
    if (i < 1 || i > 8) throw Error("family_T: i must lie in [1, 8]");
    if (eps <= 0 || eps > 0.1) throw Error("family_T: eps must lie in (0, 0.1]");
    const FingerParams P = make_params(1, double(i) + 0.5, eps, jitter);
    LoopFamily f([P](double t, double z) { return finger_jet(P, t, z); }, eps,
                 "T", i);
    return certified(std::move(f), "T", i, eps, jitter);
}

LoopFamily family_Tbar(int i, double eps, double jitter) {
    if (i < 1 || i > 8) throw Error("family_Tbar: i must lie in [1, 8]");
    if (eps <= 0 || eps > 0.1) throw Error("family_Tbar: eps must lie in (0, 0.1]");
    const FingerParams P = make_params(i, 1.5, eps, jitter);
    LoopFamily f([P](double t, double z) { return finger_jet(P, t, z); }, eps,
                 "Tbar", i);
    return certified(std::move(f), "Tbar", i, eps, jitter);
}

LoopFamily concatenate(const LoopFamily& a, const LoopFamily& b) {
    if (std::fabs(a.eps() - b.eps()) > 1e-12)
        throw BasepointMismatch("concatenate: eps mismatch");
    for (int j = 0; j < 16; ++j) {
        const double z = kTwoPi * double(j) / 16.0;
        const FamilyJet ja = a.at(1.0, z);
        const FamilyJet jb = b.at(0.0, z);
        if (angle_dist(ja.theta, jb.theta) > 1e-9 ||
            norm4(sub4(ja.v, jb.v)) > 1e-9)
            throw BasepointMismatch("concatenate: endpoint loops disagree");
    }
    LoopFamily ac = a, bc = b;
    auto fn = [ac, bc](double t, double z) {
        // Smooth junction: each half is traversed via a flat-ended
        // reparametrization so derivatives vanish at the seam.
        const bool first = t <= 0.5;
        const D2 local{first ? 2.0 * t : 2.0 * t - 1.0, 2.0, 0.0};
        const D2 S = detail::smoothstep(local);
        FamilyJet j = first ? ac.at(S.v, z) : bc.at(S.v, z);
        j.theta_t *= S.dt;
        for (auto& c : j.v_t) c *= S.dt;
        return j;
    };
    return LoopFamily(fn, a.eps(), a.name() + "*" + b.name());
}

LoopFamily reverse(const LoopFamily& a) {
    LoopFamily ac = a;
    auto fn = [ac](double t, double z) {
        FamilyJet j = ac.at(1.0 - t, z);
        j.theta_t = -j.theta_t;
        for (auto& c : j.v_t) c = -c;
        return j;
    };
    return LoopFamily(fn, a.eps(), "rev(" + a.name() + ")", a.param());
}

void check_embedded(const LoopFamily& f, int nt, int nz, double cutoff,
                    double floor) {
    std::vector<double> th(nz);
    std::vector<Vec4> vv(nz);
    for (int it = 0; it < nt; ++it) {
        const double t = nt > 1 ? double(it) / double(nt - 1) : 0.0;
        for (int j = 0; j < nz; ++j) {
            const FamilyJet jet = f.at(t, kTwoPi * double(j) / double(nz));
            th[j] = jet.theta;
            vv[j] = jet.v;
        }
        for (int j = 0; j < nz; ++j) {
            const double zj = kTwoPi * double(j) / double(nz);
            for (int k = j + 1; k < nz; ++k) {
                const double zk = kTwoPi * double(k) / double(nz);
                if (angle_dist(zj, zk) < cutoff) continue;
                const double dth = angle_dist(th[j], th[k]);
                const double dv = norm4(sub4(vv[j], vv[k]));
                if (dth * dth + dv * dv < floor * floor) {
                    std::ostringstream os;
                    os << "embeddedness certificate failed for " << f.name()
                       << " at t=" << t << ", z=" << zj << " vs z=" << zk;
                    throw EmbeddingCheckFailed(os.str());
                }
            }
        }
    }
}

double min_torus_self_distance(const LoopFamily& f, int nt, int nz,
                               double t_cutoff, double z_cutoff) {
    std::vector<double> th(std::size_t(nt) * nz);
    std::vector<Vec4> vv(std::size_t(nt) * nz);
    for (int it = 0; it < nt; ++it)
        for (int j = 0; j < nz; ++j) {
            const FamilyJet jet =
                f.at(double(it) / double(nt), kTwoPi * double(j) / double(nz));
            th[std::size_t(it) * nz + j] = jet.theta;
            vv[std::size_t(it) * nz + j] = jet.v;
        }
    double best = std::numeric_limits<double>::infinity();
    const std::size_t total = std::size_t(nt) * nz;
    for (std::size_t a = 0; a < total; ++a) {
        const double ta = double(a / nz) / double(nt);
        const double za = kTwoPi * double(a % nz) / double(nz);
        for (std::size_t b = a + 1; b < total; ++b) {
            const double tb = double(b / nz) / double(nt);
            const double zb = kTwoPi * double(b % nz) / double(nz);
            double dt = std::fabs(ta - tb);
            dt = std::min(dt, 1.0 - dt);
            const double dz = angle_dist(za, zb);
            if (dt < t_cutoff && dz < z_cutoff) continue;
            const double dth = angle_dist(th[a], th[b]);
            const double dv = norm4(sub4(vv[a], vv[b]));
            best = std::min(best, std::sqrt(dth * dth + dv * dv));
        }
    }
    return best;
}

namespace {

// Spline-backed sampled family: periodic cubic rows in z, zero-slope
// clamped columns in t.  Both interpolants are linear in the node data,
// so the z-partial of the surface is the t-spline of the row z-derivatives.
struct SampledGrid {
    int nt = 0, nz = 0;
    double eps = 0.0;
    // Components: theta offset (theta - z, unwrapped), then v0..v3.
    std::vector<detail::Spline1D> rows[5];

    void query(double t, double z, int comp, double* val, double* dval_t,
               double* dval_z) const {
        std::vector<double> col(nt), dcol(nt);
        for (int it = 0; it < nt; ++it)
            rows[comp][it].eval(z, &col[it], &dcol[it]);
        const double h = 1.0 / double(nt - 1);
        detail::Spline1D sp, dsp;
        sp.build_clamped(col, h);
        sp.eval(t, val, dval_t);
        if (dval_z) {
            dsp.build_clamped(dcol, h);
            dsp.eval(t, dval_z, nullptr);
        }
    }
};

FamilyJet sampled_jet(const SampledGrid& G, double t, double z) {
    double c[5], ct[5], cz[5];
    for (int k = 0; k < 5; ++k) G.query(t, z, k, &c[k], &ct[k], &cz[k]);
    const Vec4 s{c[1], c[2], c[3], c[4]};
    const Vec4 st{ct[1], ct[2], ct[3], ct[4]};
    const Vec4 sz{cz[1], cz[2], cz[3], cz[4]};
    const double n = norm4(s);
    const double inv = 1.0 / n;
    FamilyJet j;
    j.theta = z + c[0];
    j.theta_t = ct[0];
    j.theta_z = 1.0 + cz[0];
    const double pt = dot4(s, st) * inv * inv;
    const double pz = dot4(s, sz) * inv * inv;
    for (int k = 0; k < 4; ++k) {
        j.v[k] = s[k] * inv;
        j.v_t[k] = (st[k] - s[k] * pt) * inv;
        j.v_z[k] = (sz[k] - s[k] * pz) * inv;
    }
    return j;
}

} // namespace

LoopFamily import_sampled(std::istream& in) {
    std::string magic, version;
    int nt = 0, nz = 0;
    double eps = 0.0;
    if (!(in >> magic >> version >> nt >> nz >> eps))
        throw FormatError("import: unreadable header");
    if (magic != "LOOPFAMILY" || version != "v1")
        throw FormatError("import: bad magic/version");
    if (nt < 16 || nz < 16)
        throw FormatError("import: grid must be at least 16 x 16");
    if (!(eps > 0.0) || eps > 0.1)
        throw FormatError("import: eps must lie in (0, 0.1]");

    std::vector<double> theta(std::size_t(nt) * nz);
    std::vector<Vec4> v(std::size_t(nt) * nz);
    for (int it = 0; it < nt; ++it) {
        for (int j = 0; j < nz; ++j) {
            double tv, zv, th;
            Vec4 w;
            if (!(in >> tv >> zv >> th >> w[0] >> w[1] >> w[2] >> w[3]))
                throw FormatError("import: truncated sample table");
            if (std::fabs(tv - double(it) / double(nt - 1)) > 1e-9 ||
                std::fabs(zv - kTwoPi * double(j) / double(nz)) > 1e-9)
                throw FormatError("import: sample grid is not uniform");
            if (std::fabs(norm4(w) - 1.0) > 1e-9)
                throw UnitSphereViolation("import: sample off the unit sphere");
            theta[std::size_t(it) * nz + j] = th;
            v[std::size_t(it) * nz + j] = w;
        }
    }
    for (int j = 0; j < nz; ++j) {
        const std::size_t top = std::size_t(nt - 1) * nz + j;
        if (angle_dist(theta[top], theta[j]) > 1e-12 ||
            norm4(sub4(v[top], v[j])) > 1e-12)
            throw LoopConditionViolation(
                "import: first and last t-rows disagree");
    }
    for (int j = 0; j < nz; ++j) {
        const FamilyJet base = generic_base(eps, kTwoPi * double(j) / double(nz));
        if (angle_dist(theta[j], base.theta) > 1e-9 ||
            norm4(sub4(v[j], base.v)) > 1e-9)
            throw BasepointMismatch("import: t=0 row is not the basepoint loop");
    }

    // Unwrap theta to a continuous lift over the grid, then store the
    // periodic offset theta - z.
    std::vector<double> lift(theta.size());
    lift[0] = std::remainder(theta[0], kTwoPi);
    for (int j = 1; j < nz; ++j) {
        const double step = std::remainder(theta[j] - theta[j - 1], kTwoPi);
        if (std::fabs(step) >= kPi - 1e-9)
            throw FormatError("import: theta grid too coarse to unwrap");
        lift[j] = lift[j - 1] + step;
    }
    for (int it = 1; it < nt; ++it) {
        const std::size_t row = std::size_t(it) * nz;
        const double step0 =
            std::remainder(theta[row] - theta[row - nz], kTwoPi);
        if (std::fabs(step0) >= kPi - 1e-9)
            throw FormatError("import: theta grid too coarse to unwrap");
        lift[row] = lift[row - nz] + step0;
        for (int j = 1; j < nz; ++j) {
            const double step =
                std::remainder(theta[row + j] - theta[row + j - 1], kTwoPi);
            if (std::fabs(step) >= kPi - 1e-9)
                throw FormatError("import: theta grid too coarse to unwrap");
            lift[row + j] = lift[row + j - 1] + step;
        }
    }

    auto grid = std::make_shared<SampledGrid>();
    grid->nt = nt;
    grid->nz = nz;
    grid->eps = eps;
    const double hz = kTwoPi / double(nz);
    std::vector<double> rowdata(nz);
    for (int comp = 0; comp < 5; ++comp) {
        grid->rows[comp].resize(nt);
        for (int it = 0; it < nt; ++it) {
            for (int j = 0; j < nz; ++j) {
                const std::size_t idx = std::size_t(it) * nz + j;
                rowdata[j] = comp == 0 ? lift[idx] - hz * double(j)
                                       : v[idx][comp - 1];
            }
            grid->rows[comp][it].build_periodic(rowdata, hz);
        }
    }

    LoopFamily f([grid](double t, double z) { return sampled_jet(*grid, t, z); },
                 eps, "sampled");
    check_embedded(f);
    return f;
}

void export_sampled(const LoopFamily& f, std::ostream& out, int nt, int nz) {
    if (nt < 16 || nz < 16)
        throw FormatError("export: grid must be at least 16 x 16");
    out << "LOOPFAMILY v1 " << nt << " " << nz << " "
        << std::setprecision(17) << f.eps() << "\n";
    std::vector<std::pair<double, Vec4>> row0(nz);
    for (int it = 0; it < nt; ++it) {
        const double t = double(it) / double(nt - 1);
        for (int j = 0; j < nz; ++j) {
            const double z = kTwoPi * double(j) / double(nz);
            double th;
            Vec4 v;
            if (it + 1 == nt) {
                // The loop condition makes the last row a copy of the
                // first; emit it verbatim so importers see exact equality.
                th = row0[j].first;
                v = row0[j].second;
            } else {
                const FamilyJet jet = f.at(t, z);
                th = norm_angle(jet.theta);
                v = jet.v;
            }
            if (it == 0) row0[j] = {th, v};
            out << std::setprecision(17) << t << " " << z << " " << th << " "
                << v[0] << " " << v[1] << " " << v[2] << " " << v[3] << "\n";
        }
    }
    if (!out) throw FormatError("export: write failure");
}

} // namespace twistloop
