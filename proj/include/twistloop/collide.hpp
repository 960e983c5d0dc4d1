#ifndef TWISTLOOP_COLLIDE_HPP
#define TWISTLOOP_COLLIDE_HPP

#include <vector>

#include "twistloop/families.hpp"

namespace twistloop {

struct SolverConfig {
    int nt = 64;                 // coarse scan cells in t
    int nz = 64;                 // coarse scan cells in z (each circle factor)
    double newton_tol = 1e-12;   // chart-residual convergence target
    int max_newton = 40;
    double max_step = 0.2;       // damping cap on a Newton step
    double dedupe_radius = 1e-3;
    double det_floor = 1e-6;     // transversality floor on |det J|
    double residual_max = 1e-9;  // certification ceiling on residuals
    double separation_floor = kTwoPi / 128.0; // min angular z1-z2 separation
    double lipschitz_safety = 2.0;
    double slice_angle = 0.0;    // initial generic slice z' for degree counts
    int threads = 0;             // 0 = serial; >0 capped by env TWIN_THREADS
    unsigned seed = 0;           // recorded in manifests; scan is deterministic
};

// One Sigma_2-class of transverse self-collision, canonicalized to z1 < z2.
struct CollisionPoint {
    double t, z1, z2;
    Vec4 location;   // common S^3 value
    int sign;        // orientation sign of the collision
    double det_mag;  // |det| of the 3x3 chart Jacobian
    double residual; // ambient mismatch |v(t,z1) - v(t,z2)|
};

struct Candidate {
    double t, z1, z2;
};

enum class RefineStatus { ok, no_convergence, out_of_domain, separation_collapse };

struct RefineResult {
    RefineStatus status = RefineStatus::no_convergence;
    double t = 0, z1 = 0, z2 = 0;
    Vec4 location{1, 0, 0, 0};
    int sign = 0;
    double det_mag = 0;
    double residual = 0;
    int iterations = 0;
};

// Interval-style sweep over the (t, z1, z2) grid: keeps cells whose center
// mismatch is within a first-order Lipschitz bound of zero.  Deterministic,
// lexicographically ordered.
std::vector<Candidate> coarse_scan(const LoopFamily& f, const SolverConfig& cfg);

// Damped Newton on F = chart(v(t,z1)) - chart(v(t,z2)) with the chart fixed
// at the initial midpoint; on convergence the chart is recentered once for
// the reported sign/residual.  Throws NonTransverse when a converged
// collision has |det| below cfg.det_floor.
RefineResult refine_newton(const LoopFamily& f, double t, double z1, double z2,
                           const SolverConfig& cfg);

// Canonicalize (z1 < z2), cluster within dedupe_radius, pick the smallest-
// residual representative per cluster.  Throws AmbiguousCluster on a sign
// conflict inside one cluster.
std::vector<CollisionPoint> dedupe_and_quotient(std::vector<RefineResult> in,
                                                const SolverConfig& cfg);

// Full pipeline: scan, refine every candidate (separation collapses and
// non-convergent candidates are dropped), dedupe.
std::vector<CollisionPoint> find_collisions(const LoopFamily& f,
                                            const SolverConfig& cfg);

} // namespace twistloop

#endif
