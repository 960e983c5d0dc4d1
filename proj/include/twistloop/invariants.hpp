#ifndef TWISTLOOP_INVARIANTS_HPP
#define TWISTLOOP_INVARIANTS_HPP

#include <string>
#include <vector>

#include "twistloop/collide.hpp"
#include "twistloop/ring.hpp"

namespace twistloop {

// Audit trail for one local-degree computation.
struct DegreeTrace {
    double delta_arc;   // continuous theta displacement along the z1 -> z2 arc
    double delta_B;     // basepoint-avoiding return displacement, in (-2pi, 0]
    int k;              // certified degree (lift route)
    int k_slice;        // independent slice-counting route; must equal k
    double slice_angle; // the generic slice actually used
};

struct InvariantClass {
    CollisionPoint point;
    DegreeTrace trace;
};

struct InvariantReport {
    std::string family;
    int param = 0;
    int w1 = 0;
    Lambda0Element w2;
    std::vector<InvariantClass> classes;
    double min_det_mag = 0;
    double max_residual = 0;
    double slice_angle = 0;
    SolverConfig config;
};

// Winding number of the basepoint trace t -> theta(t, 0).
int compute_w1(const LoopFamily& f);

// Local degree of one collision class.  Throws SliceHitsEndpoint /
// NonGenericSlice for a bad slice (caller retries via choose_slice),
// NonIntegralDegree past the integrality guard, DegreeMismatch when the
// two routes disagree.
DegreeTrace degree_kp(const LoopFamily& f, const CollisionPoint& c,
                      double slice_angle);

// First slice angle (initial, then shifted by 1e-2 steps, up to max_retries)
// for which degree_kp succeeds; returns the computed trace.
DegreeTrace degree_with_slice(const LoopFamily& f, const CollisionPoint& c,
                              double initial, int max_retries = 16);

// First slice angle at distance >= 1e-3 from every collision endpoint's
// theta value, starting from initial and shifting by 1e-2.
double choose_slice(const LoopFamily& f,
                    const std::vector<CollisionPoint>& classes, double initial,
                    int max_retries = 16);

// Full W2 computation: collision classes, per-class degrees, reduced sum.
InvariantReport compute_invariants(const LoopFamily& f,
                                   const SolverConfig& cfg);

// Crossing profile of z -> theta(t, z) against a slice level, for diagnostics.
std::vector<Crossing> slice_profile(const LoopFamily& f, double t,
                                    double slice_angle);

} // namespace twistloop

#endif
