#ifndef TWISTLOOP_ORACLE_HPP
#define TWISTLOOP_ORACLE_HPP

#include <vector>

#include "twistloop/collide.hpp"
#include "twistloop/families.hpp"
#include "twistloop/ring.hpp"

namespace twistloop {

// Independent dense-grid collision search: a 128^3 scan of the ambient
// distance ||v(t,z1) - v(t,z2)|| seeds a derivative-free bisection
// (pattern search with radius halving).  Shares no refinement code with
// the Newton pipeline; signs come from a finite-difference 4x4
// determinant.  Output is deduped into canonical Sigma_2 classes sorted
// by (t, z1).
std::vector<CollisionPoint> oracle_collisions(const LoopFamily& f,
                                              const SolverConfig& cfg);

// W2 recomputed from oracle_collisions with degrees taken purely from
// signed slice crossings (no lift route).
Lambda0Element w2_bruteforce(const LoopFamily& f, const SolverConfig& cfg);

} // namespace twistloop

#endif
