#ifndef TWISTLOOP_FAMILIES_HPP
#define TWISTLOOP_FAMILIES_HPP

#include <functional>
#include <iosfwd>
#include <string>

#include "twistloop/geom.hpp"

namespace twistloop {

constexpr double kDefaultEps = 0.05;

// First-order jet of a loop of embeddings at (t, z): the S^1 coordinate
// theta (an angle; values are a local continuous lift, interpret mod 2pi),
// the unit S^3 coordinate v, and their partials in t and z.
struct FamilyJet {
    double theta, theta_t, theta_z;
    Vec4 v, v_t, v_z;
};

// A smooth basepointed loop of circle embeddings [0,1] x S^1 -> S^1 x S^3.
// Values are immutable; evaluation is pure and thread-safe.
class LoopFamily {
  public:
    using JetFn = std::function<FamilyJet(double, double)>;

    LoopFamily() = default;
    LoopFamily(JetFn fn, double eps, std::string name, int param = 0)
        : fn_(std::move(fn)), eps_(eps), name_(std::move(name)), param_(param) {}

    FamilyJet at(double t, double z) const { return fn_(t, z); }
    double eps() const { return eps_; }
    const std::string& name() const { return name_; }
    int param() const { return param_; }

  private:
    JetFn fn_;
    double eps_ = kDefaultEps;
    std::string name_;
    int param_ = 0;
};

// The bent basepoint embedding iota_eps evaluated at angle z:
// z -> (z, normalize(p + eps * (cos z, sin z, 0))).
FamilyJet generic_base(double eps, double z);

// Constant-speed spin: alpha_t(z) = iota_eps(z + 2 pi k t).
LoopFamily spin_loop(int k, double eps = kDefaultEps);

// Finger family: the circle emits a finger that winds i times around the
// S^1 direction through a fixed ball before retracting.  1 <= i <= 8.
LoopFamily family_T(int i, double eps = kDefaultEps, double jitter = 0.0);

// Tube family: i poke cycles, each carrying the tube once through the
// stationary circle while partially wound.  1 <= i <= 8.
LoopFamily family_Tbar(int i, double eps = kDefaultEps, double jitter = 0.0);

// Time-rescaled concatenation (a on [0,1/2], b on [1/2,1]) with a smooth
// junction reparametrization.
LoopFamily concatenate(const LoopFamily& a, const LoopFamily& b);

LoopFamily reverse(const LoopFamily& a);

// Sampled-family text format: header "LOOPFAMILY v1 Nt Nz eps", then
// Nt*Nz lines "ti zi theta v0 v1 v2 v3" in t-major order.
LoopFamily import_sampled(std::istream& in);
void export_sampled(const LoopFamily& f, std::ostream& out, int nt, int nz);

// Per-circle embeddedness certificate: sampled min self-distance with
// angular separation cutoff pi/64 and threshold 1e-4.  Throws
// EmbeddingCheckFailed.
void check_embedded(const LoopFamily& f, int nt = 64, int nz = 256,
                    double cutoff = kTwoPi / 128.0, double floor = 1e-4);

// Min self-distance of the swept torus (t,z) -> (theta, v), excluding
// pairs close in both coordinates.  Used by the swept-surface certificate.
double min_torus_self_distance(const LoopFamily& f, int nt, int nz,
                               double t_cutoff, double z_cutoff);

} // namespace twistloop

#endif
