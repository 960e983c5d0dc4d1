#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "twistloop/errors.hpp"
#include "twistloop/invariants.hpp"

using namespace twistloop;

namespace {

Lambda0Element w2_of(const LoopFamily& f) {
    SolverConfig cfg;
    return compute_invariants(f, cfg).w2;
}

// Orientation-preserving reparametrization of loop time with fixed ends.
LoopFamily reparam(const LoopFamily& f) {
    const auto phi = [](double t) {
        return t - 0.15 * std::sin(kTwoPi * t) / kTwoPi;
    };
    const auto dphi = [](double t) { return 1.0 - 0.15 * std::cos(kTwoPi * t); };
    return LoopFamily(
        [f, phi, dphi](double t, double z) {
            FamilyJet j = f.at(phi(t), z);
            const double d = dphi(t);
            j.theta_t *= d;
            j.v_t = scale4(j.v_t, d);
            return j;
        },
        f.eps(), f.name(), f.param());
}

} // namespace

TEST_CASE("w1 examples") {
    for (int k = -2; k <= 2; ++k) CHECK(compute_w1(spin_loop(k)) == k);
    for (int i = 1; i <= 3; ++i) {
        CHECK(compute_w1(family_T(i)) == 0);
        CHECK(compute_w1(family_Tbar(i)) == 0);
    }
    CHECK(compute_w1(concatenate(spin_loop(1), spin_loop(2))) == 3);
}

TEST_CASE("degree formula on a synthetic collision") {
    // theta climbs 4 pi along the arc and returns to its start value:
    // delta_B = 0 and k = 2, independent of the (unused) sphere data.
    const LoopFamily toy(
        [](double, double z) {
            FamilyJet j;
            j.theta = 1.0 + 4.0 * z;
            j.theta_t = 0.0;
            j.theta_z = 4.0;
            j.v = {1, 0, 0, 0};
            j.v_t = {0, 0, 0, 0};
            j.v_z = {0, 0, 0, 0};
            return j;
        },
        0.05, "toy");
    CollisionPoint c{};
    c.t = 0.5;
    c.z1 = 0.0;
    c.z2 = kTwoPi / 2.0;
    const DegreeTrace tr = degree_kp(toy, c, 0.5);
    CHECK(tr.delta_arc == doctest::Approx(2.0 * kTwoPi));
    CHECK(tr.delta_B == doctest::Approx(0.0));
    CHECK(tr.k == 2);
    CHECK(tr.k_slice == 2);
}

TEST_CASE("w2 examples") {
    for (int k : {-1, 0, 2}) CHECK(w2_of(spin_loop(k)).is_zero());

    const Lambda0Element t1 = w2_of(family_T(1));
    REQUIRE(t1.coeffs.size() == 1);
    CHECK(t1.coeffs.begin()->first == 2);
    CHECK((t1.coeffs.begin()->second == 1 || t1.coeffs.begin()->second == -1));

    for (int i = 1; i <= 3; ++i) {
        const Lambda0Element w = w2_of(family_Tbar(i));
        REQUIRE(w.coeffs.size() == 1);
        CHECK(w.coeffs.begin()->first == 2);
        Int c = w.coeffs.begin()->second;
        if (c < 0) c = -c;
        CHECK(c == i);
    }
}

TEST_CASE("degree traces satisfy their invariants") {
    SolverConfig cfg;
    const LoopFamily f = family_Tbar(3);
    const InvariantReport rep = compute_invariants(f, cfg);
    REQUIRE_FALSE(rep.classes.empty());
    for (const auto& ic : rep.classes) {
        const DegreeTrace& tr = ic.trace;
        CHECK(tr.k == tr.k_slice);
        CHECK(std::fabs((tr.delta_arc + tr.delta_B) / kTwoPi - tr.k) <= 1e-6);
        CHECK(tr.delta_B <= 0.0);
        CHECK(tr.delta_B > -kTwoPi);

        // Swap representative: same sign, degree -k, same reduced monomial.
        CollisionPoint sw = ic.point;
        std::swap(sw.z1, sw.z2);
        const DegreeTrace tw = degree_with_slice(f, sw, rep.slice_angle);
        CHECK(tw.k == -tr.k);
        CHECK(lambda0_eq(lambda0_monomial(tr.k, Int(ic.point.sign)),
                         lambda0_monomial(tw.k, Int(ic.point.sign))));
    }
}

TEST_CASE("homomorphism and inversion on sample pairs") {
    const LoopFamily a = family_T(1);
    const LoopFamily b = family_Tbar(2);
    SolverConfig cfg;
    const InvariantReport ra = compute_invariants(a, cfg);
    const InvariantReport rb = compute_invariants(b, cfg);
    const InvariantReport rab = compute_invariants(concatenate(a, b), cfg);
    CHECK(rab.w1 == ra.w1 + rb.w1);
    CHECK(lambda0_eq(rab.w2, lambda0_add(ra.w2, rb.w2)));

    const InvariantReport rrev = compute_invariants(reverse(b), cfg);
    CHECK(rrev.w1 == -rb.w1);
    CHECK(lambda0_eq(rrev.w2, lambda0_neg(rb.w2)));

    // Inverse pair cancels.
    const InvariantReport rinv =
        compute_invariants(concatenate(a, reverse(a)), cfg);
    CHECK(rinv.w2.is_zero());
}

TEST_CASE("reparametrization invariance") {
    const LoopFamily f = family_Tbar(1);
    SolverConfig cfg;
    const InvariantReport r1 = compute_invariants(f, cfg);
    const InvariantReport r2 = compute_invariants(reparam(f), cfg);
    CHECK(r1.w1 == r2.w1);
    CHECK(lambda0_eq(r1.w2, r2.w2));
}

TEST_CASE("tbar slice-crossing patterns") {
    // Deterministic generic slice: 0 shifted per the 1e-2 convention until
    // it clears the basepoint angle and the apex drift band.
    const double slice = 0.1;
    const LoopFamily f = family_Tbar(3);
    for (int s = 0; s < 64; ++s) {
        const double t = (s + 0.5) / 64.0;
        const auto cs = slice_profile(f, t, slice);
        std::vector<int> pat;
        for (const auto& c : cs) pat.push_back(c.sign);
        const bool ok = (pat == std::vector<int>{1}) ||
                        (pat == std::vector<int>{1, 1, -1});
        CHECK(ok);
        // Signed totals are +1; all subinterval sums lie in {0, 1, -1, 2}.
        int total = 0;
        for (int v : pat) total += v;
        CHECK(total == 1);
        for (std::size_t i = 0; i < pat.size(); ++i) {
            int run = 0;
            for (std::size_t j = i; j < pat.size(); ++j) {
                run += pat[std::size_t(j)];
                CHECK((run == 0 || run == 1 || run == -1 || run == 2));
            }
        }
    }
}

TEST_CASE("certification gates") {
    SolverConfig cfg;
    const InvariantReport rep = compute_invariants(family_T(2), cfg);
    CHECK(rep.min_det_mag >= cfg.det_floor);
    CHECK(rep.max_residual <= cfg.residual_max);
    for (const auto& ic : rep.classes) {
        const double th1 = norm_angle(
            family_T(2).at(ic.point.t, ic.point.z1).theta);
        const double th2 = norm_angle(
            family_T(2).at(ic.point.t, ic.point.z2).theta);
        CHECK(angle_dist(th1, rep.slice_angle) >= 1e-3);
        CHECK(angle_dist(th2, rep.slice_angle) >= 1e-3);
    }
}
