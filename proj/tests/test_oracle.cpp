#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twistloop/invariants.hpp"
#include "twistloop/oracle.hpp"

using namespace twistloop;

TEST_CASE("oracle and solver agree on collision classes") {
    SolverConfig cfg;
    for (int i : {1, 2}) {
        const LoopFamily f = family_Tbar(i);
        const auto solver = find_collisions(f, cfg);
        const auto oracle = oracle_collisions(f, cfg);
        REQUIRE(solver.size() == oracle.size());
        for (std::size_t k = 0; k < solver.size(); ++k) {
            CHECK(std::fabs(solver[k].t - oracle[k].t) <= 1e-6);
            CHECK(std::fabs(solver[k].z1 - oracle[k].z1) <= 1e-6);
            CHECK(std::fabs(solver[k].z2 - oracle[k].z2) <= 1e-6);
            CHECK(solver[k].sign == oracle[k].sign);
        }
    }
}

TEST_CASE("brute-force w2 agrees with the certified computation") {
    SolverConfig cfg;
    for (const LoopFamily& f :
         {family_Tbar(1), family_T(1), spin_loop(1)}) {
        const Lambda0Element certified = compute_invariants(f, cfg).w2;
        const Lambda0Element brute = w2_bruteforce(f, cfg);
        CHECK(lambda0_eq(certified, brute));
    }
}

TEST_CASE("oracle finds nothing on a collision-free family") {
    SolverConfig cfg;
    CHECK(oracle_collisions(spin_loop(2), cfg).empty());
}
