#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistloop/ring.hpp"

using namespace twistloop;

namespace {

LaurentPoly make(std::initializer_list<std::pair<std::int64_t, int>> terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms)
        p = laurent_add(p, LaurentPoly::monomial(e, c));
    return p;
}

LaurentPoly random_laurent(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 6), expd(-10, 10), coefd(-9, 9);
    LaurentPoly p;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        p = laurent_add(p, LaurentPoly::monomial(expd(rng), coefd(rng)));
    return p;
}

} // namespace

TEST_CASE("laurent_add examples") {
    CHECK(laurent_add(make({{2, 1}, {-1, 1}}), make({{-1, -1}})) ==
          make({{2, 1}}));
    CHECK(laurent_add(LaurentPoly{}, LaurentPoly{}).coeffs.empty());
    CHECK(laurent_add(make({{5, 3}}), make({{5, 2}})) == make({{5, 5}}));
}

TEST_CASE("laurent_neg examples") {
    CHECK(laurent_neg(make({{2, 1}, {3, -1}})) == make({{2, -1}, {3, 1}}));
    CHECK(laurent_neg(LaurentPoly{}).coeffs.empty());
    std::mt19937 rng(7);
    for (int it = 0; it < 100; ++it) {
        const LaurentPoly a = random_laurent(rng);
        CHECK(laurent_neg(laurent_neg(a)) == a);
    }
}

TEST_CASE("lambda0_reduce examples") {
    CHECK(lambda0_reduce(make({{0, 1}, {1, 5}, {-1, -2}})).is_zero());
    CHECK(lambda0_eq(lambda0_reduce(make({{-4, 3}, {4, 1}, {2, -2}})),
                     lambda0_add(lambda0_monomial(4, 4),
                                 lambda0_monomial(2, -2))));
    CHECK(lambda0_eq(lambda0_reduce(make({{-2, 1}, {2, 1}})),
                     lambda0_monomial(2, 2)));
}

TEST_CASE("lambda0_add examples") {
    CHECK(lambda0_add(lambda0_monomial(2, 1), lambda0_monomial(2, -1))
              .is_zero());
    CHECK(lambda0_eq(lambda0_add(lambda0_monomial(2, 2),
                                 lambda0_monomial(2, 3)),
                     lambda0_monomial(2, 5)));
    const Lambda0Element s =
        lambda0_add(lambda0_monomial(2, 1), lambda0_monomial(3, 1));
    CHECK(s.coeffs.size() == 2);
}

TEST_CASE("lambda0_eq examples") {
    CHECK(lambda0_eq(lambda0_reduce(make({{-2, 1}})), lambda0_monomial(2, 1)));
    CHECK_FALSE(lambda0_eq(Lambda0Element{}, lambda0_monomial(2, 1)));
}

TEST_CASE("relation generators reduce to zero") {
    for (int n = -50; n <= 50; ++n)
        CHECK(lambda0_reduce(make({{n, 1}, {-n, -1}})).is_zero());
    CHECK(lambda0_reduce(make({{0, 1}})).is_zero());
    CHECK(lambda0_reduce(make({{-1, 1}})).is_zero());
    CHECK(lambda0_reduce(make({{1, 1}})).is_zero());
}

TEST_CASE("canonical form invariants") {
    std::mt19937 rng(11);
    for (int it = 0; it < 2000; ++it) {
        const Lambda0Element r = lambda0_reduce(random_laurent(rng));
        for (const auto& [e, c] : r.coeffs) {
            CHECK(e >= 2);
            CHECK(c != 0);
        }
    }
}

TEST_CASE("fuzz: reduce is an additive homomorphism, 10000 cases") {
    std::mt19937 rng(42);
    int failures = 0;
    for (int it = 0; it < 10000; ++it) {
        const LaurentPoly a = random_laurent(rng);
        const LaurentPoly b = random_laurent(rng);
        const Lambda0Element lhs = lambda0_reduce(laurent_add(a, b));
        const Lambda0Element rhs =
            lambda0_add(lambda0_reduce(a), lambda0_reduce(b));
        if (!lambda0_eq(lhs, rhs)) ++failures;

        // Idempotence: re-reducing the canonical form as a Laurent
        // polynomial changes nothing.
        LaurentPoly canon;
        for (const auto& [e, c] : lambda0_reduce(a).coeffs)
            canon = laurent_add(canon, LaurentPoly::monomial(e, c));
        if (!lambda0_eq(lambda0_reduce(canon), lambda0_reduce(a))) ++failures;

        // Group laws.
        const Lambda0Element x = lambda0_reduce(a), y = lambda0_reduce(b);
        if (!lambda0_eq(lambda0_add(x, y), lambda0_add(y, x))) ++failures;
        if (!lambda0_add(x, lambda0_neg(x)).is_zero()) ++failures;
        if (!lambda0_eq(lambda0_add(x, Lambda0Element{}), x)) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("fuzz: associativity, 10000 cases") {
    std::mt19937 rng(43);
    int failures = 0;
    for (int it = 0; it < 10000; ++it) {
        const Lambda0Element x = lambda0_reduce(random_laurent(rng));
        const Lambda0Element y = lambda0_reduce(random_laurent(rng));
        const Lambda0Element z = lambda0_reduce(random_laurent(rng));
        if (!lambda0_eq(lambda0_add(lambda0_add(x, y), z),
                        lambda0_add(x, lambda0_add(y, z))))
            ++failures;
    }
    CHECK(failures == 0);
}
