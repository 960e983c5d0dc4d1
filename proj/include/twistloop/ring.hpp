#ifndef TWISTLOOP_RING_HPP
#define TWISTLOOP_RING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>

namespace twistloop {

using Int = boost::multiprecision::cpp_int;

// Element of Z[x,x^-1]: exponent -> nonzero coefficient.
struct LaurentPoly {
    std::map<std::int64_t, Int> coeffs;

    static LaurentPoly monomial(std::int64_t exp, const Int& c);
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const LaurentPoly& o) const { return coeffs == o.coeffs; }
};

// Canonical element of the quotient group: free abelian on x^2, x^3, ...
// Exponent keys are >= 2; no stored coefficient is zero.
struct Lambda0Element {
    std::map<std::int64_t, Int> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    std::string to_string() const;
};

LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly laurent_neg(const LaurentPoly& a);

// x^k -> x^|k| if |k| >= 2, else 0; sums and prunes to canonical form.
Lambda0Element lambda0_reduce(const LaurentPoly& a);
Lambda0Element lambda0_add(const Lambda0Element& a, const Lambda0Element& b);
Lambda0Element lambda0_neg(const Lambda0Element& a);
bool lambda0_eq(const Lambda0Element& a, const Lambda0Element& b);

// Single reduced monomial c*x^|k| (or zero when |k| <= 1).
Lambda0Element lambda0_monomial(std::int64_t k, const Int& c);

} // namespace twistloop

#endif
