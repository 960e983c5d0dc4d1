#include "twistloop/ring.hpp"

#include <cstdlib>
#include <sstream>

namespace twistloop {

LaurentPoly LaurentPoly::monomial(std::int64_t exp, const Int& c) {
    LaurentPoly p;
    if (c != 0) p.coeffs[exp] = c;
    return p;
}

LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.coeffs) {
        auto it = out.coeffs.find(e);
        if (it == out.coeffs.end()) {
            out.coeffs.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) out.coeffs.erase(it);
        }
    }
    return out;
}

LaurentPoly laurent_neg(const LaurentPoly& a) {
    LaurentPoly out;
    for (const auto& [e, c] : a.coeffs) out.coeffs.emplace(e, -c);
    return out;
}

Lambda0Element lambda0_reduce(const LaurentPoly& a) {
    Lambda0Element out;
    for (const auto& [e, c] : a.coeffs) {
        const std::int64_t k = e < 0 ? -e : e;
        if (k <= 1) continue;
        auto it = out.coeffs.find(k);
        if (it == out.coeffs.end()) {
            out.coeffs.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) out.coeffs.erase(it);
        }
    }
    return out;
}

Lambda0Element lambda0_add(const Lambda0Element& a, const Lambda0Element& b) {
    Lambda0Element out = a;
    for (const auto& [e, c] : b.coeffs) {
        auto it = out.coeffs.find(e);
        if (it == out.coeffs.end()) {
            out.coeffs.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) out.coeffs.erase(it);
        }
    }
    return out;
}

Lambda0Element lambda0_neg(const Lambda0Element& a) {
    Lambda0Element out;
    for (const auto& [e, c] : a.coeffs) out.coeffs.emplace(e, -c);
    return out;
}

bool lambda0_eq(const Lambda0Element& a, const Lambda0Element& b) {
    return a.coeffs == b.coeffs;
}

Lambda0Element lambda0_monomial(std::int64_t k, const Int& c) {
    return lambda0_reduce(LaurentPoly::monomial(k, c));
}

std::string Lambda0Element::to_string() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Int ac = c < 0 ? Int(-c) : c;
        if (ac != 1) os << ac << "*";
        os << "x^" << e;
        first = false;
    }
    return os.str();
}

} // namespace twistloop
