#ifndef TWISTLOOP_PRESENTATION_HPP
#define TWISTLOOP_PRESENTATION_HPP

#include <string>
#include <vector>

#include "twistloop/ring.hpp"

namespace twistloop {

using IntMatrix = std::vector<std::vector<Int>>;

// Finitely presented abelian group: one relation per row, one generator
// per column.
struct AbelianPresentation {
    std::vector<std::string> generators;
    IntMatrix relations;
};

struct SNFResult {
    IntMatrix D;   // same shape as the input, diagonal
    IntMatrix U;   // rows x rows, unimodular
    IntMatrix V;   // cols x cols, unimodular
    std::vector<Int> invariant_factors; // nonzero diagonal entries, >= 1
    int free_rank = 0;                  // generators minus rank
};

// Exact Smith normal form with transform certificates: U*R*V = D is
// verified before returning, as are unimodularity and the divisibility
// chain.  Total on all integer matrices, including empty ones.
SNFResult smith_normal_form(const IntMatrix& R);

// Relations of the twist group on generators g_i: 2*g_1 = 0 and, for each
// i, g_i + signs[i]*n[i]*g_1 = 0.
AbelianPresentation build_M0_presentation(const std::vector<Int>& n,
                                          const std::vector<int>& signs);

// "quotient of Z/2" iff every invariant factor divides 2 and the free
// rank is zero; otherwise throws TheoremViolated.
std::string conclude_theorem(const AbelianPresentation& p);

Int det_exact(const IntMatrix& A); // square matrices, Bareiss elimination

} // namespace twistloop

#endif
