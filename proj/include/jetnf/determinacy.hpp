#ifndef JETNF_DETERMINACY_HPP
#define JETNF_DETERMINACY_HPP

#include "jetnf/derivation.hpp"
#include "jetnf/ideal.hpp"

namespace jetnf {

struct OneVarNormalForm {
    int k = 0;          // order of the singularity
    Coeff alpha;        // leading coefficient
    SeriesMap phi;      // substitution with f(phi) = alpha x^k mod truncation
};

// One-variable reduction f -> alpha x^k via y(x) = x (1 + b_1 x + ...)^{1/k}.
OneVarNormalForm one_var_normal_form(const TruncatedSeries& f);

// Order-by-order reduction removing a tail g of valuation >= mu+2: returns
// the composite automorphism Phi with (f+g)(Phi.map) = f modulo M^{N+1}.
// Preconditions: milnor_number(f, N) certified, valuation(g) >= mu+2.
Automorphism finite_determinacy_reduce(const TruncatedSeries& f, const TruncatedSeries& g,
                                       int N);

}  // namespace jetnf

#endif
