#ifndef JETNF_IDEAL_HPP
#define JETNF_IDEAL_HPP

#include <optional>
#include <vector>

#include "jetnf/linalg.hpp"
#include "jetnf/series.hpp"

namespace jetnf {

// Row-reduced degree-<=N slice of the ideal spanned by {x^A g_i}: membership
// tests, explicit combinations, quotient bookkeeping. Multiplier monomials
// x^A are restricted to |A| >= min_filtration.
class JetIdealBasis {
public:
    JetIdealBasis(std::vector<TruncatedSeries> generators, int order, int min_filtration = 0);

    int order() const { return order_; }
    int nvars() const { return nvars_; }
    int rank() const { return reducer_.rank(); }
    const std::vector<TruncatedSeries>& generators() const { return generators_; }
    const std::vector<Multidegree>& column_monomials() const { return monomials_; }

    bool contains(const TruncatedSeries& g) const;

    // Coefficients (b_1,...,b_r) with sum b_i g_i = g modulo M^{order+1} and
    // valuation(b_i) >= min_filtration; graded-lex-first pivot solution.
    std::optional<std::vector<TruncatedSeries>> solve(const TruncatedSeries& g) const;

    // Residue of g in the quotient: coordinates over standard monomials.
    CoeffRow residue(const TruncatedSeries& g) const;

    // Non-pivot monomials: a monomial basis of the quotient slice.
    std::vector<Multidegree> standard_monomials() const;

    // True when every monomial of total degree d lies in the slice span.
    bool degree_slice_full(int d) const;

    CoeffRow to_vector(const TruncatedSeries& g) const;

private:
    std::vector<TruncatedSeries> generators_;
    int order_;
    int nvars_;
    int min_filtration_;
    FieldSpec field_;
    std::vector<Multidegree> monomials_;  // grlex column order
    std::map<Multidegree, int, GrlexLess> column_of_;
    std::vector<std::pair<int, Multidegree>> row_tags_;  // provenance -> (gen, multiplier)
    RowReducer reducer_;
};

JetIdealBasis jacobian_ideal(const TruncatedSeries& f, int min_filtration = 0);

struct MilnorResult {
    bool certified = false;
    int mu = 0;                 // certified value, else the current lower bound
    int witness_degree = -1;    // d with M^d inside the ideal slice
    std::vector<Multidegree> basis;  // monomial classes spanning the Milnor algebra
    bool unit_warning = false;  // nonzero constant term: mu = 0 by convention
};

MilnorResult milnor_number(const TruncatedSeries& f, int N);

// Solve sum b_i d_i f = g modulo M^{N+1} with valuation(b_i) >= min_filtration,
// degree-graded linear algebra with graded-lex-first pivots; nullopt when g is
// not in the reachable slice.
std::optional<std::vector<TruncatedSeries>> ideal_membership_solve(const TruncatedSeries& g,
                                                                   const TruncatedSeries& f,
                                                                   int min_filtration);

}  // namespace jetnf

#endif
