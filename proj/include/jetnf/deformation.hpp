#ifndef JETNF_DEFORMATION_HPP
#define JETNF_DEFORMATION_HPP

#include "jetnf/derivation.hpp"
#include "jetnf/ideal.hpp"

namespace jetnf {

// A deformation F(x, lambda) of f = F(-, lambda = 0): a series over the
// ambient block (first nx variables) and the parameter block.
struct Deformation {
    TruncatedSeries total;
    int nx = 0;
    int nparams = 0;

    Deformation() = default;
    Deformation(TruncatedSeries total_, int nx_);

    int order() const { return total.order(); }
    // Restriction to lambda = 0, as an nx-variable series.
    TruncatedSeries base() const;
    // d/d lambda_j at lambda = 0, as an nx-variable series.
    TruncatedSeries param_derivative_at_zero(int j) const;
};

struct VersalityReport {
    bool versal = false;
    MilnorResult milnor;
    // Quotient classes not reached by the parameter directions (grlex).
    std::vector<Multidegree> uncovered;
};

// Versality criterion: the classes of the first-order parameter directions
// must span the Milnor algebra of the base fiber. Requires a certified
// Milnor number at order N.
VersalityReport versality_check(const Deformation& F, int N);

// (F + G - f) over the joint parameter block (lambda, alpha); the base
// fibers must agree exactly modulo truncation.
Deformation thom_sebastiani(const Deformation& F, const Deformation& G);

struct InducingMap {
    // lambda_j(alpha): one series per F-parameter, over the alpha-ring.
    std::vector<TruncatedSeries> param_subst;
    // x_i -> Y_i(x, alpha) over the (x, alpha)-ring (alpha fixed).
    std::vector<TruncatedSeries> coord_subst;
    int nx = 0;
    int nparams_f = 0;
    int nparams_g = 0;
};

// Substitute an inducing map into F: the (x, alpha)-ring series
// F(coord_subst, param_subst), for verification against G.
TruncatedSeries apply_inducing_map(const Deformation& F, const InducingMap& im);

// Martinet's trick, order by order in the alpha-adic filtration: an
// automorphism over the base mapping F (+) G to F, from which the inducing
// map is extracted by solving the image of lambda equal to zero.
InducingMap induce_deformation(const Deformation& F, const Deformation& G, int N);

}  // namespace jetnf

#endif
