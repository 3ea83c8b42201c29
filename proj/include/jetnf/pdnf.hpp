#ifndef JETNF_PDNF_HPP
#define JETNF_PDNF_HPP

#include "jetnf/derivation.hpp"
#include "jetnf/spectrum.hpp"

namespace jetnf {

// Flow-box rectification: an automorphism Phi with adjoint(Phi, v) = d_1
// modulo Der^{(N)}. Requires some component of v to be a unit.
Automorphism rectify(const Derivation& v, int N);

struct PoincareDulacResult {
    Derivation normal_part;  // r: resonant monomials only
    Automorphism transform;  // Phi with adjoint(Phi, v + w) = v + r
    double min_divisor = 0.0;  // smallest |eigenvalue| divided by
    int steps = 0;             // homological solves performed
};

// Order-by-order Poincare-Dulac normalization of v + w, v the diagonal
// field of the spectrum and w of filtration order >= 2. Each homological
// solve divides a non-resonant coefficient by its eigenvalue; resonant
// coefficients migrate into the normal part.
PoincareDulacResult poincare_dulac(const Spectrum& lin, const Derivation& w, int N);

}  // namespace jetnf

#endif
