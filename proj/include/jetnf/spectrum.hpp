#ifndef JETNF_SPECTRUM_HPP
#define JETNF_SPECTRUM_HPP

#include <string>
#include <utility>
#include <vector>

#include "jetnf/multidegree.hpp"
#include "jetnf/series.hpp"

namespace jetnf {

// Spectrum of a diagonal linear vector field sum lambda_i x_i d_i. Exact
// over rationals and Q(sqrt d); float mode attaches the two tolerances of
// the resonance decision procedure.
struct Spectrum {
    std::vector<Coeff> lambda;
    double eps_zero = 1e-12;  // |divisor| below this: resonant
    double eps_safe = 1e-9;   // |divisor| above this: safe to divide

    int n() const { return static_cast<int>(lambda.size()); }
    const FieldSpec& field() const { return lambda.at(0).field(); }
    bool exact() const { return field().kind != FieldKind::ComplexFloat; }
};

// lambda_i - (lambda, I).
Coeff eigenvalue(const Spectrum& s, const Multidegree& I, int i);

enum class DivisorClass { Resonant, Safe };

// Exact modes decide by is_zero; float mode uses the two thresholds and
// refuses the gap between them (never silently divide).
DivisorClass classify_divisor(const Spectrum& s, const Coeff& eig);

enum class DomainTag { Poincare, Siegel, Boundary };
std::string domain_str(DomainTag t);

// Convex-hull membership of 0 among the spectrum points, exact in the
// rational/quadratic embeddings; float mode returns Boundary inside the
// eps_safe margin.
DomainTag is_poincare_domain(const Spectrum& s);

struct PoincareBound {
    double value = 0.0;      // M/m after the optimal rotation
    int ceil_bound = 0;      // least integer >= value
    std::string exact_text;  // exact rendering of M and m
};

// Bound |I| <= M/m on resonant monomials; the rotation maximizes the
// minimal real part over the exact candidate directions (spectrum points
// and hull edge normals).
PoincareBound poincare_bound(const Spectrum& s);

struct ResonantMonomial {
    Multidegree I;
    int direction = 0;
    bool operator==(const ResonantMonomial& o) const {
        return I == o.I && direction == o.direction;
    }
};

struct ResonanceReport {
    std::vector<ResonantMonomial> monomials;
    DomainTag domain = DomainTag::Siegel;
    int search_bound = 0;
    bool certified_complete = false;
    double eps_zero = 0.0;  // echoed in float mode
};

// All resonant x^I d_i with 2 <= |I| <= d_max.
ResonanceReport resonant_monomials(const Spectrum& s, int d_max);

struct SiegelResult {
    bool holds = false;
    bool exact_zero = false;
    ResonantMonomial violation;       // first violation when !holds
    double violation_value = 0.0;     // |eigenvalue| there
    double best_constant = 0.0;       // min |eigenvalue| * |I|^k over the scan
    ResonantMonomial best_at;
};

// Check |lambda_i - (lambda, I)| >= C / |I|^k over 2 <= |I| <= d_max.
// An exact zero anywhere in range is reported as the violation regardless
// of C (no constant can repair a resonance).
SiegelResult siegel_check(const Spectrum& s, double C, double k, int d_max);

// (d, min |eigenvalue| over |I| = d) for d = 2..d_max.
std::vector<std::pair<int, double>> divisor_statistics(const Spectrum& s, int d_max);

}  // namespace jetnf

#endif
