#ifndef JETNF_SINGULAR_TORUS_HPP
#define JETNF_SINGULAR_TORUS_HPP

#include "jetnf/hamiltonian.hpp"
#include "jetnf/series.hpp"

namespace jetnf {

// Standard Poisson bracket on the polynomial model C^{2n} with variables
// (q_1..q_n, p_1..p_n): {f, g} = sum_i (df/dp_i dg/dq_i - df/dq_i dg/dp_i).
TruncatedSeries poisson_qp(const TruncatedSeries& f, const TruncatedSeries& g, int n);

// sum omega_i p_i q_i as a 2n-variable series.
TruncatedSeries coupled_oscillator_hamiltonian(const FrequencyVector& omega, int order);

struct SingularTorusResult {
    std::vector<TruncatedSeries> generators;  // chi_d, homogeneous degree d
    TruncatedSeries final_hamiltonian;
    TruncatedSeries defect;  // terms outside I^2 = (p_i q_i)(p_j q_j)
    double min_divisor = 0.0;
    int steps = 0;
};

// Degree-by-degree normalization of H + R with R of valuation >= 3: the
// homological operator {H, q^A p^B} = (omega, A - B) q^A p^B is diagonal;
// kernel terms (A = B) stay, everything else is divided away. The result
// differs from H by an element of I^2 at order N.
SingularTorusResult singular_torus_normalize(const FrequencyVector& omega,
                                             const TruncatedSeries& R, int N);

// Time-1 flow exp({chi, .}) applied to F (chi of valuation >= 3).
TruncatedSeries hamiltonian_flow(const TruncatedSeries& chi, const TruncatedSeries& F, int n);

// Terms of diff outside the ideal I^2: everything except q^A p^A with
// |A| >= 2.
TruncatedSeries singular_torus_defect(const TruncatedSeries& diff, int n);

}  // namespace jetnf

#endif
