#ifndef JETNF_HAMILTONIAN_HPP
#define JETNF_HAMILTONIAN_HPP

#include <optional>

#include "jetnf/fourier.hpp"
#include "jetnf/linalg.hpp"

namespace jetnf {

struct DiophantineWitness {
    double C = 0.0;
    double tau = 0.0;
    int checked_up_to = 0;
    double best_C = 0.0;  // min |(omega, I)| |I|^tau over the scan
};

struct FrequencyVector {
    std::vector<Coeff> omega;
    std::optional<DiophantineWitness> witness;
    double eps_safe = 1e-9;

    int n() const { return static_cast<int>(omega.size()); }
    const FieldSpec& field() const { return omega.at(0).field(); }
    bool exact() const { return field().kind != FieldKind::ComplexFloat; }
    Coeff dot(const std::vector<int>& I) const;
};

struct DiophantineResult {
    bool holds = false;
    bool exact_zero = false;
    std::vector<int> violation_I;
    double best_C = 0.0;
    std::vector<int> best_I;
};

// Scan |(omega, I)| >= C / |I|_1^tau over 1 <= |I|_1 <= Kmax (one vector per
// +-pair, first nonzero positive). Stores the witness on success.
DiophantineResult diophantine_check(FrequencyVector& omega, double C, double tau, int Kmax);

struct HomologicalSolution {
    FourierTaylorSeries u;
    double min_divisor = 0.0;
};

// Solve {sum omega_i p_i, u} = g by the Hadamard inverse: divide each
// Fourier coefficient by (omega, I). Requires average(g) = 0 exactly.
HomologicalSolution solve_homological(const FourierTaylorSeries& g, const FrequencyVector& omega);

// H = sum omega_i p_i + sum a_ij p_i p_j + ... as a series in p only.
struct KolmogorovHamiltonian {
    FourierTaylorSeries H;
    std::vector<Coeff> omega;
    CoeffMatrix quad;         // symmetric a_ij
    bool k_condition = false; // det(a) != 0

    static KolmogorovHamiltonian from_series(const FourierTaylorSeries& H);
};

struct BlockSolveResult {
    FourierTaylorSeries solution;      // p-degree <= 1
    FourierTaylorSeries beta;          // constant (t-series) component
    FourierTaylorSeries normal;        // sum c_i p_i component
    std::vector<Coeff> normal_coeffs;  // the c_i (t-free input only)
    double min_divisor = 0.0;
};

// Triangular solve of {H, u} = rhs modulo I^2: first the A/I slice by the
// Hadamard inverse, then the I/I^2 slice after subtracting {a0, -} of the
// first solution. beta and the p_i classes are split off as the normal
// component.
BlockSolveResult block_solve(const FourierTaylorSeries& rhs, const KolmogorovHamiltonian& f,
                             const FrequencyVector& omega);

struct KolmogorovGenerator {
    FourierTaylorSeries chi;      // t-free generating Hamiltonian at step k
    std::vector<Coeff> shift;     // action translation coefficients a_i
    int t_order = 0;
};

struct KolmogorovResult {
    std::vector<KolmogorovGenerator> generators;
    FourierTaylorSeries final_hamiltonian;
    FourierTaylorSeries defect;       // terms outside t I^2 + C[t] (empty when clean)
    double min_divisor = 0.0;
    long spilled_fourier = 0;
    long truncated_taylor = 0;
    long truncated_t = 0;
};

// Order-by-order (in t) Kolmogorov normalization of H + tR: after the run,
// final - H lies in t I^2 plus q,p-independent t-series, modulo the cutoffs.
// Requires a Diophantine witness on omega and condition (K).
KolmogorovResult kolmogorov_normalize(const KolmogorovHamiltonian& f,
                                      const FrequencyVector& omega,
                                      const FourierTaylorSeries& R);

// The canonical transformation of one generator applied to a series:
// exp({t^k chi, .} - t^k sum a_i d/dp_i), used by the normalization loop and
// by independent forward verification.
FourierTaylorSeries apply_generator(const KolmogorovGenerator& gen,
                                    const FourierTaylorSeries& F);

// Membership test for the theorem's target space: every term must lie in
// t I^2 (tpow >= 1 and |J| >= 2) or be a q,p-independent t-series. Returns
// the offending part.
FourierTaylorSeries kolmogorov_defect(const FourierTaylorSeries& diff);

}  // namespace jetnf

#endif
