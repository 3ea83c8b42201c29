#ifndef JETNF_FOURIER_HPP
#define JETNF_FOURIER_HPP

#include <map>
#include <string>
#include <vector>

#include "jetnf/coeff.hpp"

namespace jetnf {

// Monomial key q^I p^J t^tpow with I in Z^n (Fourier), J in N^n (Taylor).
struct FTKey {
    std::vector<int> I;
    std::vector<int> J;
    int tpow = 0;

    int inorm() const;
    int jnorm() const;
    bool operator==(const FTKey& o) const { return I == o.I && J == o.J && tpow == o.tpow; }
};

// Canonical order: t-power, then Taylor block (graded lex), then Fourier
// block (graded lex).
struct FTKeyLess {
    bool operator()(const FTKey& a, const FTKey& b) const;
};

// Element of K[q, q^-1][[p]] extended by a central parameter t, truncated to
// |I|_1 <= K (Fourier cutoff), |J|_1 <= M (Taylor cutoff), tpow <= T.
// Products may push Fourier modes outside the cutoff; those terms are
// discarded and counted (`spilled_fourier`), never wrapped. Taylor and t
// overflows are ordinary truncation but are counted as well. The counters
// are metadata: equality ignores them.
class FourierTaylorSeries {
public:
    using TermMap = std::map<FTKey, Coeff, FTKeyLess>;

    FourierTaylorSeries() = default;
    FourierTaylorSeries(int dof, int K, int M, int T, FieldSpec fs);

    static FourierTaylorSeries zero(int dof, int K, int M, int T, const FieldSpec& fs);
    static FourierTaylorSeries constant(const Coeff& c, int K, int M, int T, int dof);
    // p_i, q_i^k (k may be negative), t.
    FourierTaylorSeries with_term(const FTKey& k, const Coeff& c) const;

    int dof() const { return dof_; }
    int fourier_cutoff() const { return K_; }
    int taylor_cutoff() const { return M_; }
    int tparam_cutoff() const { return T_; }
    const FieldSpec& field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long spilled_fourier() const { return spilled_fourier_; }
    long truncated_taylor() const { return truncated_taylor_; }
    long truncated_t() const { return truncated_t_; }
    void add_spill(long f, long j, long t) const;  // counters are metadata

    Coeff coeff(const FTKey& k) const;
    void set_coeff(const FTKey& k, const Coeff& c);  // throws if out of cutoff
    void add_term(const FTKey& k, const Coeff& c);   // discards and counts

    FourierTaylorSeries operator-() const;
    FourierTaylorSeries operator+(const FourierTaylorSeries& g) const;
    FourierTaylorSeries operator-(const FourierTaylorSeries& g) const;
    FourierTaylorSeries operator*(const FourierTaylorSeries& g) const;
    FourierTaylorSeries scaled(const Coeff& c) const;

    // Slice with Fourier index 0: a series in p and t.
    FourierTaylorSeries average() const;
    // Slice of fixed t-power, t removed.
    FourierTaylorSeries t_slice(int k) const;
    // Multiply by t^k.
    FourierTaylorSeries times_t(int k) const;
    // Slice with |J| == j.
    FourierTaylorSeries taylor_slice(int j) const;
    // d/dp_i and the diagonal operator q_i d/dq_i.
    FourierTaylorSeries dp(int i) const;
    FourierTaylorSeries qdq(int i) const;

    bool operator==(const FourierTaylorSeries& g) const;
    bool same_terms(const FourierTaylorSeries& g) const { return terms_ == g.terms_; }

    void check_compatible(const FourierTaylorSeries& g) const;

    std::string str() const;  // q1..qn, p1..pn, t

private:
    int dof_ = 0, K_ = 0, M_ = 0, T_ = 0;
    FieldSpec field_{};
    TermMap terms_;
    mutable long spilled_fourier_ = 0;
    mutable long truncated_taylor_ = 0;
    mutable long truncated_t_ = 0;
};

// {F, G} = sum_i (dF/dp_i q_i dG/dq_i - q_i dF/dq_i dG/dp_i): normalized so
// that {sum omega_i p_i, q^I} = (omega, I) q^I; t is a Casimir.
FourierTaylorSeries poisson_bracket(const FourierTaylorSeries& F, const FourierTaylorSeries& G);

}  // namespace jetnf

#endif
