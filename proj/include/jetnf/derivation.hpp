#ifndef JETNF_DERIVATION_HPP
#define JETNF_DERIVATION_HPP

#include <optional>
#include <vector>

#include "jetnf/series_map.hpp"

namespace jetnf {

// Formal vector field sum a_i(x) d/dx_i as a derivation of the series ring.
class Derivation {
public:
    Derivation() = default;
    explicit Derivation(std::vector<TruncatedSeries> coeffs);

    static Derivation zero(int nvars, int order, const FieldSpec& fs);
    // The coordinate field x^I d/dx_i.
    static Derivation monomial_field(const Multidegree& I, int i, const Coeff& c, int order);
    // Diagonal linear field sum lambda_i x_i d/dx_i.
    static Derivation diagonal(const std::vector<Coeff>& lambda, int order);

    int nvars() const { return static_cast<int>(coeffs_.size()); }
    int order() const;
    const FieldSpec& field() const { return coeffs_.at(0).field(); }
    const TruncatedSeries& coeff(int i) const { return coeffs_.at(static_cast<size_t>(i)); }
    const std::vector<TruncatedSeries>& coeffs() const { return coeffs_; }
    bool is_zero() const;

    Derivation operator+(const Derivation& w) const;
    Derivation operator-(const Derivation& w) const;
    Derivation operator-() const;
    Derivation scaled(const Coeff& c) const;
    Derivation truncated(int order) const;
    Derivation homogeneous_part(int d) const;  // degree-d coefficient slice

    bool operator==(const Derivation& w) const { return coeffs_ == w.coeffs_; }
    bool same_terms(const Derivation& w) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    std::vector<TruncatedSeries> coeffs_;
};

// v(f) = sum a_i df/dx_i. Exact modulo M^{order+1} when the filtration order
// of v is >= 1; one order is lost otherwise.
TruncatedSeries apply(const Derivation& v, const TruncatedSeries& f);

// [v, w]_i = sum_j a_j d_j b_i - b_j d_j a_i.
Derivation lie_bracket(const Derivation& v, const Derivation& w);

// Min over components of the valuation; nullopt is the "infinity" sentinel.
std::optional<int> filtration_order(const Derivation& v);

// Formal change of variables with its inverse cached.
class Automorphism {
public:
    Automorphism() = default;
    // Computes the inverse via invert_map.
    explicit Automorphism(SeriesMap map);
    Automorphism(SeriesMap map, SeriesMap inverse, bool verify = true);

    static Automorphism identity(int nvars, int order, const FieldSpec& fs);
    static Automorphism linear(const std::vector<std::vector<Coeff>>& L, int order,
                               const FieldSpec& fs);

    const SeriesMap& map() const { return map_; }
    const SeriesMap& inverse_map() const { return inverse_; }
    int nvars() const { return map_.nvars(); }
    int order() const { return map_.order(); }

    // Substitution action f -> f(map), the algebraic (left-to-right) reading.
    TruncatedSeries act(const TruncatedSeries& f) const;
    TruncatedSeries act_inverse(const TruncatedSeries& f) const;

    Automorphism inverse() const;
    // Operator composition: (phi.then_inner(psi))(f) = phi(psi(f)).
    Automorphism then_inner(const Automorphism& psi) const;

private:
    SeriesMap map_;
    SeriesMap inverse_;
};

// Time-1 exponential of a field of filtration order >= 2; the Lie series
// terminates at the truncation order. The inverse is exp(-v), computed
// directly rather than through invert_map.
Automorphism exp_derivation(const Derivation& v);

// adjoint(phi, v)(f) = phi^{-1}(v(phi(f))): the change of variables of a
// vector field, computed via w_j = (sum_i a_i d_i phi_j) o phi^{-1}.
Derivation adjoint(const Automorphism& phi, const Derivation& v);

}  // namespace jetnf

#endif
