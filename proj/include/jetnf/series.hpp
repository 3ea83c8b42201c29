#ifndef JETNF_SERIES_HPP
#define JETNF_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetnf/coeff.hpp"
#include "jetnf/multidegree.hpp"

namespace jetnf {

// Truncated multivariate formal power series: a sparse, canonical map from
// multidegrees to exact coefficients. `order()` is both the truncation bound
// and the guaranteed precision: the value is exact modulo M^{order+1}.
// Every operation discards degrees > order immediately and propagates the
// precision honestly (differentiation costs one order, multiplication by an
// element of M^k buys k back).
class TruncatedSeries {
public:
    using TermMap = std::map<Multidegree, Coeff, GrlexLess>;

    TruncatedSeries() = default;
    TruncatedSeries(int nvars, int order, FieldSpec field);

    static TruncatedSeries zero(int nvars, int order, const FieldSpec& fs);
    static TruncatedSeries constant(const Coeff& c, int nvars, int order);
    static TruncatedSeries variable(int i, int nvars, int order, const FieldSpec& fs);
    static TruncatedSeries monomial(const Multidegree& m, const Coeff& c, int order);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    const FieldSpec& field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Coeff coeff(const Multidegree& m) const;
    void set_coeff(const Multidegree& m, const Coeff& c);  // canonicalizing
    void add_term(const Multidegree& m, const Coeff& c);

    // Smallest total degree present; empty means zero modulo truncation
    // ("infinity": unknown beyond order N, never the mathematical zero).
    std::optional<int> valuation() const;

    TruncatedSeries truncated(int new_order) const;
    TruncatedSeries homogeneous_part(int d) const;
    TruncatedSeries with_field_check(const TruncatedSeries& o) const;

    TruncatedSeries operator-() const;
    TruncatedSeries operator+(const TruncatedSeries& g) const;
    TruncatedSeries operator-(const TruncatedSeries& g) const;
    TruncatedSeries operator*(const TruncatedSeries& g) const;
    TruncatedSeries scaled(const Coeff& c) const;

    TruncatedSeries derivative(int i) const;

    // Multiplicative inverse of a unit (nonzero constant term).
    TruncatedSeries unit_inverse() const;

    TruncatedSeries pow(int k) const;

    bool operator==(const TruncatedSeries& g) const;
    bool operator!=(const TruncatedSeries& g) const { return !(*this == g); }

    // Identical term maps (ignores order bookkeeping).
    bool same_terms(const TruncatedSeries& g) const { return terms_ == g.terms_; }

    std::string str(const std::vector<std::string>& names) const;

private:
    int nvars_ = 0;
    int order_ = 0;
    FieldSpec field_{};
    TermMap terms_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
std::optional<int> valuation(const TruncatedSeries& f);

// Cauchy product kept to an explicit target order. Callers are responsible
// for the precision claim; used where a factor in M^k buys orders back
// (derivation application, homological steps).
TruncatedSeries mul_to(const TruncatedSeries& f, const TruncatedSeries& g, int out_order);

// k-th root of a series with constant term 1 (or a constant with an exact
// k-th root in the field): the unique root with the same constant branch.
TruncatedSeries kth_root_unit(const TruncatedSeries& u, int k);

}  // namespace jetnf

#endif
