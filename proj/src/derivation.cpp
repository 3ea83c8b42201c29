#include "jetnf/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace jetnf {

Derivation::Derivation(std::vector<TruncatedSeries> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw input_error("empty derivation");
    int n = static_cast<int>(coeffs_.size());
    for (const auto& c : coeffs_) {
        if (c.nvars() != n) throw math_error("derivation arity mismatch");
        coeffs_[0].with_field_check(c);
    }
}

Derivation Derivation::zero(int nvars, int order, const FieldSpec& fs) {
    return Derivation(std::vector<TruncatedSeries>(
        static_cast<size_t>(nvars), TruncatedSeries::zero(nvars, order, fs)));
}

Derivation Derivation::monomial_field(const Multidegree& I, int i, const Coeff& c, int order) {
    Derivation v = zero(I.nvars(), order, c.field());
    v.coeffs_[static_cast<size_t>(i)] = TruncatedSeries::monomial(I, c, order);
    return v;
}

Derivation Derivation::diagonal(const std::vector<Coeff>& lambda, int order) {
    int n = static_cast<int>(lambda.size());
    Derivation v = zero(n, order, lambda.at(0).field());
    for (int i = 0; i < n; ++i)
        v.coeffs_[static_cast<size_t>(i)] = TruncatedSeries::monomial(
            Multidegree::unit(n, i), lambda[static_cast<size_t>(i)], order);
    return v;
}

int Derivation::order() const {
    int o = coeffs_[0].order();
    for (const auto& c : coeffs_) o = std::min(o, c.order());
    return o;
}

bool Derivation::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

Derivation Derivation::operator+(const Derivation& w) const {
    std::vector<TruncatedSeries> out;
    out.reserve(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] + w.coeffs_.at(i));
    return Derivation(std::move(out));
}

Derivation Derivation::operator-(const Derivation& w) const { return *this + (-w); }

Derivation Derivation::operator-() const {
    std::vector<TruncatedSeries> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(-c);
    return Derivation(std::move(out));
}

Derivation Derivation::scaled(const Coeff& c) const {
    std::vector<TruncatedSeries> out;
    out.reserve(coeffs_.size());
    for (const auto& s : coeffs_) out.push_back(s.scaled(c));
    return Derivation(std::move(out));
}

Derivation Derivation::truncated(int order) const {
    std::vector<TruncatedSeries> out;
    out.reserve(coeffs_.size());
    for (const auto& s : coeffs_) out.push_back(s.truncated(order));
    return Derivation(std::move(out));
}

Derivation Derivation::homogeneous_part(int d) const {
    std::vector<TruncatedSeries> out;
    out.reserve(coeffs_.size());
    for (const auto& s : coeffs_) out.push_back(s.homogeneous_part(d));
    return Derivation(std::move(out));
}

bool Derivation::same_terms(const Derivation& w) const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].same_terms(w.coeffs_.at(i))) return false;
    return true;
}

std::string Derivation::str(const std::vector<std::string>& names) const {
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
        if (coeffs_[static_cast<size_t>(i)].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + coeffs_[static_cast<size_t>(i)].str(names) + ")*d/d" +
             names[static_cast<size_t>(i)];
    }
    return s.empty() ? "0" : s;
}

TruncatedSeries apply(const Derivation& v, const TruncatedSeries& f) {
    if (v.nvars() != f.nvars()) throw math_error("apply: variable-count mismatch");
    f.with_field_check(v.coeff(0));
    // Result precision: the unknown tail of f sits in M^{order+1}, so the
    // term a_i * d_i(tail) has valuation >= val(a_i) + order(f); coefficients
    // in M buy the differentiation loss back.
    std::vector<TruncatedSeries> parts;
    long result_order = f.order();
    for (int i = 0; i < v.nvars(); ++i) {
        const TruncatedSeries& a = v.coeff(i);
        if (a.is_zero()) continue;
        TruncatedSeries df = f.derivative(i);
        long vi = *a.valuation();
        long dfv = df.is_zero() ? f.order() : *df.valuation();
        long cap = std::min<long>(a.order() + dfv, static_cast<long>(f.order()) - 1 + vi);
        result_order = std::min(result_order, cap);
        parts.push_back(std::move(df));
    }
    TruncatedSeries acc =
        TruncatedSeries::zero(f.nvars(), static_cast<int>(std::max<long>(result_order, 0)),
                              f.field());
    size_t k = 0;
    for (int i = 0; i < v.nvars(); ++i) {
        if (v.coeff(i).is_zero()) continue;
        acc = acc + mul_to(v.coeff(i), parts[k++], acc.order());
    }
    return acc;
}

Derivation lie_bracket(const Derivation& v, const Derivation& w) {
    if (v.nvars() != w.nvars()) throw math_error("lie_bracket: variable-count mismatch");
    std::vector<TruncatedSeries> out;
    out.reserve(static_cast<size_t>(v.nvars()));
    for (int i = 0; i < v.nvars(); ++i)
        out.push_back(apply(v, w.coeff(i)) - apply(w, v.coeff(i)));
    return Derivation(std::move(out));
}

std::optional<int> filtration_order(const Derivation& v) {
    std::optional<int> best;
    for (int i = 0; i < v.nvars(); ++i) {
        auto val = v.coeff(i).valuation();
        if (val && (!best || *val < *best)) best = val;
    }
    return best;
}

Automorphism::Automorphism(SeriesMap map) : map_(std::move(map)), inverse_(invert_map(map_)) {}

Automorphism::Automorphism(SeriesMap map, SeriesMap inverse, bool verify)
    : map_(std::move(map)), inverse_(std::move(inverse)) {
    if (verify) {
        SeriesMap rt = compose_maps(map_, inverse_);
        if (!rt.is_identity())
            throw math_error("automorphism inverse does not round-trip");
    }
}

Automorphism Automorphism::identity(int nvars, int order, const FieldSpec& fs) {
    SeriesMap id = SeriesMap::identity(nvars, order, fs);
    return Automorphism(id, id, false);
}

Automorphism Automorphism::linear(const std::vector<std::vector<Coeff>>& L, int order,
                                  const FieldSpec& fs) {
    int n = static_cast<int>(L.size());
    std::vector<TruncatedSeries> comps;
    comps.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        TruncatedSeries s = TruncatedSeries::zero(n, order, fs);
        for (int j = 0; j < n; ++j)
            s.set_coeff(Multidegree::unit(n, j), L[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        comps.push_back(s);
    }
    return Automorphism(SeriesMap(std::move(comps)));
}

TruncatedSeries Automorphism::act(const TruncatedSeries& f) const { return compose(f, map_); }

TruncatedSeries Automorphism::act_inverse(const TruncatedSeries& f) const {
    return compose(f, inverse_);
}

Automorphism Automorphism::inverse() const { return Automorphism(inverse_, map_, false); }

Automorphism Automorphism::then_inner(const Automorphism& psi) const {
    // (this . psi)(f) = this(psi(f)) = f o psi.map o this.map: substitute
    // this.map into psi.map's components.
    return Automorphism(compose_maps(psi.map_, map_), compose_maps(inverse_, psi.inverse_), false);
}

Automorphism exp_derivation(const Derivation& v) {
    int n = v.nvars();
    int order = v.order();
    const FieldSpec& fs = v.field();
    if (v.is_zero()) return Automorphism::identity(n, order, fs);
    auto filt = filtration_order(v);
    if (!filt || *filt < 2) {
        // Order-1 extension: purely diagonal linear fields exponentiate by
        // scalar exponentials, which only float mode can represent.
        bool diagonal_linear = *filt >= 1 && fs.kind == FieldKind::ComplexFloat;
        for (int i = 0; diagonal_linear && i < n; ++i) {
            for (const auto& [m, c] : v.coeff(i).terms())
                if (!(m == Multidegree::unit(n, i))) diagonal_linear = false;
        }
        if (!diagonal_linear)
            throw math_error("exp_derivation requires filtration order >= 2 in exact mode");
        std::vector<std::vector<Coeff>> L(
            static_cast<size_t>(n), std::vector<Coeff>(static_cast<size_t>(n), Coeff::zero(fs)));
        for (int i = 0; i < n; ++i) {
            std::complex<double> lam = v.coeff(i).coeff(Multidegree::unit(n, i)).to_complex();
            L[static_cast<size_t>(i)][static_cast<size_t>(i)] = Coeff::complex(std::exp(lam));
        }
        return Automorphism::linear(L, order, fs);
    }
    auto flow = [&](const Derivation& field) {
        std::vector<TruncatedSeries> comps;
        comps.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            TruncatedSeries term = TruncatedSeries::variable(i, n, order, fs);
            TruncatedSeries acc = term;
            Coeff fact = Coeff::one(fs);
            // v raises valuation by >= filt-1 >= 1 each application.
            for (int k = 1; k <= order && !term.is_zero(); ++k) {
                term = apply(field, term).truncated(order);
                fact = fact * Coeff::integer(k, fs).inverse();
                acc = acc + term.scaled(fact);
            }
            comps.push_back(acc);
        }
        return SeriesMap(std::move(comps));
    };
    return Automorphism(flow(v), flow(-v), false);
}

Derivation adjoint(const Automorphism& phi, const Derivation& v) {
    if (phi.nvars() != v.nvars()) throw math_error("adjoint: variable-count mismatch");
    std::vector<TruncatedSeries> out;
    out.reserve(static_cast<size_t>(v.nvars()));
    for (int j = 0; j < v.nvars(); ++j)
        out.push_back(compose(apply(v, phi.map().component(j)), phi.inverse_map()));
    return Derivation(std::move(out));
}

}  // namespace jetnf
