#include "jetnf/series.hpp"

#include <algorithm>

namespace jetnf {

TruncatedSeries::TruncatedSeries(int nvars, int order, FieldSpec field)
    : nvars_(nvars), order_(order), field_(field) {
    if (nvars < 0 || order < 0) throw input_error("bad series dimensions");
}

TruncatedSeries TruncatedSeries::zero(int nvars, int order, const FieldSpec& fs) {
    return TruncatedSeries(nvars, order, fs);
}

TruncatedSeries TruncatedSeries::constant(const Coeff& c, int nvars, int order) {
    TruncatedSeries f(nvars, order, c.field());
    f.set_coeff(Multidegree::zero(nvars), c);
    return f;
}

TruncatedSeries TruncatedSeries::variable(int i, int nvars, int order, const FieldSpec& fs) {
    TruncatedSeries f(nvars, order, fs);
    f.set_coeff(Multidegree::unit(nvars, i), Coeff::one(fs));
    return f;
}

TruncatedSeries TruncatedSeries::monomial(const Multidegree& m, const Coeff& c, int order) {
    TruncatedSeries f(m.nvars(), order, c.field());
    f.set_coeff(m, c);
    return f;
}

Coeff TruncatedSeries::coeff(const Multidegree& m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return Coeff::zero(field_);
    return it->second;
}

void TruncatedSeries::set_coeff(const Multidegree& m, const Coeff& c) {
    if (m.nvars() != nvars_) throw input_error("multidegree arity mismatch");
    if (c.is_zero() || m.total() > order_) {
        terms_.erase(m);
        return;
    }
    terms_[m] = c;
}

void TruncatedSeries::add_term(const Multidegree& m, const Coeff& c) {
    if (m.total() > order_ || c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::optional<int> TruncatedSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.total();  // grlex: first key has least degree
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    TruncatedSeries r(nvars_, new_order, field_);
    for (const auto& [m, c] : terms_)
        if (m.total() <= new_order) r.terms_.emplace(m, c);
    return r;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int d) const {
    TruncatedSeries r(nvars_, order_, field_);
    for (const auto& [m, c] : terms_)
        if (m.total() == d) r.terms_.emplace(m, c);
    return r;
}

TruncatedSeries TruncatedSeries::with_field_check(const TruncatedSeries& o) const {
    if (nvars_ != o.nvars_) throw math_error("series variable-count mismatch");
    if (!(field_ == o.field_)) throw math_error("series coefficient-field mismatch");
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& g) const {
    with_field_check(g);
    TruncatedSeries r(nvars_, std::min(order_, g.order_), field_);
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    for (const auto& [m, c] : g.terms_) r.add_term(m, c);
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& g) const {
    return *this + (-g);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& g) const {
    return mul_to(*this, g, std::min(order_, g.order()));
}

TruncatedSeries TruncatedSeries::scaled(const Coeff& c) const {
    TruncatedSeries r(nvars_, order_, field_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) {
        Coeff w = v * c;
        if (!w.is_zero()) r.terms_.emplace(m, w);
    }
    return r;
}

TruncatedSeries TruncatedSeries::derivative(int i) const {
    if (i < 0 || i >= nvars_) throw input_error("derivative index out of range");
    TruncatedSeries r(nvars_, std::max(order_ - 1, 0), field_);
    for (const auto& [m, c] : terms_) {
        int e = m[i];
        if (e == 0) continue;
        r.add_term(m.with(i, e - 1), c * Coeff::integer(e, field_));
    }
    return r;
}

TruncatedSeries TruncatedSeries::unit_inverse() const {
    Coeff c0 = coeff(Multidegree::zero(nvars_));
    if (c0.is_zero()) throw math_error("not a unit: zero constant term");
    // g = c0(1 + h), h in M: invert order by order via r <- r - r*(g*r - 1).
    TruncatedSeries one = TruncatedSeries::constant(Coeff::one(field_), nvars_, order_);
    TruncatedSeries r = TruncatedSeries::constant(c0.inverse(), nvars_, order_);
    for (int k = 0; k < order_; ++k) {
        TruncatedSeries err = (*this) * r - one;
        if (err.is_zero()) break;
        r = r - r * err;
    }
    return r.truncated(order_);
}

TruncatedSeries TruncatedSeries::pow(int k) const {
    if (k < 0) throw input_error("negative power of a series");
    TruncatedSeries r = TruncatedSeries::constant(Coeff::one(field_), nvars_, order_);
    TruncatedSeries base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& g) const {
    return nvars_ == g.nvars_ && order_ == g.order_ && field_ == g.field_ && terms_ == g.terms_;
}

std::string TruncatedSeries::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
                   cs.find('-', 1) == std::string::npos;
        if (s.empty()) {
            if (neg) { s += "-"; cs = cs.substr(1); }
        } else {
            s += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        bool needs_parens = cs.find('+') != std::string::npos ||
                            cs.find('-') != std::string::npos;
        std::string mono = m.str(names);
        if (mono == "1") {
            s += cs;
        } else if (cs == "1") {
            s += mono;
        } else {
            s += (needs_parens ? "(" + cs + ")" : cs) + "*" + mono;
        }
    }
    return s;
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) { return f + g; }
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) { return f * g; }
std::optional<int> valuation(const TruncatedSeries& f) { return f.valuation(); }

TruncatedSeries mul_to(const TruncatedSeries& f, const TruncatedSeries& g, int out_order) {
    f.with_field_check(g);
    TruncatedSeries r(f.nvars(), out_order, f.field());
    for (const auto& [mf, cf] : f.terms()) {
        if (mf.total() > out_order) continue;
        for (const auto& [mg, cg] : g.terms()) {
            if (mf.total() + mg.total() > out_order) continue;
            r.add_term(mf.plus(mg), cf * cg);
        }
    }
    return r;
}

TruncatedSeries kth_root_unit(const TruncatedSeries& u, int k) {
    if (k <= 0) throw input_error("root index must be positive");
    Coeff c0 = u.coeff(Multidegree::zero(u.nvars()));
    if (c0.is_zero()) throw math_error("kth_root_unit: not a unit");
    auto root0 = c0.exact_kth_root(k);
    if (!root0)
        throw math_error("kth_root_unit: constant term has no exact " + std::to_string(k) +
                         "-th root in field " + u.field().str());
    int N = u.order();
    // r = r0 + correction, solved degree by degree: the degree-m defect of
    // u - r^k is divisible by k*r0^(k-1) on its leading slice.
    TruncatedSeries r = TruncatedSeries::constant(*root0, u.nvars(), N);
    Coeff lead = Coeff::integer(k, u.field()) * root0->inverse() * c0;  // k * r0^(k-1) = k*c0/r0
    for (int m = 1; m <= N; ++m) {
        TruncatedSeries defect = (u - r.pow(k)).homogeneous_part(m);
        if (defect.is_zero()) continue;
        r = r + defect.scaled(lead.inverse());
    }
    return r;
}

}  // namespace jetnf
