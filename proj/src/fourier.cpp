#include "jetnf/fourier.hpp"

#include <cstdlib>
#include <sstream>

namespace jetnf {

int FTKey::inorm() const {
    int s = 0;
    for (int v : I) s += std::abs(v);
    return s;
}

int FTKey::jnorm() const {
    int s = 0;
    for (int v : J) s += std::abs(v);
    return s;
}

bool FTKeyLess::operator()(const FTKey& a, const FTKey& b) const {
    if (a.tpow != b.tpow) return a.tpow < b.tpow;
    int aj = a.jnorm(), bj = b.jnorm();
    if (aj != bj) return aj < bj;
    if (a.J != b.J) return a.J < b.J;
    int ai = a.inorm(), bi = b.inorm();
    if (ai != bi) return ai < bi;
    return a.I < b.I;
}

FourierTaylorSeries::FourierTaylorSeries(int dof, int K, int M, int T, FieldSpec fs)
    : dof_(dof), K_(K), M_(M), T_(T), field_(fs) {
    if (dof < 1 || K < 0 || M < 0 || T < 0) throw input_error("bad Fourier-Taylor shape");
}

FourierTaylorSeries FourierTaylorSeries::zero(int dof, int K, int M, int T,
                                              const FieldSpec& fs) {
    return FourierTaylorSeries(dof, K, M, T, fs);
}

FourierTaylorSeries FourierTaylorSeries::constant(const Coeff& c, int K, int M, int T,
                                                  int dof) {
    FourierTaylorSeries f(dof, K, M, T, c.field());
    FTKey k;
    k.I.assign(static_cast<size_t>(dof), 0);
    k.J.assign(static_cast<size_t>(dof), 0);
    f.set_coeff(k, c);
    return f;
}

FourierTaylorSeries FourierTaylorSeries::with_term(const FTKey& k, const Coeff& c) const {
    FourierTaylorSeries f = *this;
    f.set_coeff(k, f.coeff(k) + c);
    return f;
}

Coeff FourierTaylorSeries::coeff(const FTKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Coeff::zero(field_) : it->second;
}

void FourierTaylorSeries::add_spill(long f, long j, long t) const {
    spilled_fourier_ += f;
    truncated_taylor_ += j;
    truncated_t_ += t;
}

void FourierTaylorSeries::set_coeff(const FTKey& k, const Coeff& c) {
    if (static_cast<int>(k.I.size()) != dof_ || static_cast<int>(k.J.size()) != dof_)
        throw input_error("Fourier-Taylor key arity mismatch");
    for (int v : k.J)
        if (v < 0) throw input_error("negative Taylor exponent");
    if (k.tpow < 0) throw input_error("negative t power");
    if (k.inorm() > K_ || k.jnorm() > M_ || k.tpow > T_)
        throw input_error("Fourier-Taylor term outside the cutoffs");
    if (c.is_zero())
        terms_.erase(k);
    else
        terms_[k] = c;
}

void FourierTaylorSeries::add_term(const FTKey& k, const Coeff& c) {
    if (c.is_zero()) return;
    // Truncation priority: the t and Taylor cutoffs are filtrations, so a
    // term beyond them is ordinary truncation even if its Fourier mode also
    // exceeds K; only in-window modes count as spill.
    if (k.tpow > T_) { ++truncated_t_; return; }
    if (k.jnorm() > M_) { ++truncated_taylor_; return; }
    if (k.inorm() > K_) { ++spilled_fourier_; return; }
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void FourierTaylorSeries::check_compatible(const FourierTaylorSeries& g) const {
    if (dof_ != g.dof_ || K_ != g.K_ || M_ != g.M_ || T_ != g.T_)
        throw math_error("Fourier-Taylor cutoff mismatch");
    if (!(field_ == g.field_)) throw math_error("Fourier-Taylor field mismatch");
}

FourierTaylorSeries FourierTaylorSeries::operator-() const {
    FourierTaylorSeries r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

FourierTaylorSeries FourierTaylorSeries::operator+(const FourierTaylorSeries& g) const {
    check_compatible(g);
    FourierTaylorSeries r = *this;
    r.add_spill(g.spilled_fourier_, g.truncated_taylor_, g.truncated_t_);
    for (const auto& [k, c] : g.terms_) r.add_term(k, c);
    return r;
}

FourierTaylorSeries FourierTaylorSeries::operator-(const FourierTaylorSeries& g) const {
    return *this + (-g);
}

FourierTaylorSeries FourierTaylorSeries::operator*(const FourierTaylorSeries& g) const {
    check_compatible(g);
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    r.add_spill(spilled_fourier_ + g.spilled_fourier_,
                truncated_taylor_ + g.truncated_taylor_, truncated_t_ + g.truncated_t_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : g.terms_) {
            FTKey k;
            k.I.resize(static_cast<size_t>(dof_));
            k.J.resize(static_cast<size_t>(dof_));
            for (int i = 0; i < dof_; ++i) {
                k.I[static_cast<size_t>(i)] = ka.I[static_cast<size_t>(i)] + kb.I[static_cast<size_t>(i)];
                k.J[static_cast<size_t>(i)] = ka.J[static_cast<size_t>(i)] + kb.J[static_cast<size_t>(i)];
            }
            k.tpow = ka.tpow + kb.tpow;
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

FourierTaylorSeries FourierTaylorSeries::scaled(const Coeff& c) const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    r.add_spill(spilled_fourier_, truncated_taylor_, truncated_t_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        Coeff w = v * c;
        if (!w.is_zero()) r.terms_.emplace(k, w);
    }
    return r;
}

FourierTaylorSeries FourierTaylorSeries::average() const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    for (const auto& [k, c] : terms_)
        if (k.inorm() == 0) r.terms_.emplace(k, c);
    return r;
}

FourierTaylorSeries FourierTaylorSeries::t_slice(int kpow) const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    for (const auto& [k, c] : terms_) {
        if (k.tpow != kpow) continue;
        FTKey nk = k;
        nk.tpow = 0;
        r.terms_.emplace(nk, c);
    }
    return r;
}

FourierTaylorSeries FourierTaylorSeries::times_t(int kpow) const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    r.add_spill(spilled_fourier_, truncated_taylor_, truncated_t_);
    for (const auto& [k, c] : terms_) {
        FTKey nk = k;
        nk.tpow += kpow;
        r.add_term(nk, c);
    }
    return r;
}

FourierTaylorSeries FourierTaylorSeries::taylor_slice(int j) const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    for (const auto& [k, c] : terms_)
        if (k.jnorm() == j) r.terms_.emplace(k, c);
    return r;
}

FourierTaylorSeries FourierTaylorSeries::dp(int i) const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    for (const auto& [k, c] : terms_) {
        int e = k.J[static_cast<size_t>(i)];
        if (e == 0) continue;
        FTKey nk = k;
        nk.J[static_cast<size_t>(i)] = e - 1;
        r.add_term(nk, c * Coeff::integer(e, field_));
    }
    return r;
}

FourierTaylorSeries FourierTaylorSeries::qdq(int i) const {
    FourierTaylorSeries r(dof_, K_, M_, T_, field_);
    for (const auto& [k, c] : terms_) {
        int e = k.I[static_cast<size_t>(i)];
        if (e == 0) continue;
        r.add_term(k, c * Coeff::integer(e, field_));
    }
    return r;
}

bool FourierTaylorSeries::operator==(const FourierTaylorSeries& g) const {
    return dof_ == g.dof_ && K_ == g.K_ && M_ == g.M_ && T_ == g.T_ && field_ == g.field_ &&
           terms_ == g.terms_;
}

std::string FourierTaylorSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        for (int i = 0; i < dof_; ++i) {
            int e = k.I[static_cast<size_t>(i)];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "q" + std::to_string(i + 1);
            if (e != 1) mono += "^" + std::to_string(e);
        }
        for (int i = 0; i < dof_; ++i) {
            int e = k.J[static_cast<size_t>(i)];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "p" + std::to_string(i + 1);
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (k.tpow > 0) {
            if (!mono.empty()) mono += "*";
            mono += "t";
            if (k.tpow != 1) mono += "^" + std::to_string(k.tpow);
        }
        std::string cs = c.str();
        bool paren = cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos;
        if (mono.empty()) {
            os << cs;
        } else if (c.is_one()) {
            os << mono;
        } else {
            os << (paren ? "(" + cs + ")" : cs) << "*" << mono;
        }
    }
    return os.str();
}

FourierTaylorSeries poisson_bracket(const FourierTaylorSeries& F, const FourierTaylorSeries& G) {
    F.check_compatible(G);
    FourierTaylorSeries r =
        FourierTaylorSeries::zero(F.dof(), F.fourier_cutoff(), F.taylor_cutoff(),
                                  F.tparam_cutoff(), F.field());
    for (int i = 0; i < F.dof(); ++i) {
        r = r + F.dp(i) * G.qdq(i) - F.qdq(i) * G.dp(i);
    }
    return r;
}

}  // namespace jetnf
