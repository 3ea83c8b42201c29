#include "jetnf/pdnf.hpp"

#include "jetnf/linalg.hpp"

#include <algorithm>

namespace jetnf {

Automorphism rectify(const Derivation& v, int N) {
    int n = v.nvars();
    const FieldSpec& fs = v.field();
    Multidegree zero = Multidegree::zero(n);
    std::vector<Coeff> c0;
    int unit_index = -1;
    for (int i = 0; i < n; ++i) {
        c0.push_back(v.coeff(i).coeff(zero));
        if (unit_index < 0 && !c0.back().is_zero()) unit_index = i;
    }
    if (unit_index < 0) throw math_error("rectify: singular field (all components vanish at 0)");

    // Linear transitivity: L with L c0 = e_1.
    CoeffMatrix L(static_cast<size_t>(n), CoeffRow(static_cast<size_t>(n), Coeff::zero(fs)));
    L[0][static_cast<size_t>(unit_index)] = c0[static_cast<size_t>(unit_index)].inverse();
    int row = 1;
    for (int i = 0; i < n; ++i) {
        if (i == unit_index) continue;
        L[static_cast<size_t>(row)][static_cast<size_t>(i)] = Coeff::one(fs);
        L[static_cast<size_t>(row)][static_cast<size_t>(unit_index)] =
            -(c0[static_cast<size_t>(i)] / c0[static_cast<size_t>(unit_index)]);
        ++row;
    }
    Automorphism Phi = Automorphism::linear(L, N, fs);
    Derivation u = adjoint(Phi, v);

    Derivation d1 = Derivation::monomial_field(zero, 0, Coeff::one(fs), u.order());

    for (int k = 1; k < N; ++k) {
        Derivation w = (u - d1).homogeneous_part(k);
        if (w.is_zero()) continue;
        // xi_i = -antiderivative of w_i in x_1, so [d_1, xi] = -w.
        std::vector<TruncatedSeries> xi;
        for (int i = 0; i < n; ++i) {
            TruncatedSeries comp(n, u.order(), fs);
            for (const auto& [m, c] : w.coeff(i).terms()) {
                Multidegree up = m.with(0, m[0] + 1);
                comp.set_coeff(up, -(c / Coeff::integer(m[0] + 1, fs)));
            }
            xi.push_back(std::move(comp));
        }
        Derivation xf(std::move(xi));
        Automorphism step = exp_derivation(xf);
        u = adjoint(step, u);
        Phi = Phi.then_inner(step);
    }
    return Phi;
}

PoincareDulacResult poincare_dulac(const Spectrum& lin, const Derivation& w, int N) {
    int n = lin.n();
    if (w.nvars() != n) throw math_error("poincare_dulac: arity mismatch");
    if (!(w.field() == lin.field()))
        throw math_error("poincare_dulac: coefficient field mismatch");
    auto filt = filtration_order(w);
    if (filt && *filt < 2)
        throw math_error("poincare_dulac: perturbation must have filtration order >= 2");
    const FieldSpec& fs = lin.field();

    Derivation v = Derivation::diagonal(lin.lambda, N);
    Derivation u = v + w.truncated(N);
    Derivation r = Derivation::zero(n, N, fs);
    Automorphism Phi = Automorphism::identity(n, N, fs);

    PoincareDulacResult res{Derivation::zero(n, N, fs), Phi, 0.0, 0};
    bool have_min = false;

    for (int k = 2; k <= N; ++k) {
        Derivation slice = (u - v - r).homogeneous_part(k);
        if (slice.is_zero()) continue;
        Derivation xi = Derivation::zero(n, N, fs);
        for (int i = 0; i < n; ++i) {
            for (const auto& [I, c] : slice.coeff(i).terms()) {
                Coeff eig = eigenvalue(lin, I, i);
                if (classify_divisor(lin, eig) == DivisorClass::Resonant) {
                    r = r + Derivation::monomial_field(I, i, c, N);
                } else {
                    double a = eig.abs_approx();
                    if (!have_min || a < res.min_divisor) {
                        res.min_divisor = a;
                        have_min = true;
                    }
                    xi = xi + Derivation::monomial_field(I, i, c / eig, N);
                }
            }
        }
        if (xi.is_zero()) continue;
        ++res.steps;
        Automorphism step = exp_derivation(xi);
        u = adjoint(step, u);
        Phi = Phi.then_inner(step);
    }
    res.normal_part = r;
    res.transform = Phi;
    return res;
}

}  // namespace jetnf
