#include "jetnf/determinacy.hpp"

namespace jetnf {

OneVarNormalForm one_var_normal_form(const TruncatedSeries& f) {
    if (f.nvars() != 1) throw input_error("one_var_normal_form expects one variable");
    if (f.is_zero()) throw math_error("zero series has no normal form");
    if (!f.coeff(Multidegree::zero(1)).is_zero())
        throw math_error("one_var_normal_form expects f(0) = 0");
    int N = f.order();
    int k = *f.valuation();
    Coeff alpha = f.coeff(Multidegree{{k}});
    // u = f / (alpha x^k): shift exponents down by k; unit with u(0) = 1.
    TruncatedSeries u(1, N - k, f.field());
    for (const auto& [m, c] : f.terms()) u.set_coeff(Multidegree{{m[0] - k}}, c / alpha);
    TruncatedSeries root = kth_root_unit(u, k);
    // y(x) = x u^{1/k}; x in M buys the order lost by the shift back.
    TruncatedSeries y = mul_to(TruncatedSeries::variable(0, 1, N, f.field()), root,
                               std::min(N, root.order() + 1));
    OneVarNormalForm out;
    out.k = k;
    out.alpha = alpha;
    out.phi = invert_map(SeriesMap({y}));
    return out;
}

Automorphism finite_determinacy_reduce(const TruncatedSeries& f, const TruncatedSeries& g,
                                       int N) {
    TruncatedSeries fj = f.truncated(N);
    TruncatedSeries gj = g.truncated(N);
    MilnorResult mil = milnor_number(fj, N);
    if (!mil.certified || mil.unit_warning)
        throw math_error("finite_determinacy_reduce: Milnor number not certified at this order");
    auto vg = gj.valuation();
    if (vg && *vg < mil.mu + 2)
        throw math_error("finite_determinacy_reduce: tail valuation " + std::to_string(*vg) +
                         " is below mu+2 = " + std::to_string(mil.mu + 2));
    const FieldSpec& fs = fj.field();
    int n = fj.nvars();
    Automorphism Phi = Automorphism::identity(n, N, fs);
    if (!vg) return Phi;

    JetIdealBasis J = jacobian_ideal(fj, 2);
    TruncatedSeries target = fj + gj;
    TruncatedSeries residual = gj;
    for (int guard = 0; !residual.is_zero(); ++guard) {
        if (guard > N)
            throw math_error("finite_determinacy_reduce: no progress (internal)");
        auto b = J.solve(residual);
        if (!b)
            throw math_error("finite_determinacy_reduce: membership solve failed (internal)");
        Derivation v(std::move(*b));
        Automorphism step = exp_derivation(-v);
        Phi = step.then_inner(Phi);
        residual = compose(target, Phi.map()) - fj;
    }
    return Phi;
}

}  // namespace jetnf
