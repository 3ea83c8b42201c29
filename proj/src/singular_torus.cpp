#include "jetnf/singular_torus.hpp"

#include <algorithm>

namespace jetnf {

namespace {

long refined_cap(const TruncatedSeries& a, const TruncatedSeries& b) {
    auto va = a.valuation(), vb = b.valuation();
    long ca = static_cast<long>(a.order()) + (vb ? *vb : b.order() + 1);
    long cb = static_cast<long>(b.order()) + (va ? *va : a.order() + 1);
    return std::min(ca, cb);
}

}  // namespace

TruncatedSeries poisson_qp(const TruncatedSeries& f, const TruncatedSeries& g, int n) {
    if (f.nvars() != 2 * n || g.nvars() != 2 * n)
        throw math_error("poisson_qp: expected 2n variables");
    long cap_long = std::min<long>(f.order(), g.order());
    std::vector<TruncatedSeries> parts;
    for (int i = 0; i < n; ++i) {
        TruncatedSeries fp = f.derivative(n + i), gq = g.derivative(i);
        TruncatedSeries fq = f.derivative(i), gp = g.derivative(n + i);
        if (!(fp.is_zero() || gq.is_zero()))
            parts.push_back(mul_to(fp, gq, static_cast<int>(std::min<long>(
                                               refined_cap(fp, gq), f.order() + g.order()))));
        if (!(fq.is_zero() || gp.is_zero()))
            parts.push_back(-mul_to(fq, gp, static_cast<int>(std::min<long>(
                                                refined_cap(fq, gp), f.order() + g.order()))));
    }
    if (parts.empty())
        return TruncatedSeries::zero(2 * n, static_cast<int>(cap_long), f.field());
    long order = f.order() + g.order();
    for (const auto& p : parts) order = std::min<long>(order, p.order());
    TruncatedSeries acc =
        TruncatedSeries::zero(2 * n, static_cast<int>(std::max<long>(order, 0)), f.field());
    for (const auto& p : parts) acc = acc + p.truncated(acc.order());
    return acc;
}

TruncatedSeries coupled_oscillator_hamiltonian(const FrequencyVector& omega, int order) {
    int n = omega.n();
    TruncatedSeries H(2 * n, order, omega.field());
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(static_cast<size_t>(2 * n), 0);
        e[static_cast<size_t>(i)] = 1;
        e[static_cast<size_t>(n + i)] = 1;
        H.set_coeff(Multidegree(e), omega.omega[static_cast<size_t>(i)]);
    }
    return H;
}

TruncatedSeries hamiltonian_flow(const TruncatedSeries& chi, const TruncatedSeries& F, int n) {
    auto v = chi.valuation();
    if (v && *v < 3) throw math_error("hamiltonian_flow: generator must have valuation >= 3");
    const FieldSpec& fs = F.field();
    TruncatedSeries acc = F;
    TruncatedSeries term = F;
    Coeff fact = Coeff::one(fs);
    for (int m = 1; m <= F.order() && !term.is_zero(); ++m) {
        term = poisson_qp(chi, term, n).truncated(F.order());
        fact = fact * Coeff::integer(m, fs).inverse();
        acc = acc + term.scaled(fact);
    }
    return acc;
}

TruncatedSeries singular_torus_defect(const TruncatedSeries& diff, int n) {
    TruncatedSeries bad(2 * n, diff.order(), diff.field());
    for (const auto& [m, c] : diff.terms()) {
        bool kernel = true;
        int total_a = 0;
        for (int i = 0; i < n; ++i) {
            if (m[i] != m[n + i]) kernel = false;
            total_a += m[i];
        }
        if (!(kernel && total_a >= 2)) bad.set_coeff(m, c);
    }
    return bad;
}

SingularTorusResult singular_torus_normalize(const FrequencyVector& omega,
                                             const TruncatedSeries& R, int N) {
    int n = omega.n();
    if (R.nvars() != 2 * n)
        throw math_error("singular_torus_normalize: R must live on 2n variables");
    if (!omega.witness)
        throw math_error("singular_torus_normalize: omega carries no Diophantine witness");
    auto vr = R.valuation();
    if (vr && *vr < 3)
        throw math_error("singular_torus_normalize: perturbation must have valuation >= 3");
    const FieldSpec& fs = R.field();
    TruncatedSeries H = coupled_oscillator_hamiltonian(omega, N);
    TruncatedSeries F = H + R.truncated(N);

    SingularTorusResult res;
    res.min_divisor = 0.0;
    bool have = false;
    for (int d = 3; d <= N; ++d) {
        TruncatedSeries slice = (F - H).homogeneous_part(d);
        TruncatedSeries chi(2 * n, N, fs);
        for (const auto& [m, c] : slice.terms()) {
            std::vector<int> diffAB(static_cast<size_t>(n), 0);
            bool kernel = true;
            int total_a = 0;
            for (int i = 0; i < n; ++i) {
                diffAB[static_cast<size_t>(i)] = m[i] - m[n + i];
                if (m[i] != m[n + i]) kernel = false;
                total_a += m[i];
            }
            if (kernel) {
                if (total_a < 2)
                    throw math_error("singular_torus_normalize: kernel term outside I^2 "
                                     "(internal)");
                continue;  // stays: it lies in I^2
            }
            Coeff div = omega.dot(diffAB);
            if (div.is_zero()) {
                std::string mode;
                for (int v : diffAB) mode += (mode.empty() ? "" : ",") + std::to_string(v);
                throw math_error("singular_torus_normalize: resonant frequency at mode (" +
                                 mode + ")");
            }
            if (!omega.exact() && div.abs_approx() < omega.eps_safe)
                throw math_error("singular_torus_normalize: divisor below eps_safe");
            double a = div.abs_approx();
            if (!have || a < res.min_divisor) {
                res.min_divisor = a;
                have = true;
            }
            chi.set_coeff(m, c / div);
        }
        if (chi.is_zero()) continue;
        // {chi, H} = -slice_nonkernel: the flow removes it at this degree.
        F = hamiltonian_flow(chi, F, n);
        res.generators.push_back(chi);
        ++res.steps;
    }
    res.final_hamiltonian = F;
    res.defect = singular_torus_defect(F - H, n);
    return res;
}

}  // namespace jetnf
