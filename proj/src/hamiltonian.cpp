#include "jetnf/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "jetnf/multidegree.hpp"

namespace jetnf {

Coeff FrequencyVector::dot(const std::vector<int>& I) const {
    Coeff acc = Coeff::zero(field());
    for (size_t j = 0; j < omega.size(); ++j) {
        if (I[j] == 0) continue;
        acc = acc + omega[j] * Coeff::integer(I[j], field());
    }
    return acc;
}

namespace {

// Signed index vectors with |I|_1 = d, one representative per +-pair (first
// nonzero entry positive), lexicographic within a degree.
std::vector<std::vector<int>> signed_vectors_of_degree(int n, int d) {
    std::vector<std::vector<int>> out;
    for (const auto& m : monomials_of_degree(n, d)) {
        std::vector<std::vector<int>> batch{{}};
        for (int i = 0; i < n; ++i) {
            int e = m[i];
            std::vector<std::vector<int>> next;
            for (auto& v : batch) {
                if (e == 0) {
                    auto w = v;
                    w.push_back(0);
                    next.push_back(std::move(w));
                } else {
                    auto wp = v, wm = v;
                    wp.push_back(e);
                    wm.push_back(-e);
                    next.push_back(std::move(wp));
                    next.push_back(std::move(wm));
                }
            }
            batch = std::move(next);
        }
        for (auto& v : batch) {
            int first = 0;
            for (int x : v)
                if (x != 0) { first = x; break; }
            if (first > 0) out.push_back(std::move(v));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

DiophantineResult diophantine_check(FrequencyVector& omega, double C, double tau, int Kmax) {
    DiophantineResult res;
    res.holds = true;
    bool have_best = false;
    for (int d = 1; d <= Kmax && (res.holds || !have_best); ++d) {
        double dt = std::pow(static_cast<double>(d), tau);
        for (const auto& I : signed_vectors_of_degree(omega.n(), d)) {
            Coeff v = omega.dot(I);
            bool zero = omega.exact() ? v.is_zero() : v.abs_approx() <= 1e-15;
            if (zero) {
                res.holds = false;
                res.exact_zero = true;
                res.violation_I = I;
                res.best_C = 0.0;
                res.best_I = I;
                omega.witness.reset();
                return res;
            }
            double a = v.abs_approx();
            double scaled = a * dt;
            if (!have_best || scaled < res.best_C) {
                res.best_C = scaled;
                res.best_I = I;
                have_best = true;
            }
            if (res.holds && a < C / dt) {
                res.holds = false;
                res.violation_I = I;
            }
        }
    }
    if (res.holds)
        omega.witness = DiophantineWitness{C, tau, Kmax, res.best_C};
    else
        omega.witness.reset();
    return res;
}

HomologicalSolution solve_homological(const FourierTaylorSeries& g,
                                      const FrequencyVector& omega) {
    if (g.dof() != omega.n()) throw math_error("solve_homological: arity mismatch");
    if (!g.average().is_zero())
        throw math_error("solve_homological: not in the image (nonzero average)");
    FourierTaylorSeries u = FourierTaylorSeries::zero(g.dof(), g.fourier_cutoff(),
                                                      g.taylor_cutoff(), g.tparam_cutoff(),
                                                      g.field());
    double min_div = 0.0;
    bool have = false;
    for (const auto& [k, c] : g.terms()) {
        Coeff div = omega.dot(k.I);
        if (div.is_zero()) {
            std::string mode;
            for (int v : k.I) mode += (mode.empty() ? "" : ",") + std::to_string(v);
            throw math_error("solve_homological: resonant frequency at mode (" + mode + ")");
        }
        double a = div.abs_approx();
        if (!omega.exact() && a < omega.eps_safe)
            throw math_error("solve_homological: divisor below eps_safe");
        if (!have || a < min_div) {
            min_div = a;
            have = true;
        }
        u.set_coeff(k, c / div);
    }
    return {u, min_div};
}

KolmogorovHamiltonian KolmogorovHamiltonian::from_series(const FourierTaylorSeries& H) {
    KolmogorovHamiltonian kh;
    kh.H = H;
    int n = H.dof();
    const FieldSpec& fs = H.field();
    kh.omega.assign(static_cast<size_t>(n), Coeff::zero(fs));
    kh.quad.assign(static_cast<size_t>(n), CoeffRow(static_cast<size_t>(n), Coeff::zero(fs)));
    for (const auto& [k, c] : H.terms()) {
        if (k.inorm() != 0 || k.tpow != 0)
            throw math_error("Kolmogorov Hamiltonian must be a series in p only");
        if (k.jnorm() == 1) {
            for (int i = 0; i < n; ++i)
                if (k.J[static_cast<size_t>(i)] == 1) kh.omega[static_cast<size_t>(i)] = c;
        } else if (k.jnorm() == 2) {
            for (int i = 0; i < n; ++i) {
                for (int j = i; j < n; ++j) {
                    int need_i = (i == j) ? 2 : 1;
                    if (k.J[static_cast<size_t>(i)] != need_i) continue;
                    if (i != j && k.J[static_cast<size_t>(j)] != 1) continue;
                    bool pure = true;
                    for (int l = 0; l < n; ++l)
                        if (l != i && l != j && k.J[static_cast<size_t>(l)] != 0) pure = false;
                    if (!pure) continue;
                    if (i == j) {
                        kh.quad[static_cast<size_t>(i)][static_cast<size_t>(i)] = c;
                    } else {
                        Coeff half = c / Coeff::integer(2, fs);
                        kh.quad[static_cast<size_t>(i)][static_cast<size_t>(j)] = half;
                        kh.quad[static_cast<size_t>(j)][static_cast<size_t>(i)] = half;
                    }
                }
            }
        }
    }
    kh.k_condition = !determinant(kh.quad, fs).is_zero();
    return kh;
}

BlockSolveResult block_solve(const FourierTaylorSeries& rhs, const KolmogorovHamiltonian& f,
                             const FrequencyVector& omega) {
    for (const auto& [k, c] : rhs.terms())
        if (k.jnorm() > 1)
            throw math_error("block_solve: right-hand side must have p-degree <= 1");
    int n = rhs.dof();
    const FieldSpec& fs = rhs.field();
    if (rhs.taylor_cutoff() < 2)
        throw math_error("block_solve: Taylor cutoff must be >= 2 for the block operator");
    // a0 = quadratic part of f as a series, in the cutoffs of rhs.
    FourierTaylorSeries a0 = FourierTaylorSeries::zero(n, rhs.fourier_cutoff(),
                                                       rhs.taylor_cutoff(),
                                                       rhs.tparam_cutoff(), fs);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Coeff c = f.quad[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (i != j) c = c + f.quad[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (c.is_zero()) continue;
            FTKey k;
            k.I.assign(static_cast<size_t>(n), 0);
            k.J.assign(static_cast<size_t>(n), 0);
            k.J[static_cast<size_t>(i)] += 1;
            k.J[static_cast<size_t>(j)] += 1;
            a0.set_coeff(k, c);
        }
    }
    BlockSolveResult out{FourierTaylorSeries::zero(n, rhs.fourier_cutoff(), rhs.taylor_cutoff(),
                                                   rhs.tparam_cutoff(), fs),
                         {}, {}, {}, 0.0};
    FourierTaylorSeries rhs0 = rhs.taylor_slice(0);
    FourierTaylorSeries rhs1 = rhs.taylor_slice(1);
    out.beta = rhs0.average();
    auto sol0 = solve_homological(rhs0 - out.beta, omega);
    // Lower-triangular correction: subtract {a0, u0} from the p-linear slice.
    FourierTaylorSeries a0u0 = poisson_bracket(a0, sol0.u);
    FourierTaylorSeries g1 = rhs1 - a0u0.taylor_slice(1);
    out.normal = g1.average();
    auto sol1 = solve_homological(g1 - out.normal, omega);
    out.solution = sol0.u + sol1.u;
    out.min_divisor = sol0.u.is_zero() ? sol1.min_divisor
                                       : (sol1.u.is_zero() ? sol0.min_divisor
                                                           : std::min(sol0.min_divisor,
                                                                      sol1.min_divisor));
    out.normal_coeffs.assign(static_cast<size_t>(n), Coeff::zero(fs));
    for (const auto& [k, c] : out.normal.terms()) {
        if (k.tpow != 0)
            continue;  // t-dependent classes are kept in `normal` only
        for (int i = 0; i < n; ++i)
            if (k.J[static_cast<size_t>(i)] == 1) out.normal_coeffs[static_cast<size_t>(i)] = c;
    }
    return out;
}

FourierTaylorSeries apply_generator(const KolmogorovGenerator& gen,
                                    const FourierTaylorSeries& F) {
    int n = F.dof();
    const FieldSpec& fs = F.field();
    FourierTaylorSeries chik = gen.chi.times_t(gen.t_order);
    auto D = [&](const FourierTaylorSeries& G) {
        FourierTaylorSeries out = poisson_bracket(chik, G);
        for (int i = 0; i < n; ++i) {
            if (gen.shift[static_cast<size_t>(i)].is_zero()) continue;
            out = out - G.dp(i).scaled(gen.shift[static_cast<size_t>(i)]).times_t(gen.t_order);
        }
        return out;
    };
    FourierTaylorSeries acc = F;
    FourierTaylorSeries term = F;
    Coeff fact = Coeff::one(fs);
    for (int m = 1; m <= F.tparam_cutoff() + 1 && !term.is_zero(); ++m) {
        term = D(term);
        fact = fact * Coeff::integer(m, fs).inverse();
        acc = acc + term.scaled(fact);
    }
    return acc;
}

KolmogorovResult kolmogorov_normalize(const KolmogorovHamiltonian& f,
                                      const FrequencyVector& omega,
                                      const FourierTaylorSeries& R) {
    if (!omega.witness)
        throw math_error("kolmogorov_normalize: omega carries no Diophantine witness");
    if (!f.k_condition)
        throw math_error("kolmogorov_normalize: condition (K) fails (quadratic part singular)");
    for (size_t i = 0; i < f.omega.size(); ++i)
        if (!(f.omega[i] == omega.omega.at(i)))
            throw math_error("kolmogorov_normalize: omega disagrees with the Hamiltonian");
    int n = R.dof(), K = R.fourier_cutoff(), M = R.taylor_cutoff(), T = R.tparam_cutoff();
    const FieldSpec& fs = R.field();
    f.H.check_compatible(R);

    FourierTaylorSeries H = f.H;
    FourierTaylorSeries F = H + R.times_t(1);

    KolmogorovResult res;
    res.final_hamiltonian = F;
    bool have_div = false;
    for (int k = 1; k <= T; ++k) {
        FourierTaylorSeries S = F.t_slice(k);
        FourierTaylorSeries Sc =
            FourierTaylorSeries::zero(n, K, M, T, fs);
        for (const auto& [key, c] : S.terms())
            if (key.jnorm() <= 1) Sc.set_coeff(key, c);
        if (Sc.is_zero()) continue;
        // Recompute the action-quadratic form from the current t^0 slice.
        KolmogorovHamiltonian fk = KolmogorovHamiltonian::from_series(F.t_slice(0));
        if (!fk.k_condition)
            throw math_error("kolmogorov_normalize: condition (K) lost during iteration");
        BlockSolveResult bs = block_solve(Sc, fk, omega);
        if (bs.min_divisor > 0.0) {
            res.min_divisor = have_div ? std::min(res.min_divisor, bs.min_divisor)
                                       : bs.min_divisor;
            have_div = true;
        }
        // Translation killing the p_i classes: 2 a s = c.
        CoeffMatrix A2 = fk.quad;
        for (auto& row : A2)
            for (auto& c : row) c = c * Coeff::integer(2, fs);
        CoeffMatrix Ainv = invert_matrix(A2, fs);
        std::vector<Coeff> shift(static_cast<size_t>(n), Coeff::zero(fs));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                shift[static_cast<size_t>(i)] =
                    shift[static_cast<size_t>(i)] +
                    Ainv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                        bs.normal_coeffs[static_cast<size_t>(j)];
        KolmogorovGenerator gen{bs.solution, shift, k};
        F = apply_generator(gen, F);
        res.generators.push_back(std::move(gen));
    }
    res.final_hamiltonian = F;
    res.defect = kolmogorov_defect(F - H);
    res.spilled_fourier = F.spilled_fourier();
    res.truncated_taylor = F.truncated_taylor();
    res.truncated_t = F.truncated_t();
    return res;
}

FourierTaylorSeries kolmogorov_defect(const FourierTaylorSeries& diff) {
    FourierTaylorSeries bad = FourierTaylorSeries::zero(diff.dof(), diff.fourier_cutoff(),
                                                        diff.taylor_cutoff(),
                                                        diff.tparam_cutoff(), diff.field());
    for (const auto& [k, c] : diff.terms()) {
        bool in_tI2 = k.tpow >= 1 && k.jnorm() >= 2;
        bool casimir = k.inorm() == 0 && k.jnorm() == 0;
        if (!in_tI2 && !casimir) bad.set_coeff(k, c);
    }
    return bad;
}

}  // namespace jetnf
