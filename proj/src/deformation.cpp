#include "jetnf/deformation.hpp"

#include <algorithm>

namespace jetnf {

namespace {

// Total degree over a coordinate window [from, to).
int block_degree(const Multidegree& m, int from, int to) {
    int d = 0;
    for (int i = from; i < to; ++i) d += std::abs(m[i]);
    return d;
}

// Projection onto the block [0, keep): terms using other variables drop.
TruncatedSeries restrict_to_block(const TruncatedSeries& f, int keep) {
    TruncatedSeries r(keep, f.order(), f.field());
    for (const auto& [m, c] : f.terms()) {
        if (block_degree(m, keep, f.nvars()) != 0) continue;
        std::vector<int> e(m.exps().begin(), m.exps().begin() + keep);
        r.set_coeff(Multidegree(std::move(e)), c);
    }
    return r;
}

std::vector<int> iota_map(int n, int offset = 0) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + offset;
    return v;
}

}  // namespace

Deformation::Deformation(TruncatedSeries total_, int nx_)
    : total(std::move(total_)), nx(nx_), nparams(total.nvars() - nx_) {
    if (nx < 0 || nparams < 0) throw input_error("bad deformation variable split");
}

TruncatedSeries Deformation::base() const { return restrict_to_block(total, nx); }

TruncatedSeries Deformation::param_derivative_at_zero(int j) const {
    TruncatedSeries d = total.derivative(nx + j).truncated(total.order());
    // The derivative of the polynomial jet is exact; restriction keeps it so.
    return restrict_to_block(d, nx);
}

VersalityReport versality_check(const Deformation& F, int N) {
    VersalityReport rep;
    TruncatedSeries f = F.base().truncated(N);
    rep.milnor = milnor_number(f, N);
    if (!rep.milnor.certified)
        throw math_error("versality_check: Milnor number of the base not certified at order " +
                         std::to_string(N));
    JetIdealBasis J = jacobian_ideal(f);
    size_t mu = rep.milnor.basis.size();
    CoeffMatrix residues;
    for (int j = 0; j < F.nparams; ++j)
        residues.push_back(J.residue(F.param_derivative_at_zero(j).truncated(N)));
    RowReducer span(static_cast<int>(mu), f.field());
    for (size_t j = 0; j < residues.size(); ++j)
        span.add_row(residues[j], static_cast<int>(j));
    rep.versal = span.rank() == static_cast<int>(mu);
    if (!rep.versal) {
        for (int c = 0; c < static_cast<int>(mu); ++c)
            if (!span.has_pivot(c)) rep.uncovered.push_back(rep.milnor.basis[static_cast<size_t>(c)]);
    }
    return rep;
}

Deformation thom_sebastiani(const Deformation& F, const Deformation& G) {
    if (F.nx != G.nx) throw math_error("thom_sebastiani: ambient blocks differ");
    TruncatedSeries fF = F.base();
    TruncatedSeries fG = G.base();
    if (!(fF.truncated(std::min(fF.order(), fG.order()))
              .same_terms(fG.truncated(std::min(fF.order(), fG.order())))))
        throw math_error("thom_sebastiani: base fibers do not match");
    int nx = F.nx, m = F.nparams, a = G.nparams;
    int n = nx + m + a;
    int order = std::min(F.order(), G.order());
    // Joint variable order: x block, F parameters, G parameters.
    std::vector<int> mapF = iota_map(nx + m);
    std::vector<int> mapG = iota_map(nx);
    for (int c = 0; c < a; ++c) mapG.push_back(nx + m + c);
    TruncatedSeries total = embed(F.total.truncated(order), n, mapF) +
                            embed(G.total.truncated(order), n, mapG) -
                            embed(fF.truncated(order), n, iota_map(nx));
    Deformation out;
    out.total = total;
    out.nx = nx;
    out.nparams = m + a;
    return out;
}

TruncatedSeries apply_inducing_map(const Deformation& F, const InducingMap& im) {
    int nxa = F.nx + im.nparams_g;
    std::vector<TruncatedSeries> images;
    for (int i = 0; i < F.nx; ++i) images.push_back(im.coord_subst.at(static_cast<size_t>(i)));
    std::vector<int> amap = iota_map(im.nparams_g, F.nx);
    for (int j = 0; j < F.nparams; ++j)
        images.push_back(embed(im.param_subst.at(static_cast<size_t>(j)), nxa, amap));
    return substitute(F.total, images);
}

namespace {

// Lie-series exponential for derivations that do not move the alpha block
// and whose coefficients vanish at alpha = 0: each application raises the
// alpha-adic order, so the series terminates at the truncation order.
Automorphism exp_alpha_filtered(const Derivation& v, int alpha_from) {
    int n = v.nvars();
    int order = v.order();
    const FieldSpec& fs = v.field();
    for (int i = alpha_from; i < n; ++i)
        if (!v.coeff(i).is_zero())
            throw math_error("alpha-filtered exponential moves the alpha block (internal)");
    for (int i = 0; i < alpha_from; ++i)
        for (const auto& [m, c] : v.coeff(i).terms())
            if (block_degree(m, alpha_from, n) == 0)
                throw math_error("alpha-filtered exponential: coefficient not in M_alpha (internal)");
    auto flow = [&](const Derivation& field) {
        std::vector<TruncatedSeries> comps;
        comps.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            TruncatedSeries term = TruncatedSeries::variable(i, n, order, fs);
            TruncatedSeries acc = term;
            Coeff fact = Coeff::one(fs);
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

}  // namespace

InducingMap induce_deformation(const Deformation& F, const Deformation& G, int N) {
    VersalityReport rep = versality_check(F, N);
    if (!rep.versal) throw math_error("induce_deformation: F is not versal at order " +
                                      std::to_string(N));
    int nx = F.nx, m = F.nparams, a = G.nparams;
    int n = nx + m + a;
    const FieldSpec& fs = F.total.field();
    TruncatedSeries f = F.base().truncated(N);

    Deformation TS = thom_sebastiani(Deformation(F.total.truncated(N), nx),
                                     Deformation(G.total.truncated(N), nx));
    TruncatedSeries TS_total = TS.total;
    TruncatedSeries F_joint = embed(F.total.truncated(N), n, iota_map(nx + m));

    // Base-fiber solver data: J_f slice and the residue matrix of the
    // first-order parameter directions.
    JetIdealBasis J = jacobian_ideal(f);
    auto standard = J.standard_monomials();
    size_t mu = standard.size();
    std::vector<TruncatedSeries> tdirs;
    CoeffMatrix tres_cols;  // residue vectors, one per parameter
    for (int j = 0; j < m; ++j) {
        tdirs.push_back(F.param_derivative_at_zero(j).truncated(N));
        tres_cols.push_back(J.residue(tdirs.back()));
    }
    // A c = r with A[mu x m], columns = parameter residues.
    CoeffMatrix A(mu, CoeffRow(static_cast<size_t>(m), Coeff::zero(fs)));
    for (int j = 0; j < m; ++j)
        for (size_t r = 0; r < mu; ++r) A[r][static_cast<size_t>(j)] = tres_cols[static_cast<size_t>(j)][r];

    std::vector<TruncatedSeries> dF_x, dF_l;
    for (int i = 0; i < nx; ++i) dF_x.push_back(F_joint.derivative(i).truncated(N));
    for (int j = 0; j < m; ++j) dF_l.push_back(F_joint.derivative(nx + j).truncated(N));

    Automorphism Phi = Automorphism::identity(n, N, fs);
    TruncatedSeries residual_all = compose(TS_total, Phi.map()) - F_joint;

    int guard = 0;
    while (!residual_all.is_zero()) {
        if (++guard > N + 1) throw math_error("induce_deformation: no progress (internal)");
        // Alpha-adic order of the current residual.
        int k = N + 1;
        for (const auto& [md, c] : residual_all.terms())
            k = std::min(k, block_degree(md, nx + m, n));
        if (k < 1) throw math_error("induce_deformation: residual at alpha order 0 (internal)");
        TruncatedSeries slice(n, N, fs);
        for (const auto& [md, c] : residual_all.terms())
            if (block_degree(md, nx + m, n) == k) slice.set_coeff(md, c);

        // Solve sum A_i d_xi F + sum B_j d_lambda_j F = slice, walking the
        // (lambda, alpha)-monomial groups in graded-lex order; each group is
        // settled by one base-ring versality decomposition.
        std::vector<TruncatedSeries> Acomp(static_cast<size_t>(nx),
                                           TruncatedSeries::zero(n, N, fs));
        std::vector<TruncatedSeries> Bcomp(static_cast<size_t>(m),
                                           TruncatedSeries::zero(n, N, fs));
        TruncatedSeries work = slice;
        int inner_guard = 0;
        while (!work.is_zero()) {
            if (++inner_guard > 4000)
                throw math_error("induce_deformation: group recursion stalled (internal)");
            // Least (lambda, alpha)-part among the terms.
            bool have = false;
            Multidegree key;
            GrlexLess less;
            for (const auto& [md, c] : work.terms()) {
                std::vector<int> e(md.exps().begin() + nx, md.exps().end());
                Multidegree cand{e};
                if (!have || less(cand, key)) { key = cand; have = true; }
            }
            // Collect h(x) of that group.
            TruncatedSeries h(nx, N - key.total(), fs);
            for (const auto& [md, c] : work.terms()) {
                std::vector<int> e(md.exps().begin() + nx, md.exps().end());
                if (!(Multidegree{e} == key)) continue;
                std::vector<int> xe(md.exps().begin(), md.exps().begin() + nx);
                h.set_coeff(Multidegree{xe}, c);
            }
            // h = sum_j c_j t_j + sum_i a_i d_i f.
            CoeffRow r = J.residue(h.truncated(N));
            auto csol = solve_first(A, r, fs);
            if (!csol)
                throw math_error("induce_deformation: quotient solve failed (internal)");
            TruncatedSeries h2 = h.truncated(N);
            for (int j = 0; j < m; ++j)
                h2 = h2 - tdirs[static_cast<size_t>(j)].scaled((*csol)[static_cast<size_t>(j)]);
            auto bsol = J.solve(h2);
            if (!bsol)
                throw math_error("induce_deformation: ideal solve failed (internal)");
            // Lift by the (lambda, alpha)-monomial and subtract the products.
            std::vector<int> keye(static_cast<size_t>(n), 0);
            for (int i = nx; i < n; ++i) keye[static_cast<size_t>(i)] = key[i - nx];
            TruncatedSeries keymono =
                TruncatedSeries::monomial(Multidegree(keye), Coeff::one(fs), N);
            for (int i = 0; i < nx; ++i) {
                TruncatedSeries ai =
                    mul_to(embed((*bsol)[static_cast<size_t>(i)], n, iota_map(nx)), keymono, N);
                if (ai.is_zero()) continue;
                Acomp[static_cast<size_t>(i)] = Acomp[static_cast<size_t>(i)] + ai;
                work = work - mul_to(ai, dF_x[static_cast<size_t>(i)], N);
            }
            for (int j = 0; j < m; ++j) {
                const Coeff& cj = (*csol)[static_cast<size_t>(j)];
                if (cj.is_zero()) continue;
                TruncatedSeries bj = keymono.scaled(cj);
                Bcomp[static_cast<size_t>(j)] = Bcomp[static_cast<size_t>(j)] + bj;
                work = work - mul_to(bj, dF_l[static_cast<size_t>(j)], N);
            }
        }
        std::vector<TruncatedSeries> vcomps;
        for (int i = 0; i < nx; ++i) vcomps.push_back(Acomp[static_cast<size_t>(i)]);
        for (int j = 0; j < m; ++j) vcomps.push_back(Bcomp[static_cast<size_t>(j)]);
        for (int c = 0; c < a; ++c) vcomps.push_back(TruncatedSeries::zero(n, N, fs));
        Derivation v(std::move(vcomps));
        Automorphism step = exp_alpha_filtered(-v, nx + m);
        Phi = step.then_inner(Phi);
        residual_all = compose(TS_total, Phi.map()) - F_joint;
    }

    // Extract lambda(alpha) from Phi's lambda components: solve Lambda = 0.
    InducingMap im;
    im.nx = nx;
    im.nparams_f = m;
    im.nparams_g = a;
    std::vector<TruncatedSeries> lambda_of_alpha(static_cast<size_t>(m),
                                                 TruncatedSeries::zero(a, N, fs));
    for (int it = 0; it <= N; ++it) {
        // images: x -> 0, lambda_j -> current lambda_j(alpha), alpha -> alpha.
        std::vector<TruncatedSeries> images;
        for (int i = 0; i < nx; ++i) images.push_back(TruncatedSeries::zero(a, N, fs));
        for (int j = 0; j < m; ++j) images.push_back(lambda_of_alpha[static_cast<size_t>(j)]);
        for (int c = 0; c < a; ++c) images.push_back(TruncatedSeries::variable(c, a, N, fs));
        bool stable = true;
        std::vector<TruncatedSeries> next = lambda_of_alpha;
        for (int j = 0; j < m; ++j) {
            TruncatedSeries val = substitute(Phi.map().component(nx + j), images);
            next[static_cast<size_t>(j)] = lambda_of_alpha[static_cast<size_t>(j)] - val;
            stable = stable && val.is_zero();
        }
        lambda_of_alpha = std::move(next);
        if (stable) break;
    }
    im.param_subst = lambda_of_alpha;

    // Coordinate change: invert x -> X(x, lambda(alpha), alpha) over (x, alpha).
    int nxa = nx + a;
    std::vector<TruncatedSeries> images;
    for (int i = 0; i < nx; ++i) images.push_back(TruncatedSeries::variable(i, nxa, N, fs));
    std::vector<int> amap = iota_map(a, nx);
    for (int j = 0; j < m; ++j)
        images.push_back(embed(im.param_subst[static_cast<size_t>(j)], nxa, amap));
    for (int c = 0; c < a; ++c) images.push_back(TruncatedSeries::variable(nx + c, nxa, N, fs));
    std::vector<TruncatedSeries> xt;
    for (int i = 0; i < nx; ++i) xt.push_back(substitute(Phi.map().component(i), images));
    for (int c = 0; c < a; ++c) xt.push_back(TruncatedSeries::variable(nx + c, nxa, N, fs));
    SeriesMap inv = invert_map(SeriesMap(std::move(xt)));
    for (int i = 0; i < nx; ++i) im.coord_subst.push_back(inv.component(i));

    // Re-verify by substitution: F(coord, param) must reproduce G.
    TruncatedSeries produced = apply_inducing_map(Deformation(F.total.truncated(N), nx), im);
    std::vector<int> gmap = iota_map(nx);
    for (int c = 0; c < a; ++c) gmap.push_back(nx + c);
    TruncatedSeries gwant = embed(G.total.truncated(N), nxa, gmap).truncated(produced.order());
    if (!produced.same_terms(gwant))
        throw math_error("induce_deformation: substitution check failed (internal)");
    return im;
}

}  // namespace jetnf
