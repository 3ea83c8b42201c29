#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetnf/singular_torus.hpp"
#include "test_util.hpp"

using namespace jetnf;
using namespace jetnf::testutil;

namespace {

FTKey key1(int I, int J, int t = 0) { return FTKey{{I}, {J}, t}; }
FTKey key2(int I1, int I2, int J1, int J2, int t = 0) { return FTKey{{I1, I2}, {J1, J2}, t}; }

FourierTaylorSeries ft1(int K, int M, int T) {
    return FourierTaylorSeries::zero(1, K, M, T, field_rational());
}

FrequencyVector freq_rat(std::vector<long long> vals) {
    FrequencyVector w;
    for (long long v : vals) w.omega.push_back(Q(v));
    return w;
}

FrequencyVector freq_1_sqrt2() {
    FrequencyVector w;
    w.omega = {Coeff::quadratic(1, 0, 2), Coeff::quadratic(0, 1, 2)};
    return w;
}

FourierTaylorSeries random_ft(std::mt19937& rng, int dof, int K, int M, int T, int max_i,
                              int max_j, int nterms, FieldSpec fs = field_rational()) {
    FourierTaylorSeries f = FourierTaylorSeries::zero(dof, K, M, T, fs);
    std::uniform_int_distribution<int> di(-max_i, max_i), dj(0, max_j);
    for (int t = 0; t < nterms; ++t) {
        FTKey k;
        for (int i = 0; i < dof; ++i) k.I.push_back(di(rng));
        for (int i = 0; i < dof; ++i) k.J.push_back(dj(rng));
        k.tpow = 0;
        if (k.inorm() > K || k.jnorm() > M) continue;
        Coeff c = random_rational(rng);
        if (fs.kind == FieldKind::Quadratic) c = Coeff::quadratic(c.rat_part(), 0, fs.d);
        f.set_coeff(k, f.coeff(k) + c);
    }
    return f;
}

}  // namespace

TEST_CASE("poisson bracket normalization") {
    // {p1, q^I} = I1 q^I.
    auto p1 = ft1(6, 2, 0).with_term(key1(0, 1), Q(1));
    for (int i = -3; i <= 3; ++i) {
        auto qi = ft1(6, 2, 0).with_term(key1(i, 0), Q(1));
        auto br = poisson_bracket(p1, qi);
        CHECK(br.same_terms(qi.scaled(Q(i))));
    }
    // {H0, q^I p^J} = (omega, I) q^I p^J for H0 = sum omega_i p_i.
    auto H0 = FourierTaylorSeries::zero(2, 6, 3, 0, field_rational())
                  .with_term(key2(0, 0, 1, 0), Q(3))
                  .with_term(key2(0, 0, 0, 1), Q(5));
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> di(-2, 2), dj(0, 2);
    for (int trial = 0; trial < 30; ++trial) {
        FTKey k = key2(di(rng), di(rng), dj(rng), dj(rng));
        if (k.inorm() > 6 || k.jnorm() > 3) continue;
        auto mono = FourierTaylorSeries::zero(2, 6, 3, 0, field_rational()).with_term(k, Q(1));
        auto br = poisson_bracket(H0, mono);
        Coeff eig = Q(3 * k.I[0] + 5 * k.I[1]);
        CHECK(br.same_terms(mono.scaled(eig)));
        CHECK(br.spilled_fourier() == 0);
    }
}

TEST_CASE("bracket axioms with zero spill") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        // Sized so that double brackets stay inside the cutoffs.
        auto F = random_ft(rng, 1, 12, 6, 0, 2, 1, 3);
        auto G = random_ft(rng, 1, 12, 6, 0, 2, 1, 3);
        auto H = random_ft(rng, 1, 12, 6, 0, 2, 1, 3);
        CHECK(poisson_bracket(F, G).same_terms(-poisson_bracket(G, F)));
        auto jac = poisson_bracket(F, poisson_bracket(G, H)) +
                   poisson_bracket(G, poisson_bracket(H, F)) +
                   poisson_bracket(H, poisson_bracket(F, G));
        CHECK(jac.is_zero());
        CHECK(jac.spilled_fourier() == 0);
        auto leib = poisson_bracket(F, G * H) -
                    (poisson_bracket(F, G) * H + G * poisson_bracket(F, H));
        CHECK(leib.is_zero());
        CHECK(leib.spilled_fourier() == 0);
    }
    // t is a Casimir: bracket with t-dependent series treats t as constant.
    auto Ft = ft1(4, 2, 2).with_term(key1(1, 0, 1), Q(1));
    auto Gt = ft1(4, 2, 2).with_term(key1(0, 1, 0), Q(1));
    auto br = poisson_bracket(Gt, Ft);  // {p, t q} = t q
    CHECK(br.same_terms(ft1(4, 2, 2).with_term(key1(1, 0, 1), Q(1))));
}

TEST_CASE("average") {
    auto P = ft1(4, 2, 0)
                 .with_term(key1(0, 0), Q(3))
                 .with_term(key1(1, 0), Q(1))
                 .with_term(key1(-1, 0), Q(-1));
    CHECK(P.average().same_terms(ft1(4, 2, 0).with_term(key1(0, 0), Q(3))));
    auto P2 = ft1(4, 2, 0).with_term(key1(1, 1), Q(1)).with_term(key1(-1, 1), Q(1));
    CHECK(P2.average().is_zero());
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto F = random_ft(rng, 2, 5, 2, 0, 2, 2, 6);
        CHECK((F - F.average()).average().is_zero());
    }
}

TEST_CASE("solve_homological") {
    auto w1 = freq_rat({1});
    auto g = ft1(4, 2, 0).with_term(key1(1, 0), Q(1)).with_term(key1(-1, 0), Q(1));
    auto sol = solve_homological(g, w1);
    CHECK(sol.u.same_terms(
        ft1(4, 2, 0).with_term(key1(1, 0), Q(1)).with_term(key1(-1, 0), Q(-1))));
    CHECK(sol.min_divisor == doctest::Approx(1.0));

    auto bad = ft1(4, 2, 0).with_term(key1(0, 0), Q(3)).with_term(key1(1, 0), Q(1));
    CHECK_THROWS_AS(solve_homological(bad, w1), math_error);

    // n = 2, omega = (1, sqrt2): q1 q2^-1 divides by 1 - sqrt2.
    auto w2 = freq_1_sqrt2();
    auto fs = field_quadratic(2);
    auto g2 = FourierTaylorSeries::zero(2, 4, 2, 0, fs);
    g2.set_coeff(key2(1, -1, 0, 0), Coeff::quadratic(1, 0, 2));
    auto sol2 = solve_homological(g2, w2);
    Coeff expect = Coeff::quadratic(1, 0, 2) / Coeff::quadratic(1, -1, 2);
    CHECK(sol2.u.coeff(key2(1, -1, 0, 0)) == expect);

    // Resonant omega = (1, 2) at mode (2, -1).
    auto wr = freq_rat({1, 2});
    auto gr = FourierTaylorSeries::zero(2, 4, 2, 0, field_rational());
    gr.set_coeff(key2(2, -1, 0, 0), Q(1));
    CHECK_THROWS_AS(solve_homological(gr, wr), math_error);
}

TEST_CASE("homological forward check") {
    std::mt19937 rng(11);
    auto w = freq_rat({3, 1});
    auto H0 = FourierTaylorSeries::zero(2, 10, 3, 0, field_rational())
                  .with_term(key2(0, 0, 1, 0), Q(3))
                  .with_term(key2(0, 0, 0, 1), Q(1));
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_ft(rng, 2, 10, 3, 0, 3, 2, 6);
        g = g - g.average();
        bool resonant = false;
        for (const auto& [k, c] : g.terms()) resonant = resonant || w.dot(k.I).is_zero();
        if (resonant) continue;
        auto sol = solve_homological(g, w);
        CHECK(poisson_bracket(H0, sol.u).same_terms(g));
        CHECK(sol.u.average().is_zero());
    }
}

TEST_CASE("diophantine_check") {
    auto w = freq_1_sqrt2();
    auto res = diophantine_check(w, 0.0, 2.0, 200);
    CHECK(res.holds);
    CHECK(res.best_C > 0.0);
    REQUIRE(w.witness.has_value());
    CHECK(w.witness->checked_up_to == 200);
    // Re-run with the fitted constant: still holds.
    auto res2 = diophantine_check(w, res.best_C, 2.0, 200);
    CHECK(res2.holds);

    auto wr = freq_rat({1, 2});
    auto bad = diophantine_check(wr, 0.5, 2.0, 10);
    CHECK(!bad.holds);
    CHECK(bad.exact_zero);
    CHECK(bad.violation_I == std::vector<int>{2, -1});
    CHECK(!wr.witness.has_value());

    auto w1 = freq_rat({1});
    auto one = diophantine_check(w1, 1.0, 3.0, 50);
    CHECK(one.holds);
}

TEST_CASE("block_solve") {
    auto w = freq_rat({1});
    auto H = ft1(8, 3, 2).with_term(key1(0, 1), Q(1)).with_term(key1(0, 2), Q(1));
    auto kh = KolmogorovHamiltonian::from_series(H);
    CHECK(kh.k_condition);
    REQUIRE(kh.omega.size() == 1);
    CHECK(kh.omega[0] == Q(1));

    auto rhs_const = ft1(8, 3, 2).with_term(key1(0, 0), Q(1));
    auto b1 = block_solve(rhs_const, kh, w);
    CHECK(b1.solution.is_zero());
    CHECK(b1.beta.same_terms(rhs_const));
    CHECK(b1.normal.is_zero());

    auto rhs_p = ft1(8, 3, 2).with_term(key1(0, 1), Q(1));
    auto b2 = block_solve(rhs_p, kh, w);
    CHECK(b2.solution.is_zero());
    CHECK(b2.normal.same_terms(rhs_p));
    CHECK(b2.normal_coeffs[0] == Q(1));

    // rhs = q + p q: forward-apply oracle {H, u} = rhs - beta - normal mod I^2.
    auto rhs = ft1(8, 3, 2).with_term(key1(1, 0), Q(1)).with_term(key1(1, 1), Q(1));
    auto b3 = block_solve(rhs, kh, w);
    auto forward = poisson_bracket(H, b3.solution);
    FourierTaylorSeries fwd_mod = forward.taylor_slice(0) + forward.taylor_slice(1);
    auto want = rhs - b3.beta - b3.normal;
    CHECK(fwd_mod.same_terms(want));
    CHECK_THROWS_AS(block_solve(ft1(8, 3, 2).with_term(key1(0, 2), Q(1)), kh, w), math_error);
}

TEST_CASE("kolmogorov_normalize worked example n=1") {
    auto w = freq_rat({1});
    diophantine_check(w, 0.5, 2.0, 20);
    REQUIRE(w.witness.has_value());
    auto H = ft1(8, 3, 2).with_term(key1(0, 1), Q(1)).with_term(key1(0, 2), Q(1));
    auto kh = KolmogorovHamiltonian::from_series(H);
    auto R = ft1(8, 3, 2).with_term(key1(1, 0), Q(1)).with_term(key1(-1, 0), Q(1));
    auto res = kolmogorov_normalize(kh, w, R);
    CHECK(res.defect.is_zero());
    CHECK(res.spilled_fourier == 0);
    // Independent forward substitution from the returned generators.
    auto F = H + R.times_t(1);
    for (const auto& gen : res.generators) F = apply_generator(gen, F);
    CHECK(F.same_terms(res.final_hamiltonian));
    CHECK(kolmogorov_defect(F - H).is_zero());
    // R = 0 leaves H untouched.
    auto res0 = kolmogorov_normalize(kh, w, ft1(8, 3, 2));
    CHECK(res0.generators.empty());
    CHECK(res0.final_hamiltonian.same_terms(H));
}

TEST_CASE("kolmogorov_normalize n=2 with sqrt2") {
    auto w = freq_1_sqrt2();
    diophantine_check(w, 0.1, 2.0, 40);
    REQUIRE(w.witness.has_value());
    auto fs = field_quadratic(2);
    auto H = FourierTaylorSeries::zero(2, 8, 3, 2, fs);
    H.set_coeff(key2(0, 0, 1, 0), Coeff::quadratic(1, 0, 2));
    H.set_coeff(key2(0, 0, 0, 1), Coeff::quadratic(0, 1, 2));
    H.set_coeff(key2(0, 0, 2, 0), Coeff::quadratic(1, 2, 2));  // note: 1/2 -> use ratio
    H.set_coeff(key2(0, 0, 2, 0), Coeff::quadratic(Rational(1, 2), 0, 2));
    H.set_coeff(key2(0, 0, 0, 2), Coeff::quadratic(Rational(1, 2), 0, 2));
    auto kh = KolmogorovHamiltonian::from_series(H);
    CHECK(kh.k_condition);
    auto R = FourierTaylorSeries::zero(2, 8, 3, 2, fs);
    R.set_coeff(key2(1, 0, 0, 0), Coeff::quadratic(1, 0, 2));
    R.set_coeff(key2(-1, 1, 0, 0), Coeff::quadratic(0, 1, 2));
    auto res = kolmogorov_normalize(kh, w, R);
    CHECK(res.defect.is_zero());
    auto F = H + R.times_t(1);
    for (const auto& gen : res.generators) F = apply_generator(gen, F);
    CHECK(F.same_terms(res.final_hamiltonian));
}

TEST_CASE("canonical transformation preserves the bracket") {
    std::mt19937 rng(31);
    auto fs = field_rational();
    for (int trial = 0; trial < 10; ++trial) {
        KolmogorovGenerator gen;
        gen.chi = random_ft(rng, 1, 16, 6, 2, 1, 2, 3, fs);
        gen.shift = {random_rational(rng)};
        gen.t_order = 1;
        auto F = random_ft(rng, 1, 16, 6, 2, 1, 1, 3, fs);
        auto G = random_ft(rng, 1, 16, 6, 2, 1, 1, 3, fs);
        auto lhs = poisson_bracket(apply_generator(gen, F), apply_generator(gen, G));
        auto rhs = apply_generator(gen, poisson_bracket(F, G));
        CHECK(lhs.same_terms(rhs));
        CHECK(lhs.spilled_fourier() == 0);
        CHECK(rhs.spilled_fourier() == 0);
    }
}

TEST_CASE("singular torus normalization") {
    auto w1 = freq_rat({1});
    diophantine_check(w1, 0.5, 2.0, 20);
    // R = 0: identity.
    auto zero2 = TruncatedSeries::zero(2, 6, field_rational());
    auto res0 = singular_torus_normalize(w1, zero2, 6);
    CHECK(res0.generators.empty());
    CHECK(res0.defect.is_zero());

    // n = 1, omega = 1, R = q^3 at N = 6: result = pq mod (pq)^2.
    auto R = S("q^3", {"q", "p"}, 6);
    auto res = singular_torus_normalize(w1, R, 6);
    CHECK(res.defect.is_zero());
    auto H = coupled_oscillator_hamiltonian(w1, 6);
    auto diff = res.final_hamiltonian - H;
    for (const auto& [m, c] : diff.terms()) {
        CHECK(m[0] == m[1]);
        CHECK(m[0] >= 2);
    }
    // Independent forward flow from the generators.
    auto F = H + R;
    for (const auto& chi : res.generators) F = hamiltonian_flow(chi, F, 1);
    CHECK(F.same_terms(res.final_hamiltonian));
    CHECK(res.min_divisor > 0.0);
}

TEST_CASE("singular torus n=2 random cubics") {
    auto w = freq_1_sqrt2();
    diophantine_check(w, 0.1, 2.0, 30);
    std::mt19937 rng(47);
    auto fs = field_quadratic(2);
    for (int trial = 0; trial < 5; ++trial) {
        auto R = random_series(rng, 4, 6, 3, 3, 6, fs);
        auto res = singular_torus_normalize(w, R, 6);
        CHECK(res.defect.is_zero());
        auto H = coupled_oscillator_hamiltonian(w, 6);
        auto F = H + R;
        for (const auto& chi : res.generators) F = hamiltonian_flow(chi, F, 2);
        CHECK(F.same_terms(res.final_hamiltonian));
    }
}

TEST_CASE("preconditions") {
    auto w = freq_rat({1, 2});  // resonant
    auto R = TruncatedSeries::zero(4, 6, field_rational());
    CHECK_THROWS_AS(singular_torus_normalize(w, R, 6), math_error);  // no witness

    auto w1 = freq_rat({1});
    diophantine_check(w1, 0.5, 2.0, 10);
    auto bad = S("q*p", {"q", "p"}, 6);  // valuation 2 < 3
    CHECK_THROWS_AS(singular_torus_normalize(w1, bad, 6), math_error);
}
