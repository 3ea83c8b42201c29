#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetnf/derivation.hpp"
#include "test_util.hpp"

using namespace jetnf;
using namespace jetnf::testutil;

namespace {
const std::vector<std::string> X{"x"};
const std::vector<std::string> XY{"x", "y"};

Derivation D1(const std::string& a, int order) {
    return Derivation({S(a, X, order)});
}

Derivation D2(const std::string& a, const std::string& b, int order) {
    return Derivation({S(a, XY, order), S(b, XY, order)});
}

Derivation random_field(std::mt19937& rng, int nvars, int order, int min_deg, int max_deg) {
    std::vector<TruncatedSeries> comps;
    for (int i = 0; i < nvars; ++i)
        comps.push_back(random_series(rng, nvars, order, min_deg, max_deg, 4));
    return Derivation(std::move(comps));
}
}  // namespace

TEST_CASE("apply") {
    auto v = D2("1", "0", 6);  // d/dx
    CHECK(apply(v, S("x^2", XY, 6)).same_terms(S("2*x", XY, 6)));
    auto w = D1("x^2", 6);
    CHECK(apply(w, S("x", X, 6)).same_terms(S("x^2", X, 6)));
    // Euler identity on homogeneous parts.
    auto euler = D2("x", "y", 7);
    auto f = S("x^2*y + 3*x*y^2", XY, 7);
    CHECK(apply(euler, f).same_terms(f.scaled(Q(3))));
    CHECK_THROWS_AS(apply(v, S("x", X, 6)), math_error);
}

TEST_CASE("apply precision bookkeeping") {
    // Filtration order 0 loses one order; order >= 1 keeps all of it.
    CHECK(apply(D1("1+x", 6), S("x", X, 6)).order() == 5);
    CHECK(apply(D1("x", 6), S("x", X, 6)).order() == 6);
}

TEST_CASE("lie_bracket worked examples") {
    // [x^i y^j dx, 2x dx + y dy] = (2 - 2i - j) x^i y^j dx
    auto v = D2("2*x", "y", 8);
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 3 - i; ++j) {
            Multidegree m{{i, j}};
            auto mono = Derivation::monomial_field(m, 0, Q(1), 8);
            auto br = lie_bracket(mono, v);
            auto expect = mono.scaled(Q(2 - 2 * i - j));
            CHECK(br.same_terms(expect));
        }
    }
    auto w = D2("x^2*y", "x*y^2", 6);
    CHECK(lie_bracket(w, w).is_zero());
    // Hand-evaluated c_i formula: [x^2 dx, dx] = -2x dx.
    CHECK(lie_bracket(D1("x^2", 6), D1("1", 6)).same_terms(D1("-2*x", 6)));
}

TEST_CASE("filtration_order") {
    CHECK(*filtration_order(D2("1", "0", 5)) == 0);
    CHECK(*filtration_order(D1("x^2", 5)) == 2);
    CHECK(!filtration_order(Derivation::zero(2, 5, field_rational())).has_value());
}

TEST_CASE("exp_derivation") {
    // Flow of xdot = x^2 at time 1: x -> x/(1-x), the geometric series jet.
    auto v = D1("x^2", 7);
    auto phi = exp_derivation(v);
    CHECK(phi.map().component(0).same_terms(S("x+x^2+x^3+x^4+x^5+x^6+x^7", X, 7)));

    CHECK(exp_derivation(Derivation::zero(2, 5, field_rational()))
              .map()
              .is_identity());

    std::mt19937 rng(3);
    auto u = random_field(rng, 2, 6, 2, 4);
    auto fwd = exp_derivation(u);
    auto bwd = exp_derivation(-u);
    CHECK(compose_maps(fwd.map(), bwd.map()).is_identity());

    CHECK_THROWS_AS(exp_derivation(D1("x", 6)), math_error);

    // Order-1 diagonal fields exponentiate via scalar exponentials in float
    // mode only.
    auto fsF = field_complex();
    TruncatedSeries lx(2, 5, fsF), ly(2, 5, fsF);
    lx.set_coeff(Multidegree{{1, 0}}, Coeff::complex(1.0));
    ly.set_coeff(Multidegree{{0, 1}}, Coeff::complex(-2.0));
    auto lin = exp_derivation(Derivation({lx, ly}));
    auto cx = lin.map().component(0).coeff(Multidegree{{1, 0}}).complex_value();
    CHECK(std::abs(cx - std::exp(1.0)) < 1e-15);
    auto cy = lin.map().component(1).coeff(Multidegree{{0, 1}}).complex_value();
    CHECK(std::abs(cy - std::exp(-2.0)) < 1e-15);
    // Non-diagonal order-1 fields still refuse.
    TruncatedSeries off(2, 5, fsF);
    off.set_coeff(Multidegree{{0, 1}}, Coeff::complex(1.0));
    CHECK_THROWS_AS(exp_derivation(Derivation({off, TruncatedSeries::zero(2, 5, fsF)})),
                    math_error);
}

TEST_CASE("exp is a ring homomorphism") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto v = random_field(rng, 2, 6, 2, 4);
        auto phi = exp_derivation(v);
        auto f = random_series(rng, 2, 6, 0, 4);
        auto g = random_series(rng, 2, 6, 0, 4);
        CHECK(phi.act(f * g).same_terms((phi.act(f) * phi.act(g)).truncated(6)));
    }
}

TEST_CASE("adjoint under a quadratic chart") {
    // phi: x -> 2x + x^2, v = x d/dx gives 2 sqrt(1+y) a(-1+sqrt(1+y)) d/dy
    // with a(x) = x; rational jets of sqrt(1+y) pin the expected value.
    int N = 9;
    Automorphism phi(SeriesMap({S("2*x+x^2", X, N)}));
    auto v = D1("x", N);
    auto w = adjoint(phi, v);
    auto s = kth_root_unit(S("1+x", X, N), 2);
    auto expected = (S("1+x", X, N) - s).scaled(Q(2));  // 2(1+y) - 2 sqrt(1+y)
    CHECK(w.coeff(0).same_terms(expected));
}

TEST_CASE("adjoint basics") {
    auto id = Automorphism::identity(2, 6, field_rational());
    std::mt19937 rng(5);
    auto v = random_field(rng, 2, 6, 0, 4);
    CHECK(adjoint(id, v).same_terms(v));
}

TEST_CASE("adjoint two-route agreement") {
    // Coordinate formula against operator conjugation on random functions:
    // adjoint(phi, v)(f) = phi^{-1}(v(phi(f))).
    std::mt19937 rng(29);
    for (int trial = 0; trial < 15; ++trial) {
        int N = 6;
        SeriesMap m({S("x", XY, N) + random_series(rng, 2, N, 2, 3, 3),
                     S("y", XY, N) + random_series(rng, 2, N, 2, 3, 3)});
        Automorphism phi(m);
        auto v = random_field(rng, 2, N, 1, 3);
        auto w = adjoint(phi, v);
        auto f = random_series(rng, 2, N, 1, 4);
        auto lhs = apply(w, f);
        auto rhs = compose(apply(v, phi.act(f)), phi.inverse_map());
        int o = std::min(lhs.order(), rhs.order());
        CHECK(lhs.truncated(o).same_terms(rhs.truncated(o)));
    }
}

TEST_CASE("adjoint of an exponential is the right-bracket Lie series") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        int N = 6;
        auto u = random_field(rng, 2, N, 2, 3);
        auto w = random_field(rng, 2, N, 2, 4);
        auto lhs = adjoint(exp_derivation(u), w);
        // sum_k ad_u^k(w)/k! with ad_u(w) = [w, u].
        Derivation term = w;
        Derivation acc = w;
        Coeff fact = Q(1);
        for (int k = 1; k <= N && !term.is_zero(); ++k) {
            term = lie_bracket(term, u);
            fact = fact * Q(1, k);
            acc = acc + term.scaled(fact);
        }
        CHECK(lhs.truncated(N).same_terms(acc.truncated(N)));
    }
}

TEST_CASE("bracket antisymmetry and Jacobi") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        int N = 6;
        auto u = random_field(rng, 2, N, 1, 4);
        auto v = random_field(rng, 2, N, 1, 4);
        auto w = random_field(rng, 2, N, 1, 4);
        CHECK(lie_bracket(u, v).same_terms(-lie_bracket(v, u)));
        auto jac = lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u)) +
                   lie_bracket(w, lie_bracket(u, v));
        // One differentiation loss: exact at order N-1.
        CHECK(jac.truncated(N - 1).is_zero());
    }
}

TEST_CASE("eigenvector property of diagonal fields") {
    std::mt19937 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Coeff> lambda{random_rational(rng), random_rational(rng)};
        auto v = Derivation::diagonal(lambda, 7);
        for (const auto& m : monomials_up_to(2, 6)) {
            for (int i = 0; i < 2; ++i) {
                auto mono = Derivation::monomial_field(m, i, Q(1), 7);
                Coeff eig = lambda[static_cast<size_t>(i)] -
                            (lambda[0] * Q(m[0]) + lambda[1] * Q(m[1]));
                CHECK(lie_bracket(mono, v).same_terms(mono.scaled(eig)));
            }
        }
    }
}
