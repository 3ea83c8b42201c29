#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "jetnf/serialize.hpp"
#include "jetnf/series_map.hpp"
#include "test_util.hpp"

using namespace jetnf;
using namespace jetnf::testutil;

namespace {
const std::vector<std::string> X{"x"};
const std::vector<std::string> XY{"x", "y"};
}  // namespace

TEST_CASE("addition") {
    CHECK(S("x", X, 5) + S("-x", X, 5) == TruncatedSeries::zero(1, 5, field_rational()));
    CHECK(S("1+x", X, 5) + S("x^2", X, 5) == S("1+x+x^2", X, 5));
    // Truncation contract: result order is the min of the operand orders.
    auto sum = S("x", X, 3) + S("x", X, 5);
    CHECK(sum.order() == 3);
    CHECK(sum == S("2*x", X, 3));
    CHECK_THROWS_AS(S("x", X, 4) + S("x", XY, 4), math_error);
}

TEST_CASE("multiplication") {
    CHECK(S("1+x", X, 6) * S("1-x", X, 6) == S("1-x^2", X, 6));
    auto p = S("x^5", X, 5) * S("x", X, 5);
    CHECK(p.is_zero());
    CHECK(p.order() == 5);
    // Direct expansion oracle: (1+x+x^2)(1-x) = 1 - x^3 at order 4.
    auto q = S("1+x+x^2", X, 4) * S("1-x", X, 4);
    CHECK(q.same_terms(S("1-x^3", X, 4)));
}

TEST_CASE("valuation") {
    CHECK(*S("x^2*y + x^5", XY, 6).valuation() == 3);
    CHECK(!TruncatedSeries::zero(2, 6, field_rational()).valuation().has_value());
    CHECK(*S("7+x", X, 6).valuation() == 0);
}

TEST_CASE("compose") {
    // f = x^2 under x -> x + x^3 at order 6: direct expansion oracle.
    SeriesMap phi({S("x + x^3", X, 6)});
    CHECK(compose(S("x^2", X, 6), phi).same_terms(S("x^2 + 2*x^4 + x^6", X, 6)));

    SeriesMap id = SeriesMap::identity(2, 5, field_rational());
    auto f = S("1 + x*y - 3*y^2 + x^3*y^2", XY, 5);
    CHECK(compose(f, id) == f);

    SeriesMap two({S("2*x + x^2", X, 5)});
    CHECK(compose(S("x", X, 5), two).same_terms(S("2*x + x^2", X, 5)));

    CHECK_THROWS_AS(SeriesMap({S("1 + x", X, 5)}), math_error);
}

TEST_CASE("compose chain property") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int order = 5;
        auto f = random_series(rng, 2, order, 0, 4);
        auto a1 = random_series(rng, 2, order, 1, 3, 4);
        auto a2 = random_series(rng, 2, order, 1, 3, 4);
        auto b1 = random_series(rng, 2, order, 1, 3, 4);
        auto b2 = random_series(rng, 2, order, 1, 3, 4);
        SeriesMap phi({a1, a2}), psi({b1, b2});
        auto lhs = compose(compose(f, phi), psi);
        auto rhs = compose(f, compose_maps(phi, psi));
        CHECK(lhs.same_terms(rhs));
    }
}

TEST_CASE("invert_map") {
    // Inverse of x -> 2x + x^2 is y -> -1 + sqrt(1+y); the root jet pins it.
    SeriesMap phi({S("2*x + x^2", X, 8)});
    SeriesMap psi = invert_map(phi);
    auto sqrt_jet = kth_root_unit(S("1+x", X, 8), 2);
    auto expected = sqrt_jet - S("1", X, 8);
    CHECK(psi.component(0).same_terms(expected));
    CHECK(psi.component(0).coeff(Multidegree{{1}}) == Q(1, 2));
    CHECK(psi.component(0).coeff(Multidegree{{2}}) == Q(-1, 8));

    SeriesMap id = SeriesMap::identity(3, 5, field_rational());
    CHECK(invert_map(id) == id);

    CHECK_THROWS_AS(invert_map(SeriesMap({S("x^2", X, 5)})), math_error);
}

TEST_CASE("invert_map round trip property") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        int order = 6;
        auto a1 = S("x", XY, order) + random_series(rng, 2, order, 2, 4, 3);
        auto a2 = S("y", XY, order) + random_series(rng, 2, order, 2, 4, 3);
        SeriesMap phi({a1, a2});
        SeriesMap psi = invert_map(phi);
        CHECK(compose_maps(phi, psi).is_identity());
        CHECK(compose_maps(psi, phi).is_identity());
    }
}

TEST_CASE("kth_root_unit") {
    auto one = S("1", X, 6);
    CHECK(kth_root_unit(one, 5) == one);
    // Binomial series oracle for (1+x)^{1/2}.
    auto r = kth_root_unit(S("1+x", X, 6), 2);
    CHECK(r.coeff(Multidegree{{1}}) == Q(1, 2));
    CHECK(r.coeff(Multidegree{{2}}) == Q(-1, 8));
    CHECK(r.coeff(Multidegree{{3}}) == Q(1, 16));
    CHECK(r.coeff(Multidegree{{4}}) == Q(-5, 128));

    std::mt19937 rng(7);
    for (int k = 2; k <= 4; ++k) {
        auto u = S("1", XY, 6) + random_series(rng, 2, 6, 1, 4, 4);
        auto root = kth_root_unit(u, k);
        CHECK(root.pow(k).same_terms(u));
    }
    CHECK_THROWS_AS(kth_root_unit(S("2+x", X, 6), 2), math_error);
    CHECK(kth_root_unit(S("4+4*x", X, 6), 2).coeff(Multidegree::zero(1)) == Q(2));
}

TEST_CASE("ring axioms modulo truncation") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_series(rng, 2, 5, 0, 4);
        auto g = random_series(rng, 2, 5, 0, 4);
        auto h = random_series(rng, 2, 5, 0, 4);
        CHECK(((f * g) * h).truncated(5).same_terms((f * (g * h)).truncated(5)));
        CHECK((f * (g + h)).truncated(5).same_terms((f * g + f * h).truncated(5)));
    }
}

TEST_CASE("valuation is additive under products") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_series(rng, 2, 8, 1, 3, 3);
        auto g = random_series(rng, 2, 8, 1, 3, 3);
        auto p = f * g;
        auto vf = f.valuation(), vg = g.valuation(), vp = p.valuation();
        if (vf && vg && *vf + *vg <= 8) {
            REQUIRE(vp.has_value());
            CHECK(*vp == *vf + *vg);
        }
    }
}

TEST_CASE("exact rational determinism") {
    auto build = [] {
        std::mt19937 rng(2024);
        auto f = random_series(rng, 3, 6, 0, 5, 10);
        auto g = random_series(rng, 3, 6, 0, 5, 10);
        return (f * g + f).str({"x", "y", "z"});
    };
    CHECK(build() == build());
}

TEST_CASE("unit inverse") {
    auto f = S("1 + x + 3*y^2", XY, 6);
    auto inv = f.unit_inverse();
    CHECK((f * inv).same_terms(S("1", XY, 6)));
    CHECK_THROWS_AS(S("x", X, 4).unit_inverse(), math_error);
}

TEST_CASE("grammar") {
    CHECK(S("1/2 + 3/4*x", X, 4).coeff(Multidegree{{1}}) == Q(3, 4));
    CHECK_THROWS_AS(S("2x", X, 4), input_error);        // implicit multiplication
    CHECK_THROWS_AS(S("x/2", X, 4), input_error);       // '/' only inside literals
    CHECK_THROWS_AS(S("x^-1", X, 4), input_error);      // Taylor variables only
    CHECK_THROWS_AS(S("sqrt(2)*x", X, 4), input_error); // sqrt needs quad mode
    auto fs = field_quadratic(2);
    auto f = S("sqrt(2)*x + 1", X, 4, fs);
    CHECK(f.coeff(Multidegree{{1}}) == Coeff::quadratic(0, 1, 2));
    CHECK_THROWS_AS(S("sqrt(3)", X, 4, fs), input_error);
}

TEST_CASE("series document round trip") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        SeriesDoc doc;
        doc.series = random_series(rng, 2, 7, 0, 6, 8);
        doc.var_names = {"x", "y"};
        std::string text = series_doc_str(doc);
        SeriesDoc back = parse_series_doc(text);
        CHECK(back.series == doc.series);
        CHECK(back.var_names == doc.var_names);
        CHECK(series_doc_str(back) == text);
    }
    // Quadratic coefficients round-trip through the textual coefficient form.
    SeriesDoc qd;
    qd.series = S("sqrt(2) + 1/3*x - sqrt(2)*x^2 + 2*x^3", X, 5, field_quadratic(2));
    qd.var_names = {"x"};
    SeriesDoc back = parse_series_doc(series_doc_str(qd));
    CHECK(back.series == qd.series);
    // Fourier-flagged documents keep negative exponents.
    SeriesDoc fd;
    TruncatedSeries f(1, 4, field_rational());
    f.set_coeff(Multidegree{{-2}}, Q(5));
    f.set_coeff(Multidegree{{1}}, Q(-1, 2));
    fd.series = f;
    fd.var_names = {"q"};
    fd.allow_negative = {true};
    SeriesDoc fback = parse_series_doc(series_doc_str(fd));
    CHECK(fback.series == fd.series);
}
