#ifndef JETNF_TEST_UTIL_HPP
#define JETNF_TEST_UTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "jetnf/parser.hpp"
#include "jetnf/series.hpp"

namespace jetnf::testutil {

// Parse an expression over an explicit variable list at the given order.
inline TruncatedSeries S(const std::string& expr, const std::vector<std::string>& vars,
                         int order, FieldSpec fs = field_rational()) {
    ParseOptions opts;
    opts.field = fs;
    opts.order = order;
    opts.var_names = vars;
    return parse_series(expr, opts).series;
}

inline Coeff Q(long long num, long long den = 1) {
    return Coeff::rational(Rational(BigInt(num), BigInt(den)));
}

// Small random rational in [-max..max]/{1..3}, never "ugly".
inline Coeff random_rational(std::mt19937& rng, int max_num = 5) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, 3);
    return Coeff::rational(Rational(num(rng), den(rng)));
}

// Random series with terms of total degree in [min_deg, max_deg].
inline TruncatedSeries random_series(std::mt19937& rng, int nvars, int order, int min_deg,
                                     int max_deg, int nterms = 6,
                                     FieldSpec fs = field_rational()) {
    TruncatedSeries f(nvars, order, fs);
    auto monos = monomials_up_to(nvars, std::min(max_deg, order));
    std::vector<Multidegree> pool;
    for (const auto& m : monos)
        if (m.total() >= min_deg) pool.push_back(m);
    if (pool.empty()) return f;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < nterms; ++t) {
        Coeff c = random_rational(rng);
        if (fs.kind == FieldKind::Quadratic)
            c = Coeff::quadratic(c.rat_part(), Rational(0), fs.d);
        const Multidegree& m = pool[pick(rng)];
        f.set_coeff(m, f.coeff(m) + c);
    }
    return f;
}

}  // namespace jetnf::testutil

#endif
