#include "jetnf/weierstrass.hpp"

#include <algorithm>
#include <cmath>

namespace jetnf {

namespace {

// Terms with y-exponent >= d, shifted down by y^d.
TruncatedSeries shift_down_y(const TruncatedSeries& f, int y_index, int d) {
    TruncatedSeries r(f.nvars(), f.order(), f.field());
    for (const auto& [m, c] : f.terms())
        if (m[y_index] >= d) r.set_coeff(m.with(y_index, m[y_index] - d), c);
    return r;
}

TruncatedSeries low_y_part(const TruncatedSeries& f, int y_index, int d) {
    TruncatedSeries r(f.nvars(), f.order(), f.field());
    for (const auto& [m, c] : f.terms())
        if (m[y_index] < d) r.set_coeff(m, c);
    return r;
}

}  // namespace

TruncatedSeries WeierstrassPolynomial::as_series(int order) const {
    TruncatedSeries g(nvars, order, field);
    Multidegree lead = Multidegree::zero(nvars).with(y_index, degree);
    g.set_coeff(lead, Coeff::one(field));
    for (int i = 1; i <= degree; ++i) {
        const TruncatedSeries& ai = coeffs[static_cast<size_t>(i - 1)];
        for (const auto& [m, c] : ai.terms()) g.add_term(m.with(y_index, degree - i), c);
    }
    return g;
}

WeierstrassPolynomial make_weierstrass(int degree, int y_index, int nvars, const FieldSpec& fs,
                                       std::vector<TruncatedSeries> coeffs) {
    if (degree < 0 || static_cast<int>(coeffs.size()) != degree)
        throw input_error("Weierstrass polynomial needs exactly d coefficients");
    WeierstrassPolynomial g;
    g.degree = degree;
    g.y_index = y_index;
    g.nvars = nvars;
    g.field = fs;
    g.coeffs = std::move(coeffs);
    for (const auto& a : g.coeffs) {
        if (!a.coeff(Multidegree::zero(a.nvars())).is_zero())
            throw math_error("Weierstrass coefficient does not vanish at the origin");
        for (const auto& [m, c] : a.terms())
            if (m[y_index] != 0)
                throw math_error("Weierstrass coefficient depends on the distinguished variable");
    }
    return g;
}

std::optional<int> y_general_order(const TruncatedSeries& f, int y_index) {
    std::optional<int> best;
    for (const auto& [m, c] : f.terms()) {
        bool pure = true;
        for (int i = 0; i < f.nvars(); ++i)
            if (i != y_index && m[i] != 0) pure = false;
        if (!pure) continue;
        int e = m[y_index];
        if (!best || e < *best) best = e;
    }
    return best;
}

DivisionResult wdiv(const TruncatedSeries& f, const WeierstrassPolynomial& g, int N) {
    const FieldSpec& fs = f.field();
    int y = g.y_index;
    if (g.degree == 0)
        return {f.truncated(N), TruncatedSeries::zero(f.nvars(), N, fs)};
    // Work d orders above the window so that the monic head cannot push
    // quotient tail terms out of sight: the result is the exact jet of the
    // division of the polynomial truncation of f.
    int Nw = N + g.degree;
    TruncatedSeries fj = f.truncated(N).truncated(Nw);
    TruncatedSeries G = g.as_series(Nw);
    // g = y^d - h with the coefficients of h in the maximal ideal of R'.
    Multidegree lead = Multidegree::zero(fj.nvars()).with(y, g.degree);
    TruncatedSeries h = TruncatedSeries::monomial(lead, Coeff::one(fs), Nw) - G;
    TruncatedSeries q = TruncatedSeries::zero(fj.nvars(), Nw, fs);
    for (int pass = 0; pass <= Nw + 1; ++pass) {
        TruncatedSeries next = shift_down_y(fj + mul_to(q, h, Nw), y, g.degree);
        if (next.same_terms(q)) break;
        if (pass == Nw + 1) throw math_error("wdiv: fixed point did not stabilize (internal)");
        q = next;
    }
    TruncatedSeries r = fj - mul_to(q, G, Nw);
    for (const auto& [m, c] : r.terms())
        if (m[y] >= g.degree) throw math_error("wdiv: remainder degree too high (internal)");
    return {q.truncated(N), r.truncated(N)};
}

PreparationResult wprep(const TruncatedSeries& f, int y_index, int N) {
    const FieldSpec& fs = f.field();
    int n = f.nvars();
    auto dopt = y_general_order(f.truncated(N), y_index);
    if (!dopt)
        throw math_error("wprep: not y-general within truncation");
    int d = *dopt;
    // Same padding policy as wdiv: the input is read as its polynomial jet
    // and the factorization is that polynomial's exact preparation, so the
    // slice solve below always has full window precision.
    int Nw = N + d;
    TruncatedSeries fj = f.truncated(N).truncated(Nw);

    // Slices: x'-multidegree (y-exponent zeroed) -> 1-variable y-series.
    // Every slice is kept to its full window N_w - |A|; the tail beyond the
    // input data is the zero tail of the polynomial jet.
    auto slices_of = [&](const TruncatedSeries& s) {
        std::map<Multidegree, TruncatedSeries, GrlexLess> out;
        for (const auto& [m, c] : s.terms()) {
            Multidegree xs = m.with(y_index, 0);
            auto it = out.find(xs);
            if (it == out.end())
                it = out.emplace(xs, TruncatedSeries::zero(1, Nw - xs.total(), fs)).first;
            it->second.set_coeff(Multidegree{{m[y_index]}}, c);
        }
        return out;
    };
    auto fsl = slices_of(fj);

    Multidegree zero_x = Multidegree::zero(n);
    auto it0 = fsl.find(zero_x);
    if (it0 == fsl.end()) throw math_error("wprep: not y-general within truncation");
    // u(0, y) = f(0, y) / y^d: a unit in y alone, exact for the jet.
    TruncatedSeries u0(1, Nw, fs);
    for (const auto& [m, c] : it0->second.terms()) {
        if (m[0] < d) throw math_error("wprep: y-order dropped below d (internal)");
        u0.set_coeff(Multidegree{{m[0] - d}}, c);
    }
    TruncatedSeries u0inv = u0.unit_inverse();

    std::map<Multidegree, TruncatedSeries, GrlexLess> u_slices;  // y-series per x'-degree
    std::map<Multidegree, TruncatedSeries, GrlexLess> g_slices;  // y-polys deg < d
    u_slices.emplace(zero_x, u0);

    for (const auto& A : monomials_up_to(n, Nw)) {
        if (A.total() == 0) continue;
        if (A[y_index] != 0) continue;
        int ylim = Nw - A.total();
        // RHS_A = f_A - sum_{B + C = A, B != A, C != 0} u_B g_C.
        TruncatedSeries rhs = TruncatedSeries::zero(1, ylim, fs);
        auto fit = fsl.find(A);
        if (fit != fsl.end()) rhs = rhs + fit->second.truncated(ylim);
        for (const auto& [B, uB] : u_slices) {
            if (B == A) continue;
            Multidegree C = A.minus(B);
            if (!C.all_nonnegative() || C.total() == 0) continue;
            auto git = g_slices.find(C);
            if (git == g_slices.end()) continue;
            rhs = rhs - mul_to(uB, git->second, ylim).truncated(ylim);
        }
        if (rhs.is_zero()) continue;
        // w = u0^{-1} rhs = (u0^{-1} u_A) y^d + g_A over the window.
        TruncatedSeries w = mul_to(u0inv, rhs, ylim);
        TruncatedSeries gA(1, ylim, fs);
        for (const auto& [m, c] : w.terms())
            if (m[0] < d) gA.set_coeff(m, c);
        TruncatedSeries shifted(1, std::max(ylim - d, 0), fs);
        for (const auto& [m, c] : w.terms())
            if (m[0] >= d) shifted.set_coeff(Multidegree{{m[0] - d}}, c);
        // The y-range above ylim - d is not pinned by this slice; keeping
        // the product inside that range makes the window output the exact
        // jet of the canonical factorization (the padding absorbs the rest).
        TruncatedSeries uA = mul_to(u0, shifted, shifted.order());
        if (!gA.is_zero()) g_slices.emplace(A, gA);
        if (!uA.is_zero()) u_slices.emplace(A, uA);
    }

    // Assemble the unit and the coefficients a_i in the full ring, cut back
    // to the requested order.
    TruncatedSeries unit(n, N, fs);
    for (const auto& [A, uy] : u_slices)
        for (const auto& [m, c] : uy.terms()) unit.add_term(A.with(y_index, m[0]), c);
    std::vector<TruncatedSeries> as(static_cast<size_t>(d), TruncatedSeries::zero(n, N, fs));
    for (const auto& [A, gy] : g_slices) {
        for (const auto& [m, c] : gy.terms()) {
            int i = d - m[0];  // coefficient of y^{d-i}
            as[static_cast<size_t>(i - 1)].add_term(A, c);
        }
    }
    PreparationResult out{unit, make_weierstrass(d, y_index, n, fs, std::move(as))};
    // The triangular solve is re-verified multiplicatively.
    TruncatedSeries check = mul_to(out.unit, out.poly.as_series(N), N);
    if (!check.same_terms(f.truncated(N)))
        throw math_error("wprep: verification u*g = f failed (internal)");
    return out;
}

namespace {

template <typename T, typename MakeScalar>
std::vector<T> newton_sigma_impl(const std::vector<T>& p, MakeScalar from_int) {
    std::vector<T> sigma;
    sigma.reserve(p.size());
    for (size_t k = 1; k <= p.size(); ++k) {
        T acc = from_int(0);
        int sign = 1;
        for (size_t i = 1; i <= k; ++i) {
            T prev = (i == k) ? from_int(1) : sigma[k - i - 1];
            T term = prev * p[i - 1];
            acc = (sign > 0) ? acc + term : acc - term;
            sign = -sign;
        }
        sigma.push_back(acc / from_int(static_cast<long long>(k)));
    }
    return sigma;
}

}  // namespace

std::vector<Coeff> newton_sigma(const std::vector<Coeff>& power_sums) {
    if (power_sums.empty()) return {};
    FieldSpec fs = power_sums[0].field();
    return newton_sigma_impl(power_sums,
                             [&](long long v) { return Coeff::integer(v, fs); });
}

std::vector<std::complex<double>> newton_sigma(const std::vector<std::complex<double>>& p) {
    return newton_sigma_impl(
        p, [](long long v) { return std::complex<double>(static_cast<double>(v), 0.0); });
}

std::complex<double> eval_series(const TruncatedSeries& f,
                                 const std::vector<std::complex<double>>& point) {
    if (static_cast<int>(point.size()) != f.nvars())
        throw input_error("eval_series: point arity mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [m, c] : f.terms()) {
        std::complex<double> term = c.to_complex();
        for (int i = 0; i < f.nvars(); ++i) {
            for (int e = 0; e < m[i]; ++e) term *= point[static_cast<size_t>(i)];
            if (m[i] < 0) throw input_error("eval_series: negative exponent");
        }
        acc += term;
    }
    return acc;
}

std::vector<std::complex<double>> contour_power_sums(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const std::function<std::complex<double>(std::complex<double>)>& dfdy, int d,
    double radius, int nodes) {
    if (nodes < 16) throw input_error("contour_power_sums: need at least 16 nodes");
    if (radius <= 0) throw input_error("contour_power_sums: radius must be positive");
    // I_k = (1/2 pi i) oint y^k f'/f dy = (1/nodes) sum_j y_j^{k+1} (f'/f)(y_j).
    std::vector<std::complex<double>> I(static_cast<size_t>(d) + 1, {0.0, 0.0});
    const double two_pi = 6.283185307179586476925286766559;
    for (int j = 0; j < nodes; ++j) {
        double th = two_pi * j / nodes;
        std::complex<double> y{radius * std::cos(th), radius * std::sin(th)};
        std::complex<double> fv = f(y);
        if (std::abs(fv) == 0.0)
            throw math_error("contour_power_sums: root on the contour");
        std::complex<double> logd = dfdy(y) / fv;
        std::complex<double> yk{1.0, 0.0};
        for (int k = 0; k <= d; ++k) {
            I[static_cast<size_t>(k)] += yk * y * logd;
            yk *= y;
        }
    }
    for (auto& v : I) v /= static_cast<double>(nodes);
    double i0 = I[0].real();
    double rounded = std::round(i0);
    if (std::abs(I[0] - std::complex<double>(rounded, 0.0)) > 1e-6)
        throw math_error("contour_power_sums: contour misplaced (I0 = " + double_str(i0) + ")");
    if (static_cast<int>(rounded) != d)
        throw math_error("contour_power_sums: contour encloses " +
                         std::to_string(static_cast<int>(rounded)) + " roots, expected " +
                         std::to_string(d));
    return std::vector<std::complex<double>>(I.begin() + 1, I.end());
}

std::vector<std::complex<double>> contour_power_sums(const TruncatedSeries& f, int y_index,
                                                     const std::vector<std::complex<double>>& x0,
                                                     int d, double radius, int nodes) {
    if (static_cast<int>(x0.size()) != f.nvars() - 1)
        throw input_error("contour_power_sums: x-point arity mismatch");
    TruncatedSeries fy = f.derivative(y_index).truncated(f.order());
    auto section = [&](const TruncatedSeries& s) {
        return [&, s](std::complex<double> y) {
            std::vector<std::complex<double>> pt;
            size_t xi = 0;
            for (int i = 0; i < s.nvars(); ++i)
                pt.push_back(i == y_index ? y : x0[xi++]);
            return eval_series(s, pt);
        };
    };
    return contour_power_sums(section(f), section(fy), d, radius, nodes);
}

std::vector<NumericPrepSample> wprep_numeric(
    const TruncatedSeries& f, int y_index, int d,
    const std::vector<std::vector<std::complex<double>>>& grid, double radius, int nodes) {
    std::vector<NumericPrepSample> out;
    out.reserve(grid.size());
    for (const auto& x : grid) {
        auto I = contour_power_sums(f, y_index, x, d, radius, nodes);
        NumericPrepSample s;
        s.x = x;
        s.J = newton_sigma(I);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace jetnf
