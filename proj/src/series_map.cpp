#include "jetnf/series_map.hpp"

#include <algorithm>

#include "jetnf/linalg.hpp"

namespace jetnf {

SeriesMap::SeriesMap(std::vector<TruncatedSeries> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw input_error("empty series map");
    int n = static_cast<int>(components_.size());
    for (const auto& c : components_) {
        if (c.nvars() != n) throw math_error("series map arity mismatch");
        components_[0].with_field_check(c);
        if (!c.coeff(Multidegree::zero(n)).is_zero())
            throw math_error("series map component has a nonzero constant term");
    }
}

SeriesMap SeriesMap::identity(int nvars, int order, const FieldSpec& fs) {
    std::vector<TruncatedSeries> comps;
    comps.reserve(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i)
        comps.push_back(TruncatedSeries::variable(i, nvars, order, fs));
    return SeriesMap(std::move(comps));
}

int SeriesMap::order() const {
    int o = components_[0].order();
    for (const auto& c : components_) o = std::min(o, c.order());
    return o;
}

bool SeriesMap::is_identity() const {
    int n = nvars();
    for (int i = 0; i < n; ++i) {
        const auto& t = components_[static_cast<size_t>(i)].terms();
        if (t.size() != 1) return false;
        if (!(t.begin()->first == Multidegree::unit(n, i))) return false;
        if (!t.begin()->second.is_one()) return false;
    }
    return true;
}

namespace {

// Horner accumulation over variable k: f = sum_e x_k^e f_e(x_{k+1},...),
// where the incoming term map has zero exponents below k. The accumulator
// lives in the image ring.
TruncatedSeries compose_rec(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images,
                            int k, int order) {
    int n = f.nvars();
    int out_n = images[0].nvars();
    const FieldSpec& fs = f.field();
    if (f.is_zero()) return TruncatedSeries::zero(out_n, order, fs);
    if (k == n) {
        return TruncatedSeries::constant(f.coeff(Multidegree::zero(n)), out_n, order);
    }
    // Slice by the exponent of variable k.
    std::map<int, TruncatedSeries> slices;
    for (const auto& [m, c] : f.terms()) {
        int e = m[k];
        auto it = slices.find(e);
        if (it == slices.end())
            it = slices.emplace(e, TruncatedSeries::zero(n, f.order(), fs)).first;
        it->second.set_coeff(m.with(k, 0), c);
    }
    int emax = slices.rbegin()->first;
    TruncatedSeries acc = TruncatedSeries::zero(out_n, order, fs);
    for (int e = emax; e >= 0; --e) {
        if (e < emax) acc = mul_to(acc, images[static_cast<size_t>(k)], order);
        auto it = slices.find(e);
        if (it != slices.end())
            acc = acc + compose_rec(it->second, images, k + 1, order);
    }
    return acc;
}

}  // namespace

TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images) {
    if (static_cast<int>(images.size()) != f.nvars())
        throw math_error("substitute: one image per variable required");
    int order = f.order();
    for (const auto& img : images) {
        f.with_field_check(TruncatedSeries::zero(f.nvars(), 0, img.field()));
        if (img.nvars() != images[0].nvars())
            throw math_error("substitute: images live in different rings");
        if (!img.coeff(Multidegree::zero(img.nvars())).is_zero())
            throw math_error("substitute: image has a nonzero constant term");
        order = std::min(order, img.order());
    }
    return compose_rec(f, images, 0, order);
}

TruncatedSeries compose(const TruncatedSeries& f, const SeriesMap& phi) {
    if (f.nvars() != phi.nvars()) throw math_error("compose: variable-count mismatch");
    f.with_field_check(phi.component(0));
    return substitute(f, phi.components());
}

TruncatedSeries embed(const TruncatedSeries& f, int new_nvars, const std::vector<int>& var_map) {
    if (static_cast<int>(var_map.size()) != f.nvars())
        throw input_error("embed: var_map size mismatch");
    TruncatedSeries r(new_nvars, f.order(), f.field());
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> e(static_cast<size_t>(new_nvars), 0);
        for (int i = 0; i < f.nvars(); ++i) e[static_cast<size_t>(var_map[static_cast<size_t>(i)])] = m[i];
        r.set_coeff(Multidegree(std::move(e)), c);
    }
    return r;
}

SeriesMap compose_maps(const SeriesMap& phi, const SeriesMap& psi) {
    std::vector<TruncatedSeries> comps;
    comps.reserve(static_cast<size_t>(phi.nvars()));
    for (int i = 0; i < phi.nvars(); ++i) comps.push_back(compose(phi.component(i), psi));
    return SeriesMap(std::move(comps));
}

std::vector<std::vector<Coeff>> linear_part(const SeriesMap& phi) {
    int n = phi.nvars();
    CoeffMatrix L(static_cast<size_t>(n), CoeffRow(static_cast<size_t>(n), Coeff::zero(phi.field())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            L[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                phi.component(i).coeff(Multidegree::unit(n, j));
    return L;
}

SeriesMap invert_map(const SeriesMap& phi) {
    int n = phi.nvars();
    int order = phi.order();
    const FieldSpec& fs = phi.field();
    CoeffMatrix L = linear_part(phi);
    CoeffMatrix Linv;
    try {
        Linv = invert_matrix(L, fs);
    } catch (const math_error&) {
        throw math_error("not invertible: singular linear part");
    }
    // psi = L^{-1}(id - N(psi)) with N = phi - L (valuation >= 2); each pass
    // fixes one more degree, so `order` passes reach the truncation order.
    std::vector<TruncatedSeries> nonlinear;
    for (int i = 0; i < n; ++i) {
        TruncatedSeries ni = phi.component(i);
        for (int j = 0; j < n; ++j) {
            Multidegree u = Multidegree::unit(n, j);
            ni.set_coeff(u, ni.coeff(u) - L[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
        nonlinear.push_back(ni);
    }
    auto linv_apply = [&](const std::vector<TruncatedSeries>& v) {
        std::vector<TruncatedSeries> out;
        out.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            TruncatedSeries s = TruncatedSeries::zero(n, order, fs);
            for (int j = 0; j < n; ++j)
                s = s + v[static_cast<size_t>(j)].scaled(
                            Linv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            out.push_back(s.truncated(order));
        }
        return out;
    };
    std::vector<TruncatedSeries> id_comps;
    for (int i = 0; i < n; ++i) id_comps.push_back(TruncatedSeries::variable(i, n, order, fs));
    SeriesMap psi(linv_apply(id_comps));
    for (int pass = 1; pass < order; ++pass) {
        std::vector<TruncatedSeries> rhs;
        rhs.reserve(static_cast<size_t>(n));
        bool stable = true;
        for (int j = 0; j < n; ++j)
            rhs.push_back(id_comps[static_cast<size_t>(j)] -
                          compose(nonlinear[static_cast<size_t>(j)], psi).truncated(order));
        SeriesMap next(linv_apply(rhs));
        stable = next == psi;
        psi = std::move(next);
        if (stable) break;
    }
    return psi;
}

}  // namespace jetnf
