#include "jetnf/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace jetnf {

Coeff eigenvalue(const Spectrum& s, const Multidegree& I, int i) {
    if (!I.all_nonnegative()) throw input_error("eigenvalue: multidegree must be nonnegative");
    if (I.nvars() != s.n()) throw input_error("eigenvalue: arity mismatch");
    Coeff acc = s.lambda.at(static_cast<size_t>(i));
    for (int j = 0; j < s.n(); ++j) {
        if (I[j] == 0) continue;
        acc = acc - s.lambda[static_cast<size_t>(j)] * Coeff::integer(I[j], s.field());
    }
    return acc;
}

DivisorClass classify_divisor(const Spectrum& s, const Coeff& eig) {
    if (s.exact()) return eig.is_zero() ? DivisorClass::Resonant : DivisorClass::Safe;
    double a = eig.abs_approx();
    if (a <= s.eps_zero) return DivisorClass::Resonant;
    if (a >= s.eps_safe) return DivisorClass::Safe;
    throw math_error("near-resonance below tolerance: |divisor| = " + double_str(a) +
                     " lies between eps_zero and eps_safe");
}

std::string domain_str(DomainTag t) {
    switch (t) {
        case DomainTag::Poincare: return "poincare";
        case DomainTag::Siegel: return "siegel";
        case DomainTag::Boundary: return "boundary";
    }
    return "?";
}

namespace {

// Exact real number u + v sqrt(D) with fixed D >= 0; the plane embedding of
// every spectrum entry lives in one such field.
struct QuadReal {
    Rational u{};
    Rational v{};
    long long D = 0;

    int sign() const { return quadreal_sign(u, v, D); }
    bool is_zero() const { return u.is_zero() && v.is_zero(); }
    QuadReal operator+(const QuadReal& o) const { return {u + o.u, v + o.v, D}; }
    QuadReal operator-(const QuadReal& o) const { return {u - o.u, v - o.v, D}; }
    QuadReal operator*(const QuadReal& o) const {
        return {u * o.u + v * o.v * D, u * o.v + v * o.u, D};
    }
    double approx() const {
        return u.convert_to<double>() +
               v.convert_to<double>() * std::sqrt(static_cast<double>(D));
    }
    std::string str() const {
        if (v.is_zero()) return rational_str(u);
        std::string out = u.is_zero() ? "" : rational_str(u) + "+";
        if (v != 1) out += rational_str(v) + "*";
        return out + "sqrt(" + std::to_string(D) + ")";
    }
};

struct PlanePoint {
    QuadReal x, y;
};

// Embed the spectrum into the plane over Q(sqrt D): real quadratics lie on
// the real axis, imaginary ones split into (rational, rational*sqrt|d|).
std::vector<PlanePoint> embed_exact(const Spectrum& s, long long& D_out) {
    long long d = s.field().kind == FieldKind::Quadratic ? s.field().d : 0;
    long long D = d > 0 ? d : (d < 0 ? -d : 0);
    D_out = D;
    std::vector<PlanePoint> pts;
    for (const auto& c : s.lambda) {
        PlanePoint p{{Rational(0), Rational(0), D}, {Rational(0), Rational(0), D}};
        if (s.field().kind == FieldKind::Rational) {
            p.x.u = c.rat_part();
        } else if (d > 0) {
            p.x.u = c.rat_part();
            p.x.v = c.quad_part();
        } else {
            p.x.u = c.rat_part();
            p.y.v = c.quad_part();
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

QuadReal dot(const PlanePoint& a, const PlanePoint& b) { return a.x * b.x + a.y * b.y; }

// Candidate separating directions: the points themselves plus the normals
// of every segment between two points (the nearest hull point to the origin
// is a vertex or lies on an edge).
std::vector<PlanePoint> candidate_directions(const std::vector<PlanePoint>& pts) {
    std::vector<PlanePoint> out = pts;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            PlanePoint e{pts[j].x - pts[i].x, pts[j].y - pts[i].y};
            PlanePoint n1{QuadReal{} - e.y, e.x};
            PlanePoint n2{e.y, QuadReal{} - e.x};
            n1.x.D = n1.y.D = n2.x.D = n2.y.D = pts[i].x.D;
            out.push_back(n1);
            out.push_back(n2);
        }
    }
    return out;
}

struct DirectionScore {
    bool feasible = false;   // all dots strictly positive
    QuadReal min_dot, max_dot, norm2;
};

DirectionScore score_direction(const PlanePoint& u, const std::vector<PlanePoint>& pts) {
    DirectionScore sc;
    if ((u.x.is_zero() && u.y.is_zero())) return sc;
    sc.feasible = true;
    bool first = true;
    for (const auto& p : pts) {
        QuadReal d = dot(u, p);
        if (d.sign() <= 0) { sc.feasible = false; return sc; }
        if (first) {
            sc.min_dot = sc.max_dot = d;
            first = false;
        } else {
            if ((d - sc.min_dot).sign() < 0) sc.min_dot = d;
            if ((d - sc.max_dot).sign() > 0) sc.max_dot = d;
        }
    }
    sc.norm2 = dot(u, u);
    return sc;
}

}  // namespace

DomainTag is_poincare_domain(const Spectrum& s) {
    if (s.n() < 1) throw input_error("empty spectrum");
    if (s.exact()) {
        long long D;
        auto pts = embed_exact(s, D);
        for (const auto& p : pts)
            if (p.x.is_zero() && p.y.is_zero()) return DomainTag::Siegel;
        for (const auto& u : candidate_directions(pts))
            if (score_direction(u, pts).feasible) return DomainTag::Poincare;
        return DomainTag::Siegel;
    }
    // Float spectra: same candidate search with an eps margin.
    std::vector<std::pair<double, double>> pts;
    for (const auto& c : s.lambda) {
        auto z = c.to_complex();
        pts.emplace_back(z.real(), z.imag());
    }
    std::vector<std::pair<double, double>> cands = pts;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double ex = pts[j].first - pts[i].first, ey = pts[j].second - pts[i].second;
            cands.emplace_back(-ey, ex);
            cands.emplace_back(ey, -ex);
        }
    double best = -1e300;
    for (const auto& [ux, uy] : cands) {
        double nrm = std::hypot(ux, uy);
        if (nrm == 0.0) continue;
        double mn = 1e300;
        for (const auto& [px, py] : pts) mn = std::min(mn, (ux * px + uy * py) / nrm);
        best = std::max(best, mn);
    }
    if (best > s.eps_safe) return DomainTag::Poincare;
    if (best < -s.eps_safe) return DomainTag::Siegel;
    return DomainTag::Boundary;
}

PoincareBound poincare_bound(const Spectrum& s) {
    if (is_poincare_domain(s) != DomainTag::Poincare)
        throw math_error("poincare_bound: spectrum is not in the Poincare domain");
    if (!s.exact()) {
        // Float fallback: numeric candidate search.
        std::vector<std::pair<double, double>> pts;
        for (const auto& c : s.lambda) {
            auto z = c.to_complex();
            pts.emplace_back(z.real(), z.imag());
        }
        std::vector<std::pair<double, double>> cands = pts;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                double ex = pts[j].first - pts[i].first, ey = pts[j].second - pts[i].second;
                cands.emplace_back(-ey, ex);
                cands.emplace_back(ey, -ex);
            }
        double bestmin = -1.0, ratio = 0.0;
        for (const auto& [ux, uy] : cands) {
            double nrm = std::hypot(ux, uy);
            if (nrm == 0.0) continue;
            double mn = 1e300, mx = -1e300;
            for (const auto& [px, py] : pts) {
                double dp = (ux * px + uy * py) / nrm;
                mn = std::min(mn, dp);
                mx = std::max(mx, dp);
            }
            if (mn > 0 && mn > bestmin) { bestmin = mn; ratio = mx / mn; }
        }
        PoincareBound out;
        out.value = ratio;
        out.ceil_bound = static_cast<int>(std::ceil(ratio - 1e-9));
        out.exact_text = double_str(ratio);
        return out;
    }
    long long D;
    auto pts = embed_exact(s, D);
    auto cands = candidate_directions(pts);
    // Pick the candidate maximizing min_dot / |u| (compare squares exactly);
    // first maximizer wins.
    bool have = false;
    DirectionScore best;
    for (const auto& u : cands) {
        DirectionScore sc = score_direction(u, pts);
        if (!sc.feasible) continue;
        if (!have) { best = sc; have = true; continue; }
        // sc > best iff sc.min^2 * best.norm2 > best.min^2 * sc.norm2.
        QuadReal lhs = sc.min_dot * sc.min_dot * best.norm2;
        QuadReal rhs = best.min_dot * best.min_dot * sc.norm2;
        if ((lhs - rhs).sign() > 0) best = sc;
    }
    if (!have) throw math_error("poincare_bound: no separating direction (internal)");
    PoincareBound out;
    out.value = best.max_dot.approx() / best.min_dot.approx();
    out.exact_text = "(" + best.max_dot.str() + ")/(" + best.min_dot.str() + ")";
    // Exact ceiling: least integer c with c * m - M >= 0.
    int c = std::max(1, static_cast<int>(std::floor(out.value)) - 2);
    while (true) {
        QuadReal lhs = best.min_dot;
        Rational cc(c);
        QuadReal scaled{lhs.u * cc, lhs.v * cc, lhs.D};
        if ((scaled - best.max_dot).sign() >= 0) break;
        ++c;
        if (c > 1000000) throw math_error("poincare_bound: runaway ceiling (internal)");
    }
    out.ceil_bound = c;
    return out;
}

ResonanceReport resonant_monomials(const Spectrum& s, int d_max) {
    if (d_max < 2) throw input_error("resonant_monomials: d_max must be >= 2");
    ResonanceReport rep;
    rep.domain = is_poincare_domain(s);
    rep.search_bound = d_max;
    if (!s.exact()) rep.eps_zero = s.eps_zero;
    for (int d = 2; d <= d_max; ++d) {
        for (int i = 0; i < s.n(); ++i) {
            for (const auto& I : monomials_of_degree(s.n(), d)) {
                Coeff eig = eigenvalue(s, I, i);
                bool zero = s.exact() ? eig.is_zero() : eig.abs_approx() <= s.eps_zero;
                if (zero) rep.monomials.push_back({I, i});
            }
        }
    }
    if (rep.domain == DomainTag::Poincare) {
        PoincareBound b = poincare_bound(s);
        rep.certified_complete = d_max >= b.ceil_bound;
    }
    return rep;
}

SiegelResult siegel_check(const Spectrum& s, double C, double k, int d_max) {
    SiegelResult res;
    res.holds = true;
    bool have_best = false;
    bool have_violation = false;
    for (int d = 2; d <= d_max; ++d) {
        double dk = std::pow(static_cast<double>(d), k);
        for (int i = 0; i < s.n(); ++i) {
            for (const auto& I : monomials_of_degree(s.n(), d)) {
                Coeff eig = eigenvalue(s, I, i);
                bool zero = s.exact() ? eig.is_zero() : eig.abs_approx() <= s.eps_zero;
                double a = eig.abs_approx();
                if (zero) {
                    if (!res.exact_zero) {
                        res.exact_zero = true;
                        res.holds = false;
                        res.violation = {I, i};
                        res.violation_value = 0.0;
                    }
                    res.best_constant = 0.0;
                    res.best_at = {I, i};
                    return res;
                }
                double scaled = a * dk;
                if (!have_best || scaled < res.best_constant) {
                    res.best_constant = scaled;
                    res.best_at = {I, i};
                    have_best = true;
                }
                if (!have_violation && a < C / dk) {
                    have_violation = true;
                    res.holds = false;
                    res.violation = {I, i};
                    res.violation_value = a;
                }
            }
        }
    }
    return res;
}

std::vector<std::pair<int, double>> divisor_statistics(const Spectrum& s, int d_max) {
    std::vector<std::pair<int, double>> table;
    for (int d = 2; d <= d_max; ++d) {
        double mn = 1e300;
        for (const auto& I : monomials_of_degree(s.n(), d))
            for (int i = 0; i < s.n(); ++i) {
                Coeff eig = eigenvalue(s, I, i);
                mn = std::min(mn, eig.is_zero() ? 0.0 : eig.abs_approx());
            }
        table.emplace_back(d, mn);
    }
    return table;
}

}  // namespace jetnf
