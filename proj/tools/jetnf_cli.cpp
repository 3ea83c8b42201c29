// jetnf: truncated-jet normal forms for singularities, vector fields,
// Hamiltonian tori and the Weierstrass kernel. Batch CLI: every subcommand
// reads file/inline inputs, runs one computation and prints a deterministic
// report. Exit codes: 0 success, 1 mathematical refusal, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jetnf/deformation.hpp"
#include "jetnf/determinacy.hpp"
#include "jetnf/parser.hpp"
#include "jetnf/pdnf.hpp"
#include "jetnf/report.hpp"
#include "jetnf/serialize.hpp"
#include "jetnf/singular_torus.hpp"
#include "jetnf/spectrum.hpp"
#include "jetnf/weierstrass.hpp"

using namespace jetnf;

namespace {

struct GlobalOpts {
    int order = 8;
    int fourier = 8;
    int taylor = 3;
    int tparam = 2;
    std::string field = "rat";
    double eps_zero = 1e-12;
    double eps_safe = 1e-9;
    std::string format = "pretty";
    std::string out_path;
    std::vector<std::string> vars;
};

FieldSpec parse_field(const std::string& s) {
    if (s == "rat") return field_rational();
    if (s == "float") return field_complex();
    if (s.rfind("quad:", 0) == 0) return field_quadratic(std::stoll(s.substr(5)));
    throw input_error("unknown field '" + s + "' (expected rat, quad:d or float)");
}

// Inline text, or the contents of a file when prefixed with '@'.
std::string fetch(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw input_error("cannot open input file '" + arg.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SeriesDoc load_series(const std::string& arg, const GlobalOpts& g,
                      const std::vector<bool>& negatives = {}) {
    return read_series_or_expr(fetch(arg), parse_field(g.field), g.order, g.vars, negatives);
}

std::string render_series(const TruncatedSeries& f, const std::vector<std::string>& names,
                          const GlobalOpts& g, const std::vector<bool>& negatives = {}) {
    if (g.format == "doc") {
        SeriesDoc doc{f, names, negatives};
        return series_doc_str(doc);
    }
    return f.str(names) + "\n";
}

void emit(const Report& rep, const GlobalOpts& g) {
    if (g.out_path.empty()) {
        std::cout << rep.str();
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw input_error("cannot open output file '" + g.out_path + "'");
    out << rep.str();
}

void add_header(Report& rep, const GlobalOpts& g) {
    rep.kv("field", g.field);
    rep.kv("order", g.order);
    rep.kv("format", g.format);
    if (g.field == "float") {
        rep.kv("eps_zero", double_str(g.eps_zero));
        rep.kv("eps_safe", double_str(g.eps_safe));
    }
}

std::vector<Coeff> parse_coeff_list(const std::string& text, const FieldSpec& fs) {
    std::vector<Coeff> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) {
        ParseOptions po;
        po.field = fs;
        po.order = 0;
        po.var_names = {"__none"};
        out.push_back(parse_series(cur, po).series.coeff(Multidegree::zero(1)));
    }
    if (out.empty()) throw input_error("empty list '" + text + "'");
    return out;
}

Spectrum parse_spectrum(const std::string& text, const GlobalOpts& g) {
    Spectrum s;
    s.lambda = parse_coeff_list(text, parse_field(g.field));
    s.eps_zero = g.eps_zero;
    s.eps_safe = g.eps_safe;
    return s;
}

FrequencyVector parse_freq(const std::string& text, const GlobalOpts& g) {
    FrequencyVector w;
    w.omega = parse_coeff_list(text, parse_field(g.field));
    w.eps_safe = g.eps_safe;
    return w;
}

// Semicolon-separated component list for maps and derivations, sharing one
// variable set.
std::vector<TruncatedSeries> parse_components(const std::string& text, const GlobalOpts& g) {
    std::string body = fetch(text);
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(body);
    while (std::getline(is, cur, ';')) parts.push_back(cur);
    if (parts.empty()) throw input_error("empty component list");
    std::vector<std::string> names = g.vars;
    if (names.empty()) {
        for (const auto& p : parts) {
            ParseOptions po;
            po.field = parse_field(g.field);
            po.order = g.order;
            auto parsed = parse_series(p, po);
            for (const auto& v : parsed.var_names) {
                bool seen = false;
                for (const auto& w : names) seen = seen || w == v;
                if (!seen) names.push_back(v);
            }
        }
    }
    std::vector<TruncatedSeries> comps;
    for (const auto& p : parts) {
        ParseOptions po;
        po.field = parse_field(g.field);
        po.order = g.order;
        po.var_names = names;
        comps.push_back(parse_series(p, po).series);
    }
    return comps;
}

std::vector<std::string> component_names(const std::string& text, const GlobalOpts& g) {
    if (!g.vars.empty()) return g.vars;
    std::string body = fetch(text);
    std::vector<std::string> names;
    std::string cur;
    std::istringstream is(body);
    while (std::getline(is, cur, ';')) {
        ParseOptions po;
        po.field = parse_field(g.field);
        po.order = g.order;
        auto parsed = parse_series(cur, po);
        for (const auto& v : parsed.var_names) {
            bool seen = false;
            for (const auto& w : names) seen = seen || w == v;
            if (!seen) names.push_back(v);
        }
    }
    return names;
}

// Fourier-Taylor input: an expression over q1..qn, p1..pn, t with negative
// exponents permitted on the q block.
FourierTaylorSeries parse_ft(const std::string& text, int dof, const GlobalOpts& g) {
    std::vector<std::string> names;
    std::vector<bool> neg;
    for (int i = 1; i <= dof; ++i) {
        names.push_back("q" + std::to_string(i));
        neg.push_back(true);
    }
    for (int i = 1; i <= dof; ++i) {
        names.push_back("p" + std::to_string(i));
        neg.push_back(false);
    }
    names.push_back("t");
    neg.push_back(false);
    SeriesDoc doc =
        read_series_or_expr(fetch(text), parse_field(g.field), g.fourier + g.taylor + g.tparam,
                            names, neg);
    if (doc.series.nvars() != 2 * dof + 1)
        throw input_error("Fourier-Taylor input must use q1..qn, p1..pn, t");
    FourierTaylorSeries out(dof, g.fourier, g.taylor, g.tparam, doc.series.field());
    for (const auto& [m, c] : doc.series.terms()) {
        FTKey k;
        for (int i = 0; i < dof; ++i) k.I.push_back(m[i]);
        for (int i = 0; i < dof; ++i) k.J.push_back(m[dof + i]);
        k.tpow = m[2 * dof];
        out.set_coeff(k, c);
    }
    return out;
}

// Fourier-Taylor values render as series documents over (q, p, t) with the
// q block flagged for negative exponents.
std::string ft_doc_str(const FourierTaylorSeries& f) {
    int n = f.dof();
    TruncatedSeries s(2 * n + 1, f.fourier_cutoff() + f.taylor_cutoff() + f.tparam_cutoff(),
                      f.field());
    std::vector<std::string> names;
    std::vector<bool> neg;
    for (int i = 1; i <= n; ++i) {
        names.push_back("q" + std::to_string(i));
        neg.push_back(true);
    }
    for (int i = 1; i <= n; ++i) {
        names.push_back("p" + std::to_string(i));
        neg.push_back(false);
    }
    names.push_back("t");
    neg.push_back(false);
    for (const auto& [k, c] : f.terms()) {
        std::vector<int> e;
        for (int v : k.I) e.push_back(v);
        for (int v : k.J) e.push_back(v);
        e.push_back(k.tpow);
        s.set_coeff(Multidegree(e), c);
    }
    return series_doc_str(SeriesDoc{s, names, neg});
}

std::string monomial_field_str(const Multidegree& I, int direction, int n) {
    std::vector<std::string> names;
    if (n == 2) {
        names = {"x", "y"};
    } else {
        for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    }
    return I.str(names) + "*d/d" + names[static_cast<size_t>(direction)];
}

std::string exps_str(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

int run_cli(int argc, char** argv) {
    CLI::App app{"truncated-jet normal form engine"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    app.add_option("--order,-N", g.order, "truncation order (total degree)");
    app.add_option("--fourier", g.fourier, "Fourier cutoff K");
    app.add_option("--taylor", g.taylor, "Taylor cutoff M in the actions");
    app.add_option("--tparam", g.tparam, "central parameter cutoff T");
    app.add_option("--field", g.field, "coefficient field: rat | quad:d | float");
    app.add_option("--eps-zero", g.eps_zero, "float mode: |divisor| below this is resonant");
    app.add_option("--eps-safe", g.eps_safe, "float mode: |divisor| above this is safe");
    app.add_option("--format", g.format, "pretty | doc")
        ->check(CLI::IsMember({"pretty", "doc"}));
    app.add_option("--out", g.out_path, "write the report to a file");
    app.add_option("--vars", g.vars, "explicit variable names")->delimiter(',');

    std::string a_expr, b_expr, map_expr, lambda_str, omega_str, op = "add";
    std::string yvar = "y", grid_str;
    int nx = 1, dmax = 12, kmax = 100, wd = 2, nodes = 256, dof = 1;
    double siegel_C = 0.0, siegel_k = 2.0, dio_C = 0.0, dio_tau = 2.0, radius = 1.0;

    auto* parse_cmd = app.add_subcommand("parse", "parse and canonicalize a series");
    parse_cmd->add_option("expr", a_expr, "expression or @file")->required();

    auto* arith_cmd = app.add_subcommand("arith", "series ring arithmetic");
    arith_cmd->add_option("--op", op, "add | sub | mul")
        ->check(CLI::IsMember({"add", "sub", "mul"}));
    arith_cmd->add_option("--lhs", a_expr)->required();
    arith_cmd->add_option("--rhs", b_expr)->required();

    auto* compose_cmd = app.add_subcommand("compose", "substitute a map into a series");
    compose_cmd->add_option("--f", a_expr)->required();
    compose_cmd->add_option("--map", map_expr, "components separated by ';'")->required();

    auto* invert_cmd = app.add_subcommand("invert", "formal inverse of a map");
    invert_cmd->add_option("--map", map_expr)->required();

    auto* milnor_cmd = app.add_subcommand("milnor", "Milnor number and basis");
    milnor_cmd->add_option("expr", a_expr)->required();

    auto* det_cmd = app.add_subcommand("determinacy", "finite determinacy reduction");
    det_cmd->add_option("--f", a_expr)->required();
    det_cmd->add_option("--g", b_expr)->required();

    auto* versal_cmd = app.add_subcommand("versal", "versality criterion");
    versal_cmd->add_option("--F", a_expr)->required();
    versal_cmd->add_option("--nx", nx, "ambient variable count");

    auto* induce_cmd = app.add_subcommand("induce", "inducing map between deformations");
    induce_cmd->add_option("--F", a_expr, "versal deformation")->required();
    induce_cmd->add_option("--G", b_expr, "deformation to induce")->required();
    induce_cmd->add_option("--nx", nx, "ambient variable count");

    auto* rectify_cmd = app.add_subcommand("rectify", "flow-box rectification");
    rectify_cmd->add_option("--v", map_expr, "vector field components ';'")->required();

    auto* pdnf_cmd = app.add_subcommand("pdnf", "Poincare-Dulac normal form");
    pdnf_cmd->add_option("--lambda", lambda_str, "spectrum, comma separated")->required();
    pdnf_cmd->add_option("--w", map_expr, "perturbation components ';'")->required();

    auto* res_cmd = app.add_subcommand("resonances", "resonant monomial catalog");
    res_cmd->add_option("--lambda", lambda_str)->required();
    res_cmd->add_option("--dmax", dmax);

    auto* poin_cmd = app.add_subcommand("poincare", "Poincare/Siegel domain test");
    poin_cmd->add_option("--lambda", lambda_str)->required();

    auto* siegel_cmd = app.add_subcommand("siegel", "Siegel arithmetic condition scan");
    siegel_cmd->add_option("--lambda", lambda_str)->required();
    siegel_cmd->add_option("--C", siegel_C);
    siegel_cmd->add_option("--k", siegel_k);
    siegel_cmd->add_option("--dmax", dmax);

    auto* div_cmd = app.add_subcommand("divisors", "small divisor statistics");
    div_cmd->add_option("--lambda", lambda_str)->required();
    div_cmd->add_option("--dmax", dmax);

    auto* dio_cmd = app.add_subcommand("diophantine", "Diophantine condition scan");
    dio_cmd->add_option("--omega", omega_str)->required();
    dio_cmd->add_option("--C", dio_C);
    dio_cmd->add_option("--tau", dio_tau);
    dio_cmd->add_option("--kmax", kmax);

    auto* hom_cmd = app.add_subcommand("homological", "Hadamard-inverse homological solve");
    hom_cmd->add_option("--omega", omega_str)->required();
    hom_cmd->add_option("--g", a_expr, "zero-average right-hand side")->required();
    hom_cmd->add_option("--dof", dof);

    auto* kol_cmd = app.add_subcommand("kolmogorov", "invariant torus normalization");
    kol_cmd->add_option("--omega", omega_str)->required();
    kol_cmd->add_option("--H", a_expr, "Hamiltonian in p only")->required();
    kol_cmd->add_option("--R", b_expr, "perturbation")->required();
    kol_cmd->add_option("--dof", dof);
    kol_cmd->add_option("--dio-C", dio_C, "Diophantine constant for the witness");
    kol_cmd->add_option("--dio-tau", dio_tau);
    kol_cmd->add_option("--dio-kmax", kmax);

    auto* st_cmd = app.add_subcommand("singular-torus", "singular torus normalization");
    st_cmd->add_option("--omega", omega_str)->required();
    st_cmd->add_option("--R", b_expr, "perturbation of valuation >= 3")->required();
    st_cmd->add_option("--dof", dof);
    st_cmd->add_option("--dio-C", dio_C);
    st_cmd->add_option("--dio-tau", dio_tau);
    st_cmd->add_option("--dio-kmax", kmax);

    auto* wdiv_cmd = app.add_subcommand("wdiv", "Weierstrass division");
    wdiv_cmd->add_option("--f", a_expr)->required();
    wdiv_cmd->add_option("--g", b_expr, "monic Weierstrass polynomial")->required();
    wdiv_cmd->add_option("--yvar", yvar, "distinguished variable");

    auto* wprep_cmd = app.add_subcommand("wprep", "Weierstrass preparation");
    wprep_cmd->add_option("--f", a_expr)->required();
    wprep_cmd->add_option("--yvar", yvar);

    auto* wnum_cmd = app.add_subcommand("wprep-numeric", "contour-integral preparation samples");
    wnum_cmd->add_option("--f", a_expr)->required();
    wnum_cmd->add_option("--d", wd, "expected y-order");
    wnum_cmd->add_option("--grid", grid_str, "x sample points, comma separated")->required();
    wnum_cmd->add_option("--radius", radius);
    wnum_cmd->add_option("--nodes", nodes);
    wnum_cmd->add_option("--yvar", yvar);

    CLI11_PARSE(app, argc, argv);
    auto* sub = app.get_subcommands().front();
    const std::string& name = sub->get_name();

    if (name == "parse") {
        SeriesDoc doc = load_series(a_expr, g);
        Report rep("parse");
        add_header(rep, g);
        rep.kv("nvars", doc.series.nvars());
        rep.block(render_series(doc.series, doc.var_names, g, doc.allow_negative));
        emit(rep, g);
    } else if (name == "arith") {
        std::vector<TruncatedSeries> sides = parse_components(a_expr + ";" + b_expr, g);
        auto names = component_names(a_expr + ";" + b_expr, g);
        TruncatedSeries out = op == "add"   ? sides[0] + sides[1]
                              : op == "sub" ? sides[0] - sides[1]
                                            : sides[0] * sides[1];
        Report rep("arith");
        add_header(rep, g);
        rep.kv("op", op);
        rep.block(render_series(out, names, g));
        emit(rep, g);
    } else if (name == "compose") {
        auto comps = parse_components(map_expr, g);
        auto names = component_names(map_expr, g);
        GlobalOpts gf = g;
        gf.vars = names;
        SeriesDoc f = load_series(a_expr, gf);
        TruncatedSeries out = compose(f.series, SeriesMap(comps));
        Report rep("compose");
        add_header(rep, g);
        rep.block(render_series(out, names, g));
        emit(rep, g);
    } else if (name == "invert") {
        auto comps = parse_components(map_expr, g);
        auto names = component_names(map_expr, g);
        SeriesMap psi = invert_map(SeriesMap(comps));
        Report rep("invert");
        add_header(rep, g);
        for (int i = 0; i < psi.nvars(); ++i) {
            rep.kv("component", std::to_string(i + 1) + " " + names[static_cast<size_t>(i)]);
            rep.block(render_series(psi.component(i), names, g));
        }
        emit(rep, g);
    } else if (name == "milnor") {
        SeriesDoc f = load_series(a_expr, g);
        MilnorResult res = milnor_number(f.series, g.order);
        Report rep("milnor");
        add_header(rep, g);
        if (res.unit_warning) rep.kv("warning", "unit: no singularity, mu = 0 by convention");
        rep.kv("certified", res.certified);
        if (res.certified) {
            rep.kv("mu", res.mu);
            rep.kv("witness_degree", res.witness_degree);
        } else {
            rep.kv("status", "not determined at order " + std::to_string(g.order));
            rep.kv("mu_lower_bound", res.mu);
        }
        std::string basis;
        for (const auto& m : res.basis)
            basis += (basis.empty() ? "" : ", ") + m.str(f.var_names);
        rep.kv("basis", basis.empty() ? "-" : basis);
        emit(rep, g);
    } else if (name == "determinacy") {
        SeriesDoc f = load_series(a_expr, g);
        GlobalOpts gg = g;
        gg.vars = f.var_names;
        SeriesDoc gg_doc = load_series(b_expr, gg);
        Automorphism Phi = finite_determinacy_reduce(f.series, gg_doc.series, g.order);
        bool ok = compose(f.series + gg_doc.series, Phi.map()).same_terms(f.series.truncated(g.order));
        Report rep("determinacy");
        add_header(rep, g);
        rep.kv("verified", ok);
        for (int i = 0; i < Phi.nvars(); ++i) {
            rep.kv("component",
                   std::to_string(i + 1) + " " + f.var_names[static_cast<size_t>(i)]);
            rep.block(render_series(Phi.map().component(i), f.var_names, g));
        }
        emit(rep, g);
    } else if (name == "versal") {
        SeriesDoc F = load_series(a_expr, g);
        Deformation def(F.series, nx);
        VersalityReport res = versality_check(def, g.order);
        Report rep("versal");
        add_header(rep, g);
        rep.kv("mu", res.milnor.mu);
        rep.kv("versal", res.versal);
        if (!res.versal) {
            std::string unc;
            std::vector<std::string> xnames(F.var_names.begin(), F.var_names.begin() + nx);
            for (const auto& m : res.uncovered)
                unc += (unc.empty() ? "" : ", ") + m.str(xnames);
            rep.kv("uncovered_classes", unc);
            emit(rep, g);
            throw math_error("not versal");
        }
        emit(rep, g);
    } else if (name == "induce") {
        SeriesDoc F = load_series(a_expr, g);
        // G's parameter block is its own; only the ambient names are shared.
        ParseOptions pg;
        pg.field = parse_field(g.field);
        pg.order = g.order;
        pg.var_names.assign(F.var_names.begin(), F.var_names.begin() + nx);
        pg.extend_vars = true;
        auto gParsed = parse_series(fetch(b_expr), pg);
        SeriesDoc G{gParsed.series, gParsed.var_names, {}};
        Deformation dF(F.series, nx), dG(G.series, nx);
        InducingMap im = induce_deformation(dF, dG, g.order);
        Report rep("induce");
        add_header(rep, g);
        std::vector<std::string> anames(G.var_names.begin() + nx, G.var_names.end());
        std::vector<std::string> xanames(G.var_names.begin(), G.var_names.begin() + nx);
        for (const auto& a : anames) xanames.push_back(a);
        for (int j = 0; j < dF.nparams; ++j) {
            rep.kv("parameter", F.var_names[static_cast<size_t>(nx + j)]);
            rep.block(render_series(im.param_subst[static_cast<size_t>(j)], anames, g));
        }
        for (int i = 0; i < nx; ++i) {
            rep.kv("coordinate", F.var_names[static_cast<size_t>(i)]);
            rep.block(render_series(im.coord_subst[static_cast<size_t>(i)], xanames, g));
        }
        rep.kv("verified", true);  // induce_deformation re-verifies internally
        emit(rep, g);
    } else if (name == "rectify") {
        auto comps = parse_components(map_expr, g);
        auto names = component_names(map_expr, g);
        Derivation v(comps);
        Automorphism Phi = rectify(v, g.order);
        Derivation u = adjoint(Phi, v);
        Report rep("rectify");
        add_header(rep, g);
        for (int i = 0; i < Phi.nvars(); ++i) {
            rep.kv("component", std::to_string(i + 1) + " " + names[static_cast<size_t>(i)]);
            rep.block(render_series(Phi.map().component(i), names, g));
        }
        rep.kv("rectified_order", u.order());
        emit(rep, g);
    } else if (name == "pdnf") {
        Spectrum s = parse_spectrum(lambda_str, g);
        auto comps = parse_components(map_expr, g);
        auto names = component_names(map_expr, g);
        while (static_cast<int>(comps.size()) < s.n())
            comps.push_back(TruncatedSeries::zero(s.n(), g.order, s.field()));
        Derivation w(comps);
        PoincareDulacResult res = poincare_dulac(s, w, g.order);
        Report rep("pdnf");
        add_header(rep, g);
        rep.kv("steps", res.steps);
        rep.kv("min_divisor", double_str(res.min_divisor));
        rep.kv("normal_part", res.normal_part.str(names));
        for (int i = 0; i < s.n(); ++i) {
            rep.kv("component", std::to_string(i + 1) + " " + names[static_cast<size_t>(i)]);
            rep.block(render_series(res.transform.map().component(i), names, g));
        }
        emit(rep, g);
    } else if (name == "resonances") {
        Spectrum s = parse_spectrum(lambda_str, g);
        ResonanceReport res = resonant_monomials(s, dmax);
        Report rep("resonances");
        add_header(rep, g);
        rep.kv("domain", domain_str(res.domain));
        rep.kv("search_bound", res.search_bound);
        rep.kv("certified_complete", res.certified_complete);
        rep.kv("count", static_cast<long long>(res.monomials.size()));
        for (const auto& m : res.monomials)
            rep.kv("resonant", monomial_field_str(m.I, m.direction, s.n()));
        emit(rep, g);
    } else if (name == "poincare") {
        Spectrum s = parse_spectrum(lambda_str, g);
        DomainTag tag = is_poincare_domain(s);
        Report rep("poincare");
        add_header(rep, g);
        rep.kv("domain", domain_str(tag));
        if (tag == DomainTag::Poincare) {
            PoincareBound b = poincare_bound(s);
            rep.kv("bound", b.exact_text);
            rep.kv("bound_approx", double_str(b.value));
            rep.kv("bound_ceiling", b.ceil_bound);
        }
        emit(rep, g);
    } else if (name == "siegel") {
        Spectrum s = parse_spectrum(lambda_str, g);
        SiegelResult res = siegel_check(s, siegel_C, siegel_k, dmax);
        Report rep("siegel");
        add_header(rep, g);
        rep.kv("C", double_str(siegel_C));
        rep.kv("k", double_str(siegel_k));
        rep.kv("dmax", dmax);
        rep.kv("holds", res.holds);
        rep.kv("best_constant", double_str(res.best_constant));
        if (!res.holds) {
            rep.kv("violation_I", exps_str(res.violation.I.exps()));
            rep.kv("violation_direction", res.violation.direction + 1);
            rep.kv("exact_zero", res.exact_zero);
            emit(rep, g);
            throw math_error(res.exact_zero ? "resonant spectrum" : "Siegel bound violated");
        }
        emit(rep, g);
    } else if (name == "divisors") {
        Spectrum s = parse_spectrum(lambda_str, g);
        auto table = divisor_statistics(s, dmax);
        Report rep("divisors");
        add_header(rep, g);
        std::ostringstream tab;
        for (const auto& [d, v] : table) tab << d << " " << double_str(v) << "\n";
        rep.block(tab.str());
        emit(rep, g);
    } else if (name == "diophantine") {
        FrequencyVector w = parse_freq(omega_str, g);
        DiophantineResult res = diophantine_check(w, dio_C, dio_tau, kmax);
        Report rep("diophantine");
        add_header(rep, g);
        rep.kv("C", double_str(dio_C));
        rep.kv("tau", double_str(dio_tau));
        rep.kv("kmax", kmax);
        rep.kv("holds", res.holds);
        rep.kv("best_C", double_str(res.best_C));
        if (!res.holds) {
            rep.kv("violation_I", exps_str(res.violation_I));
            rep.kv("exact_zero", res.exact_zero);
            emit(rep, g);
            throw math_error("Diophantine condition violated");
        }
        emit(rep, g);
    } else if (name == "homological") {
        FrequencyVector w = parse_freq(omega_str, g);
        FourierTaylorSeries rhs = parse_ft(a_expr, dof, g);
        HomologicalSolution sol = solve_homological(rhs, w);
        Report rep("homological");
        add_header(rep, g);
        rep.kv("fourier_cutoff", g.fourier);
        rep.kv("min_divisor", double_str(sol.min_divisor));
        rep.kv("solution", sol.u.str());
        if (g.format == "doc") rep.block(ft_doc_str(sol.u));
        emit(rep, g);
    } else if (name == "kolmogorov") {
        FrequencyVector w = parse_freq(omega_str, g);
        auto dres = diophantine_check(w, dio_C, dio_tau, kmax);
        if (!dres.holds) throw math_error("omega fails the Diophantine scan");
        FourierTaylorSeries H = parse_ft(a_expr, dof, g);
        FourierTaylorSeries R = parse_ft(b_expr, dof, g);
        KolmogorovHamiltonian kh = KolmogorovHamiltonian::from_series(H);
        KolmogorovResult res = kolmogorov_normalize(kh, w, R);
        Report rep("kolmogorov");
        add_header(rep, g);
        rep.kv("fourier_cutoff", g.fourier);
        rep.kv("taylor_cutoff", g.taylor);
        rep.kv("tparam_cutoff", g.tparam);
        rep.kv("steps", static_cast<long long>(res.generators.size()));
        rep.kv("min_divisor", double_str(res.min_divisor));
        rep.kv("spilled_fourier", static_cast<long long>(res.spilled_fourier));
        rep.kv("defect_terms", static_cast<long long>(res.defect.terms().size()));
        rep.kv("clean", res.defect.is_zero());
        rep.kv("result_minus_H_in_tI2_plus_casimirs", res.defect.is_zero());
        if (!res.defect.is_zero()) rep.kv("defect", res.defect.str());
        if (g.format == "doc") rep.block(ft_doc_str(res.final_hamiltonian));
        emit(rep, g);
    } else if (name == "singular-torus") {
        FrequencyVector w = parse_freq(omega_str, g);
        auto dres = diophantine_check(w, dio_C, dio_tau, kmax);
        if (!dres.holds) throw math_error("omega fails the Diophantine scan");
        std::vector<std::string> names;
        for (int i = 1; i <= dof; ++i) names.push_back("q" + std::to_string(i));
        for (int i = 1; i <= dof; ++i) names.push_back("p" + std::to_string(i));
        ParseOptions po;
        po.field = parse_field(g.field);
        po.order = g.order;
        po.var_names = names;
        TruncatedSeries R = parse_series(fetch(b_expr), po).series;
        SingularTorusResult res = singular_torus_normalize(w, R, g.order);
        Report rep("singular-torus");
        add_header(rep, g);
        rep.kv("steps", res.steps);
        rep.kv("min_divisor", double_str(res.min_divisor));
        rep.kv("defect_terms", static_cast<long long>(res.defect.terms().size()));
        rep.kv("result_minus_H_in_I2", res.defect.is_zero());
        rep.kv("normalized", res.final_hamiltonian.str(names));
        emit(rep, g);
    } else if (name == "wdiv" || name == "wprep" || name == "wprep-numeric") {
        SeriesDoc f = load_series(a_expr, g);
        int y_index = -1;
        for (size_t i = 0; i < f.var_names.size(); ++i)
            if (f.var_names[i] == yvar) y_index = static_cast<int>(i);
        if (y_index < 0) throw input_error("distinguished variable '" + yvar + "' not found");
        if (name == "wdiv") {
            GlobalOpts gg = g;
            gg.vars = f.var_names;
            SeriesDoc gdoc = load_series(b_expr, gg);
            // Decompose g into a monic Weierstrass polynomial.
            int d = -1;
            for (const auto& [m, c] : gdoc.series.terms()) {
                bool pure = true;
                for (int i = 0; i < gdoc.series.nvars(); ++i)
                    if (i != y_index && m[i] != 0) pure = false;
                if (pure) d = std::max(d, m[y_index]);
            }
            if (d < 0 || !gdoc.series.coeff(Multidegree::zero(gdoc.series.nvars())
                                                .with(y_index, d))
                              .is_one())
                throw input_error("g must be monic in " + yvar);
            std::vector<TruncatedSeries> as(static_cast<size_t>(d),
                                            TruncatedSeries::zero(gdoc.series.nvars(), g.order,
                                                                  gdoc.series.field()));
            for (const auto& [m, c] : gdoc.series.terms()) {
                if (m[y_index] == d && m.with(y_index, 0).is_zero()) continue;
                if (m[y_index] >= d) throw input_error("g is not a Weierstrass polynomial");
                as[static_cast<size_t>(d - 1 - m[y_index])].add_term(m.with(y_index, 0), c);
            }
            WeierstrassPolynomial wp = make_weierstrass(d, y_index, gdoc.series.nvars(),
                                                        gdoc.series.field(), std::move(as));
            DivisionResult res = wdiv(f.series, wp, g.order);
            Report rep("wdiv");
            add_header(rep, g);
            rep.kv("degree", d);
            rep.kv("quotient", res.quotient.str(f.var_names));
            rep.kv("remainder", res.remainder.str(f.var_names));
            if (g.format == "doc") {
                rep.block(render_series(res.quotient, f.var_names, g));
                rep.block(render_series(res.remainder, f.var_names, g));
            }
            emit(rep, g);
        } else if (name == "wprep") {
            PreparationResult res = wprep(f.series, y_index, g.order);
            Report rep("wprep");
            add_header(rep, g);
            rep.kv("degree", res.poly.degree);
            rep.kv("unit", res.unit.str(f.var_names));
            for (int i = 1; i <= res.poly.degree; ++i)
                rep.kv("a" + std::to_string(i),
                       res.poly.coeffs[static_cast<size_t>(i - 1)].str(f.var_names));
            if (g.format == "doc") rep.block(render_series(res.unit, f.var_names, g));
            emit(rep, g);
        } else {
            std::vector<std::vector<std::complex<double>>> grid;
            for (const auto& c : parse_coeff_list(grid_str, field_complex()))
                grid.push_back({c.complex_value()});
            auto samples = wprep_numeric(f.series, y_index, wd, grid, radius, nodes);
            Report rep("wprep-numeric");
            add_header(rep, g);
            rep.kv("d", wd);
            rep.kv("radius", double_str(radius));
            rep.kv("nodes", nodes);
            std::ostringstream tab;
            for (const auto& s : samples) {
                tab << double_str(s.x[0].real());
                for (const auto& J : s.J) tab << " " << double_str(J.real());
                tab << "\n";
            }
            rep.block(tab.str());
            emit(rep, g);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const math_error& e) {
        std::cout << "refusal: " << e.what() << "\n";
        return 1;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ParseError&) {
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
