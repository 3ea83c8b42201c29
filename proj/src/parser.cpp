#include "jetnf/parser.hpp"

#include <cctype>
#include <cstdlib>

namespace jetnf {

namespace {

enum class Tok { End, Int, Float, Ident, Plus, Minus, Star, Caret, LParen, RParen, Slash, Comma };

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    Tok tok = Tok::End;
    std::string text;

    explicit Lexer(const std::string& str) : s(str) { advance(); }

    void advance() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        text.clear();
        if (pos >= s.size()) { tok = Tok::End; return; }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            bool is_float = false;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos < s.size() && s[pos] == '.') {
                is_float = true;
                ++pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            }
            if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
                size_t save = pos;
                ++pos;
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    is_float = true;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                } else {
                    pos = save;
                }
            }
            text = s.substr(start, pos - start);
            tok = is_float ? Tok::Float : Tok::Int;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            text = s.substr(start, pos - start);
            tok = Tok::Ident;
            return;
        }
        ++pos;
        switch (c) {
            case '+': tok = Tok::Plus; return;
            case '-': tok = Tok::Minus; return;
            case '*': tok = Tok::Star; return;
            case '^': tok = Tok::Caret; return;
            case '(': tok = Tok::LParen; return;
            case ')': tok = Tok::RParen; return;
            case '/': tok = Tok::Slash; return;
            case ',': tok = Tok::Comma; return;
            default: throw input_error(std::string("unexpected character '") + c + "' in expression");
        }
    }
};

struct Parser {
    Lexer lex;
    const ParseOptions& opts;
    std::vector<std::string> names;
    std::vector<bool> neg_ok;
    bool fixed_vars;

    Parser(const std::string& text, const ParseOptions& o)
        : lex(text), opts(o), names(o.var_names),
          fixed_vars(!o.var_names.empty() && !o.extend_vars) {
        neg_ok = o.allow_negative;
        neg_ok.resize(names.size(), false);
    }

    int var_index(const std::string& name) {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        if (fixed_vars) throw input_error("unknown variable '" + name + "'");
        names.push_back(name);
        neg_ok.push_back(false);
        return static_cast<int>(names.size()) - 1;
    }

    struct Value {
        TruncatedSeries s;
        int pure_var = -1;  // index when the value is exactly one variable
    };

    // The two-pass scheme (collect variables, then build) is avoided by
    // evaluating over a generous variable count: values are re-embedded at
    // the end. During parsing we keep per-value exponent maps instead.
    // Simpler: parse the expression into an AST of closures is overkill; we
    // instead pre-scan identifiers when variables are inferred.

    Coeff parse_number_coeff(bool& ok_int) {
        // current token is Int or Float
        ok_int = lex.tok == Tok::Int;
        std::string t = lex.text;
        lex.advance();
        if (opts.field.kind == FieldKind::ComplexFloat) {
            if (ok_int && lex.tok == Tok::Slash) {
                lex.advance();
                if (lex.tok != Tok::Int && lex.tok != Tok::Float)
                    throw input_error("expected denominator");
                double num = std::strtod(t.c_str(), nullptr);
                double den = std::strtod(lex.text.c_str(), nullptr);
                lex.advance();
                if (den == 0) throw input_error("zero denominator");
                return Coeff::complex(num / den);
            }
            return Coeff::complex(std::strtod(t.c_str(), nullptr));
        }
        if (!ok_int) throw input_error("decimal literals are only allowed in float mode");
        BigInt num(t);
        if (lex.tok == Tok::Slash) {
            lex.advance();
            if (lex.tok != Tok::Int) throw input_error("expected integer denominator");
            BigInt den(lex.text);
            lex.advance();
            if (den == 0) throw input_error("zero denominator");
            Rational r(num, den);
            if (opts.field.kind == FieldKind::Quadratic)
                return Coeff::quadratic(r, 0, opts.field.d);
            return Coeff::rational(r);
        }
        if (opts.field.kind == FieldKind::Quadratic)
            return Coeff::quadratic(Rational(num), 0, opts.field.d);
        return Coeff::rational(Rational(num));
    }

    Value parse_atom() {
        switch (lex.tok) {
            case Tok::LParen: {
                lex.advance();
                Value v = parse_expr();
                if (lex.tok != Tok::RParen) throw input_error("expected ')'");
                lex.advance();
                return v;
            }
            case Tok::Int:
            case Tok::Float: {
                bool ok;
                Coeff c = parse_number_coeff(ok);
                return {TruncatedSeries::constant(c, nvars(), opts.order), -1};
            }
            case Tok::Ident: {
                std::string name = lex.text;
                lex.advance();
                if (name == "sqrt" && lex.tok == Tok::LParen) {
                    if (opts.field.kind != FieldKind::Quadratic)
                        throw input_error("sqrt(d) literal requires Q(sqrt d) mode");
                    lex.advance();
                    bool negative = false;
                    if (lex.tok == Tok::Minus) { negative = true; lex.advance(); }
                    if (lex.tok != Tok::Int) throw input_error("expected integer in sqrt()");
                    long long d = std::strtoll(lex.text.c_str(), nullptr, 10);
                    if (negative) d = -d;
                    lex.advance();
                    if (lex.tok != Tok::RParen) throw input_error("expected ')' after sqrt");
                    lex.advance();
                    if (d != opts.field.d)
                        throw input_error("sqrt(" + std::to_string(d) +
                                          ") does not match the session field " + opts.field.str());
                    Coeff c = Coeff::quadratic(0, 1, opts.field.d);
                    return {TruncatedSeries::constant(c, nvars(), opts.order), -1};
                }
                int idx = var_index(name);
                return {TruncatedSeries::variable(idx, nvars(), opts.order, opts.field), idx};
            }
            default:
                throw input_error("unexpected token in expression");
        }
    }

    Value parse_power() {
        Value base = parse_atom();
        if (lex.tok != Tok::Caret) return base;
        lex.advance();
        bool neg = false;
        if (lex.tok == Tok::Minus) { neg = true; lex.advance(); }
        if (lex.tok != Tok::Int) throw input_error("exponent must be an integer");
        int e = static_cast<int>(std::strtol(lex.text.c_str(), nullptr, 10));
        lex.advance();
        if (!neg) return {base.s.pow(e), -1};
        if (base.pure_var < 0)
            throw input_error("negative exponents apply to single variables only");
        if (!(static_cast<size_t>(base.pure_var) < neg_ok.size() &&
              neg_ok[static_cast<size_t>(base.pure_var)]))
            throw input_error("variable '" + names[static_cast<size_t>(base.pure_var)] +
                              "' does not admit negative exponents");
        Multidegree m = Multidegree::zero(nvars()).with(base.pure_var, -e);
        return {TruncatedSeries::monomial(m, Coeff::one(opts.field), opts.order), -1};
    }

    Value parse_factor() {
        if (lex.tok == Tok::Minus) {
            lex.advance();
            Value v = parse_factor();
            return {-v.s, -1};
        }
        if (lex.tok == Tok::Plus) {
            lex.advance();
            return parse_factor();
        }
        return parse_power();
    }

    Value parse_term() {
        Value acc = parse_factor();
        while (lex.tok == Tok::Star) {
            lex.advance();
            Value rhs = parse_factor();
            acc = {acc.s * rhs.s, -1};
        }
        return acc;
    }

    Value parse_expr() {
        Value acc = parse_term();
        while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
            bool minus = lex.tok == Tok::Minus;
            lex.advance();
            Value t = parse_term();
            acc = {minus ? acc.s - t.s : acc.s + t.s, -1};
        }
        return acc;
    }

    int nvars() const { return static_cast<int>(names.size()); }
};

// Pre-scan identifiers so inferred variable sets are known before any series
// value is built (all values share one arity).
std::vector<std::string> scan_vars(const std::string& text) {
    std::vector<std::string> vars;
    Lexer lex(text);
    Tok prev = Tok::End;
    while (lex.tok != Tok::End) {
        if (lex.tok == Tok::Ident) {
            std::string name = lex.text;
            Lexer probe = lex;
            probe.advance();
            bool is_sqrt = (name == "sqrt" && probe.tok == Tok::LParen);
            if (!is_sqrt) {
                bool seen = false;
                for (const auto& v : vars) seen = seen || v == name;
                if (!seen) vars.push_back(name);
            }
        }
        prev = lex.tok;
        lex.advance();
    }
    (void)prev;
    return vars;
}

}  // namespace

ParsedSeries parse_series(const std::string& text, const ParseOptions& opts) {
    ParseOptions o = opts;
    if (o.var_names.empty() || o.extend_vars) {
        for (const auto& v : scan_vars(text)) {
            bool seen = false;
            for (const auto& w : o.var_names) seen = seen || w == v;
            if (!seen) o.var_names.push_back(v);
        }
        o.extend_vars = false;
    }
    if (o.var_names.empty()) o.var_names = {"x"};
    Parser p(text, o);
    auto v = p.parse_expr();
    if (p.lex.tok != Tok::End) throw input_error("trailing input after expression");
    return {v.s, p.names};
}

Coeff parse_coeff(const std::string& text, const FieldSpec& fs) {
    if (fs.kind == FieldKind::ComplexFloat) {
        // "(re,im)" or a plain double token
        if (!text.empty() && text.front() == '(') {
            size_t comma = text.find(',');
            if (comma == std::string::npos || text.back() != ')')
                throw input_error("bad complex literal: " + text);
            double re = std::strtod(text.substr(1, comma - 1).c_str(), nullptr);
            double im = std::strtod(text.substr(comma + 1, text.size() - comma - 2).c_str(), nullptr);
            return Coeff::complex({re, im});
        }
        return Coeff::complex(std::strtod(text.c_str(), nullptr));
    }
    ParseOptions po;
    po.field = fs;
    po.order = 0;
    po.var_names = {"__none"};
    Parser p(text, po);
    auto v = p.parse_expr();
    if (p.lex.tok != Tok::End) throw input_error("trailing input after coefficient");
    return v.s.coeff(Multidegree::zero(1));
}

}  // namespace jetnf
