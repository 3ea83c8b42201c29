#include "jetnf/serialize.hpp"

#include <sstream>

#include "jetnf/parser.hpp"

namespace jetnf {

void write_series_doc(std::ostream& os, const SeriesDoc& doc) {
    const TruncatedSeries& f = doc.series;
    os << "series {\n";
    os << "field";
    switch (f.field().kind) {
        case FieldKind::Rational: os << " rat"; break;
        case FieldKind::Quadratic: os << " quad " << f.field().d; break;
        case FieldKind::ComplexFloat: os << " float"; break;
    }
    os << "\n";
    os << "nvars " << f.nvars() << "\n";
    os << "vars";
    for (const auto& v : doc.var_names) os << " " << v;
    os << "\n";
    bool any_neg = false;
    for (bool b : doc.allow_negative) any_neg = any_neg || b;
    if (any_neg) {
        os << "negdeg";
        for (int i = 0; i < f.nvars(); ++i)
            os << " " << (static_cast<size_t>(i) < doc.allow_negative.size() &&
                                  doc.allow_negative[static_cast<size_t>(i)]
                              ? 1
                              : 0);
        os << "\n";
    }
    os << "order " << f.order() << "\n";
    os << "terms " << f.terms().size() << "\n";
    for (const auto& [m, c] : f.terms()) {
        for (int i = 0; i < f.nvars(); ++i) os << m[i] << " ";
        os << c.str() << "\n";
    }
    os << "}\n";
}

std::string series_doc_str(const SeriesDoc& doc) {
    std::ostringstream os;
    write_series_doc(os, doc);
    return os.str();
}

namespace {

std::string next_word(std::istream& is) {
    std::string w;
    if (!(is >> w)) throw input_error("unexpected end of series document");
    return w;
}

long long next_int(std::istream& is) {
    std::string w = next_word(is);
    try {
        size_t used = 0;
        long long v = std::stoll(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        return v;
    } catch (const std::exception&) {
        throw input_error("expected integer in series document, got '" + w + "'");
    }
}

void expect_word(std::istream& is, const std::string& want) {
    std::string w = next_word(is);
    if (w != want) throw input_error("expected '" + want + "' in series document, got '" + w + "'");
}

}  // namespace

SeriesDoc read_series_doc(std::istream& is) {
    expect_word(is, "series");
    expect_word(is, "{");
    expect_word(is, "field");
    std::string kind = next_word(is);
    FieldSpec fs;
    if (kind == "rat") {
        fs = field_rational();
    } else if (kind == "quad") {
        fs = field_quadratic(next_int(is));
    } else if (kind == "float") {
        fs = field_complex();
    } else {
        throw input_error("unknown field variant '" + kind + "'");
    }
    expect_word(is, "nvars");
    int n = static_cast<int>(next_int(is));
    if (n < 0 || n > 64) throw input_error("unreasonable variable count");
    expect_word(is, "vars");
    SeriesDoc doc;
    for (int i = 0; i < n; ++i) doc.var_names.push_back(next_word(is));
    std::string key = next_word(is);
    if (key == "negdeg") {
        for (int i = 0; i < n; ++i) doc.allow_negative.push_back(next_int(is) != 0);
        key = next_word(is);
    }
    if (key != "order") throw input_error("expected 'order' in series document");
    int order = static_cast<int>(next_int(is));
    expect_word(is, "terms");
    long long count = next_int(is);
    TruncatedSeries f(n, order, fs);
    for (long long t = 0; t < count; ++t) {
        std::vector<int> exps;
        exps.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) exps.push_back(static_cast<int>(next_int(is)));
        Coeff c = parse_coeff(next_word(is), fs);
        Multidegree m{exps};
        for (int i = 0; i < n; ++i)
            if (m[i] < 0 && !(static_cast<size_t>(i) < doc.allow_negative.size() &&
                              doc.allow_negative[static_cast<size_t>(i)]))
                throw input_error("negative exponent on Taylor variable in document");
        f.set_coeff(m, c);
    }
    expect_word(is, "}");
    doc.series = std::move(f);
    return doc;
}

SeriesDoc parse_series_doc(const std::string& text) {
    std::istringstream is(text);
    return read_series_doc(is);
}

SeriesDoc read_series_or_expr(const std::string& text, const FieldSpec& fs, int order,
                              const std::vector<std::string>& var_names,
                              const std::vector<bool>& allow_negative) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text.compare(first, 6, "series") == 0) {
        SeriesDoc doc = parse_series_doc(text);
        return doc;
    }
    ParseOptions opts;
    opts.field = fs;
    opts.order = order;
    opts.var_names = var_names;
    opts.allow_negative = allow_negative;
    auto parsed = parse_series(text, opts);
    SeriesDoc doc;
    doc.series = parsed.series;
    doc.var_names = parsed.var_names;
    doc.allow_negative = allow_negative;
    doc.allow_negative.resize(parsed.var_names.size(), false);
    return doc;
}

}  // namespace jetnf
