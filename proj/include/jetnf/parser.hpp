#ifndef JETNF_PARSER_HPP
#define JETNF_PARSER_HPP

#include <string>
#include <vector>

#include "jetnf/series.hpp"

namespace jetnf {

// Options for the series text grammar. Variables are identifiers; literals
// are integers, num/den rationals (decimals in float mode only) and sqrt(d)
// in Q(sqrt d) mode; operators + - * ^; no implicit multiplication.
struct ParseOptions {
    FieldSpec field = field_rational();
    int order = 8;
    // Fixed variable set; empty means infer by first appearance.
    std::vector<std::string> var_names;
    // Allow new variables to append after var_names instead of erroring.
    bool extend_vars = false;
    // Per-variable permission for negative exponents (Fourier indices).
    std::vector<bool> allow_negative;
};

struct ParsedSeries {
    TruncatedSeries series;
    std::vector<std::string> var_names;
};

ParsedSeries parse_series(const std::string& text, const ParseOptions& opts);

// Parses one coefficient in the canonical text form produced by Coeff::str().
Coeff parse_coeff(const std::string& text, const FieldSpec& fs);

}  // namespace jetnf

#endif
