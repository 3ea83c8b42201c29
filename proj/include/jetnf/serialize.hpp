#ifndef JETNF_SERIALIZE_HPP
#define JETNF_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "jetnf/series.hpp"

namespace jetnf {

// Structured text document for one series; exact round trip, deterministic
// term order (graded lex).
//
//   series {
//   field rat | quad <d> | float
//   nvars <n>
//   vars <name...>
//   negdeg <0|1 ...>        (present only when some variable is Fourier-like)
//   order <N>
//   terms <count>
//   <e_1> ... <e_n> <coeff>
//   }
struct SeriesDoc {
    TruncatedSeries series;
    std::vector<std::string> var_names;
    std::vector<bool> allow_negative;  // empty means all-Taylor
};

void write_series_doc(std::ostream& os, const SeriesDoc& doc);
std::string series_doc_str(const SeriesDoc& doc);
SeriesDoc read_series_doc(std::istream& is);
SeriesDoc parse_series_doc(const std::string& text);

// Reads either a series document (leading "series {") or a bare expression
// in the text grammar.
SeriesDoc read_series_or_expr(const std::string& text, const FieldSpec& fs, int order,
                              const std::vector<std::string>& var_names = {},
                              const std::vector<bool>& allow_negative = {});

}  // namespace jetnf

#endif
