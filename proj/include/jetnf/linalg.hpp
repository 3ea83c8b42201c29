#ifndef JETNF_LINALG_HPP
#define JETNF_LINALG_HPP

#include <map>
#include <optional>
#include <vector>

#include "jetnf/coeff.hpp"

namespace jetnf {

using CoeffRow = std::vector<Coeff>;
using CoeffMatrix = std::vector<CoeffRow>;

// Incremental exact row reduction with provenance. Rows are kept fully
// inter-reduced with pivot = first nonzero column, so column order (graded
// lexicographic in all callers) decides every tie deterministically.
class RowReducer {
public:
    RowReducer(int width, FieldSpec fs) : width_(width), fs_(fs) {}

    // Adds one row; provenance_index tags it in combinations. Returns true
    // when the row was independent of the span so far.
    bool add_row(CoeffRow row, int provenance_index);

    int rank() const { return static_cast<int>(rows_.size()); }
    int width() const { return width_; }
    const std::vector<int>& pivot_cols() const { return pivot_cols_; }
    bool has_pivot(int col) const;

    // Remainder of v against the span. If combination is non-null it receives
    // the sparse expansion of (v - remainder) over the original rows.
    CoeffRow reduce(CoeffRow v, std::map<int, Coeff>* combination = nullptr) const;
    bool contains(const CoeffRow& v) const;

private:
    int width_;
    FieldSpec fs_;
    std::vector<CoeffRow> rows_;                    // pivot-normalized, inter-reduced
    std::vector<std::map<int, Coeff>> provenance_;  // over original row indices
    std::vector<int> pivot_cols_;                   // per stored row
    std::map<int, int> pivot_to_row_;

    int first_nonzero(const CoeffRow& v) const;
};

// Solve A x = b exactly. Unknowns are eliminated in column order; free
// unknowns are set to zero (graded-lex-first pivot solution). Returns
// nullopt when the system is inconsistent.
std::optional<CoeffRow> solve_first(const CoeffMatrix& A, const CoeffRow& b,
                                    const FieldSpec& fs);

// Exact inverse; throws math_error when singular.
CoeffMatrix invert_matrix(CoeffMatrix A, const FieldSpec& fs);

Coeff determinant(CoeffMatrix A, const FieldSpec& fs);

}  // namespace jetnf

#endif
