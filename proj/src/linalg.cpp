#include "jetnf/linalg.hpp"

namespace jetnf {

int RowReducer::first_nonzero(const CoeffRow& v) const {
    for (int j = 0; j < width_; ++j)
        if (!v[static_cast<size_t>(j)].is_zero()) return j;
    return -1;
}

bool RowReducer::has_pivot(int col) const { return pivot_to_row_.count(col) > 0; }

bool RowReducer::add_row(CoeffRow row, int provenance_index) {
    std::map<int, Coeff> comb;
    CoeffRow rem = reduce(std::move(row), &comb);
    int p = first_nonzero(rem);
    if (p < 0) return false;
    // Normalize pivot to 1; provenance of the stored row: (original - comb)/pivot.
    Coeff inv = rem[static_cast<size_t>(p)].inverse();
    for (auto& c : rem) c = c * inv;
    std::map<int, Coeff> prov;
    prov[provenance_index] = inv;
    for (const auto& [idx, c] : comb) {
        Coeff w = -(c * inv);
        if (!w.is_zero()) prov[idx] = w;
    }
    // Back-eliminate the new pivot column from existing rows.
    for (size_t r = 0; r < rows_.size(); ++r) {
        Coeff factor = rows_[r][static_cast<size_t>(p)];
        if (factor.is_zero()) continue;
        for (int j = 0; j < width_; ++j)
            rows_[r][static_cast<size_t>(j)] =
                rows_[r][static_cast<size_t>(j)] - factor * rem[static_cast<size_t>(j)];
        for (const auto& [idx, c] : prov) {
            auto it = provenance_[r].find(idx);
            Coeff w = (it == provenance_[r].end() ? Coeff::zero(fs_) : it->second) - factor * c;
            if (w.is_zero())
                provenance_[r].erase(idx);
            else
                provenance_[r][idx] = w;
        }
    }
    pivot_to_row_[p] = static_cast<int>(rows_.size());
    pivot_cols_.push_back(p);
    rows_.push_back(std::move(rem));
    provenance_.push_back(std::move(prov));
    return true;
}

CoeffRow RowReducer::reduce(CoeffRow v, std::map<int, Coeff>* combination) const {
    if (combination) combination->clear();
    for (int j = 0; j < width_; ++j) {
        const Coeff& c = v[static_cast<size_t>(j)];
        if (c.is_zero()) continue;
        auto it = pivot_to_row_.find(j);
        if (it == pivot_to_row_.end()) continue;
        const CoeffRow& row = rows_[static_cast<size_t>(it->second)];
        Coeff factor = c;  // row pivot is 1
        for (int k = j; k < width_; ++k) {
            if (row[static_cast<size_t>(k)].is_zero()) continue;
            v[static_cast<size_t>(k)] =
                v[static_cast<size_t>(k)] - factor * row[static_cast<size_t>(k)];
        }
        if (combination) {
            for (const auto& [idx, pc] : provenance_[static_cast<size_t>(it->second)]) {
                Coeff w = (combination->count(idx) ? (*combination)[idx] : Coeff::zero(fs_)) +
                          factor * pc;
                if (w.is_zero())
                    combination->erase(idx);
                else
                    (*combination)[idx] = w;
            }
        }
    }
    return v;
}

bool RowReducer::contains(const CoeffRow& v) const {
    CoeffRow rem = reduce(v);
    return first_nonzero(rem) < 0;
}

std::optional<CoeffRow> solve_first(const CoeffMatrix& A, const CoeffRow& b,
                                    const FieldSpec& fs) {
    size_t nrows = A.size();
    size_t ncols = nrows == 0 ? 0 : A[0].size();
    CoeffMatrix M = A;
    CoeffRow rhs = b;
    std::vector<int> pivot_row_of_col(ncols, -1);
    std::vector<bool> row_used(nrows, false);
    for (size_t col = 0; col < ncols; ++col) {
        size_t pr = nrows;
        for (size_t r = 0; r < nrows; ++r) {
            if (!row_used[r] && !M[r][col].is_zero()) { pr = r; break; }
        }
        if (pr == nrows) continue;
        row_used[pr] = true;
        pivot_row_of_col[col] = static_cast<int>(pr);
        Coeff inv = M[pr][col].inverse();
        for (size_t j = col; j < ncols; ++j) M[pr][j] = M[pr][j] * inv;
        rhs[pr] = rhs[pr] * inv;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == pr || M[r][col].is_zero()) continue;
            Coeff f = M[r][col];
            for (size_t j = col; j < ncols; ++j) M[r][j] = M[r][j] - f * M[pr][j];
            rhs[r] = rhs[r] - f * rhs[pr];
        }
    }
    for (size_t r = 0; r < nrows; ++r)
        if (!row_used[r] && !rhs[r].is_zero()) return std::nullopt;
    CoeffRow x(ncols, Coeff::zero(fs));
    for (size_t col = 0; col < ncols; ++col)
        if (pivot_row_of_col[col] >= 0)
            x[col] = rhs[static_cast<size_t>(pivot_row_of_col[col])];
    return x;
}

CoeffMatrix invert_matrix(CoeffMatrix A, const FieldSpec& fs) {
    size_t n = A.size();
    CoeffMatrix inv(n, CoeffRow(n, Coeff::zero(fs)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Coeff::one(fs);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = n;
        for (size_t r = col; r < n; ++r)
            if (!A[r][col].is_zero()) { pr = r; break; }
        if (pr == n) throw math_error("matrix is singular");
        std::swap(A[col], A[pr]);
        std::swap(inv[col], inv[pr]);
        Coeff piv = A[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            A[col][j] = A[col][j] * piv;
            inv[col][j] = inv[col][j] * piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            Coeff f = A[r][col];
            for (size_t j = 0; j < n; ++j) {
                A[r][j] = A[r][j] - f * A[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

Coeff determinant(CoeffMatrix A, const FieldSpec& fs) {
    size_t n = A.size();
    Coeff det = Coeff::one(fs);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = n;
        for (size_t r = col; r < n; ++r)
            if (!A[r][col].is_zero()) { pr = r; break; }
        if (pr == n) return Coeff::zero(fs);
        if (pr != col) {
            std::swap(A[col], A[pr]);
            det = -det;
        }
        det = det * A[col][col];
        Coeff piv = A[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (A[r][col].is_zero()) continue;
            Coeff f = A[r][col] * piv;
            for (size_t j = col; j < n; ++j) A[r][j] = A[r][j] - f * A[col][j];
        }
    }
    return det;
}

}  // namespace jetnf
