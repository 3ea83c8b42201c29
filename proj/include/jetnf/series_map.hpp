#ifndef JETNF_SERIES_MAP_HPP
#define JETNF_SERIES_MAP_HPP

#include <vector>

#include "jetnf/series.hpp"

namespace jetnf {

// n-tuple of series with vanishing constant terms: a formal coordinate
// substitution x_i -> components[i].
class SeriesMap {
public:
    SeriesMap() = default;
    explicit SeriesMap(std::vector<TruncatedSeries> components);

    static SeriesMap identity(int nvars, int order, const FieldSpec& fs);

    int nvars() const { return static_cast<int>(components_.size()); }
    int order() const;
    const FieldSpec& field() const { return components_.at(0).field(); }
    const TruncatedSeries& component(int i) const { return components_.at(static_cast<size_t>(i)); }
    const std::vector<TruncatedSeries>& components() const { return components_; }

    bool is_identity() const;

    bool operator==(const SeriesMap& o) const { return components_ == o.components_; }

private:
    std::vector<TruncatedSeries> components_;
};

// Substitution f(phi_1, ..., phi_n), exact modulo M^{min(order f, order phi)+1};
// evaluated by Horner-style accumulation over the first variable recursively.
TruncatedSeries compose(const TruncatedSeries& f, const SeriesMap& phi);

// General substitution: one image per variable of f, all images living in a
// common (possibly different) ring. Images must have zero constant terms.
TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images);

// Re-index the variables of f into a wider ring: new exponent of variable
// var_map[i] is the old exponent of variable i.
TruncatedSeries embed(const TruncatedSeries& f, int new_nvars, const std::vector<int>& var_map);

// Componentwise substitution: (phi o psi)_i = phi_i(psi), the map of
// "first apply psi's formulas into phi's".
SeriesMap compose_maps(const SeriesMap& phi, const SeriesMap& psi);

// Linear part as a dense matrix L[i][j] = d phi_i / d x_j (0).
std::vector<std::vector<Coeff>> linear_part(const SeriesMap& phi);

// Formal inverse: psi with phi(psi) = psi(phi) = identity modulo truncation.
// Throws math_error when the linear part is singular.
SeriesMap invert_map(const SeriesMap& phi);

}  // namespace jetnf

#endif
