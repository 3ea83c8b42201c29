#include "jetnf/ideal.hpp"

namespace jetnf {

JetIdealBasis::JetIdealBasis(std::vector<TruncatedSeries> generators, int order,
                             int min_filtration)
    : generators_(std::move(generators)),
      order_(order),
      nvars_(generators_.empty() ? 0 : generators_[0].nvars()),
      min_filtration_(min_filtration),
      field_(generators_.empty() ? field_rational() : generators_[0].field()),
      monomials_(monomials_up_to(nvars_, order)),
      reducer_(static_cast<int>(monomials_.size()), field_) {
    if (generators_.empty()) throw input_error("ideal needs at least one generator");
    for (int c = 0; c < static_cast<int>(monomials_.size()); ++c)
        column_of_.emplace(monomials_[static_cast<size_t>(c)], c);
    // Rows x^A g_i ordered by (A grlex, then i): the provenance order behind
    // the graded-lex-first solution convention.
    for (const auto& A : monomials_) {
        if (A.total() < min_filtration_) continue;
        for (size_t i = 0; i < generators_.size(); ++i) {
            TruncatedSeries prod =
                mul_to(TruncatedSeries::monomial(A, Coeff::one(field_), order_),
                       generators_[i], order_);
            if (prod.is_zero()) continue;
            int tag = static_cast<int>(row_tags_.size());
            row_tags_.emplace_back(static_cast<int>(i), A);
            reducer_.add_row(to_vector(prod), tag);
        }
    }
}

CoeffRow JetIdealBasis::to_vector(const TruncatedSeries& g) const {
    CoeffRow v(monomials_.size(), Coeff::zero(field_));
    for (const auto& [m, c] : g.terms()) {
        auto it = column_of_.find(m);
        if (it == column_of_.end()) throw math_error("series does not fit the ideal slice");
        v[static_cast<size_t>(it->second)] = c;
    }
    return v;
}

bool JetIdealBasis::contains(const TruncatedSeries& g) const {
    return reducer_.contains(to_vector(g.truncated(order_)));
}

std::optional<std::vector<TruncatedSeries>> JetIdealBasis::solve(const TruncatedSeries& g) const {
    std::map<int, Coeff> comb;
    CoeffRow rem = reducer_.reduce(to_vector(g.truncated(order_)), &comb);
    for (const auto& c : rem)
        if (!c.is_zero()) return std::nullopt;
    std::vector<TruncatedSeries> out(generators_.size(),
                                     TruncatedSeries::zero(nvars_, order_, field_));
    for (const auto& [tag, c] : comb) {
        const auto& [gen, A] = row_tags_[static_cast<size_t>(tag)];
        out[static_cast<size_t>(gen)].add_term(A, c);
    }
    return out;
}

CoeffRow JetIdealBasis::residue(const TruncatedSeries& g) const {
    CoeffRow rem = reducer_.reduce(to_vector(g.truncated(order_)));
    auto standard = standard_monomials();
    CoeffRow out;
    out.reserve(standard.size());
    for (const auto& m : standard) out.push_back(rem[static_cast<size_t>(column_of_.at(m))]);
    return out;
}

std::vector<Multidegree> JetIdealBasis::standard_monomials() const {
    std::vector<Multidegree> out;
    for (int c = 0; c < static_cast<int>(monomials_.size()); ++c)
        if (!reducer_.has_pivot(c)) out.push_back(monomials_[static_cast<size_t>(c)]);
    return out;
}

bool JetIdealBasis::degree_slice_full(int d) const {
    for (const auto& m : monomials_) {
        if (m.total() != d) continue;
        if (!reducer_.has_pivot(column_of_.at(m))) return false;
    }
    return true;
}

JetIdealBasis jacobian_ideal(const TruncatedSeries& f, int min_filtration) {
    // f enters as its order-N jet; the derivative of the jet is an exact
    // polynomial, so it keeps the full slice order.
    std::vector<TruncatedSeries> partials;
    partials.reserve(static_cast<size_t>(f.nvars()));
    for (int i = 0; i < f.nvars(); ++i) partials.push_back(f.derivative(i).truncated(f.order()));
    return JetIdealBasis(std::move(partials), f.order(), min_filtration);
}

MilnorResult milnor_number(const TruncatedSeries& f, int N) {
    MilnorResult res;
    if (!f.coeff(Multidegree::zero(f.nvars())).is_zero()) {
        // A unit is right-equivalent to a constant: no singularity.
        res.certified = true;
        res.mu = 0;
        res.unit_warning = true;
        return res;
    }
    JetIdealBasis J = jacobian_ideal(f.truncated(N));
    // Certification: a full monomial slice M^d inside the ideal slice with
    // d <= N-1 pins the Milnor algebra below degree d (the lemma M^mu in Tf,
    // run in reverse: truncation can certify but never guess).
    for (int d = 0; d <= N - 1; ++d) {
        if (J.degree_slice_full(d)) {
            res.certified = true;
            res.witness_degree = d;
            break;
        }
    }
    res.basis = J.standard_monomials();
    res.mu = static_cast<int>(res.basis.size());
    return res;
}

std::optional<std::vector<TruncatedSeries>> ideal_membership_solve(const TruncatedSeries& g,
                                                                   const TruncatedSeries& f,
                                                                   int min_filtration) {
    JetIdealBasis J = jacobian_ideal(f, min_filtration);
    return J.solve(g.truncated(f.order()));
}

}  // namespace jetnf
