#ifndef JETNF_MULTIDEGREE_HPP
#define JETNF_MULTIDEGREE_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace jetnf {

// Exponent vector of one monomial. Taylor variables carry nonnegative
// exponents; Fourier indices may be negative. total() is the 1-norm.
class Multidegree {
public:
    Multidegree() = default;
    explicit Multidegree(std::vector<int> exps) : exps_(std::move(exps)) { recompute(); }
    static Multidegree zero(int nvars) { return Multidegree(std::vector<int>(nvars, 0)); }
    static Multidegree unit(int nvars, int i);

    int nvars() const { return static_cast<int>(exps_.size()); }
    int operator[](int i) const { return exps_[static_cast<size_t>(i)]; }
    const std::vector<int>& exps() const { return exps_; }
    int total() const { return total_; }
    bool is_zero() const { return total_ == 0; }
    bool all_nonnegative() const;

    Multidegree plus(const Multidegree& o) const;
    Multidegree minus(const Multidegree& o) const;  // may go negative
    Multidegree with(int i, int v) const;

    bool operator==(const Multidegree& o) const { return exps_ == o.exps_; }
    bool operator!=(const Multidegree& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& names) const;

private:
    std::vector<int> exps_;
    int total_ = 0;
    void recompute();
};

// Graded lexicographic order: by total degree, then lexicographic on the
// exponent vector. The canonical iteration order of every term map.
struct GrlexLess {
    bool operator()(const Multidegree& a, const Multidegree& b) const {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.exps() < b.exps();
    }
};

// All exponent vectors with nonnegative entries and total degree exactly d,
// in lexicographic order (which is grlex order within fixed degree).
std::vector<Multidegree> monomials_of_degree(int nvars, int d);
// Total degree <= N, grlex order.
std::vector<Multidegree> monomials_up_to(int nvars, int N);

}  // namespace jetnf

#endif
