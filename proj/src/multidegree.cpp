#include "jetnf/multidegree.hpp"

#include <algorithm>

namespace jetnf {

void Multidegree::recompute() {
    total_ = 0;
    for (int e : exps_) total_ += std::abs(e);
}

Multidegree Multidegree::unit(int nvars, int i) {
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(i)] = 1;
    return Multidegree(std::move(e));
}

bool Multidegree::all_nonnegative() const {
    for (int e : exps_)
        if (e < 0) return false;
    return true;
}

Multidegree Multidegree::plus(const Multidegree& o) const {
    std::vector<int> e = exps_;
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
    return Multidegree(std::move(e));
}

Multidegree Multidegree::minus(const Multidegree& o) const {
    std::vector<int> e = exps_;
    for (size_t i = 0; i < e.size(); ++i) e[i] -= o.exps_[i];
    return Multidegree(std::move(e));
}

Multidegree Multidegree::with(int i, int v) const {
    std::vector<int> e = exps_;
    e[static_cast<size_t>(i)] = v;
    return Multidegree(std::move(e));
}

std::string Multidegree::str(const std::vector<std::string>& names) const {
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
        int e = exps_[static_cast<size_t>(i)];
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += names[static_cast<size_t>(i)];
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

namespace {
void gen_degree(int nvars, int pos, int remaining, std::vector<int>& cur,
                std::vector<Multidegree>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<size_t>(pos)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<size_t>(pos)] = e;
        gen_degree(nvars, pos + 1, remaining - e, cur, out);
    }
}
}  // namespace

std::vector<Multidegree> monomials_of_degree(int nvars, int d) {
    std::vector<Multidegree> out;
    if (nvars == 0) {
        if (d == 0) out.push_back(Multidegree(std::vector<int>{}));
        return out;
    }
    std::vector<int> cur(static_cast<size_t>(nvars), 0);
    // Lex order wants larger leading exponents first.
    gen_degree(nvars, 0, d, cur, out);
    std::sort(out.begin(), out.end(),
              [](const Multidegree& a, const Multidegree& b) { return a.exps() < b.exps(); });
    return out;
}

std::vector<Multidegree> monomials_up_to(int nvars, int N) {
    std::vector<Multidegree> out;
    for (int d = 0; d <= N; ++d) {
        auto layer = monomials_of_degree(nvars, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace jetnf
