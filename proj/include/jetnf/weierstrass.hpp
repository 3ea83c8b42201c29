#ifndef JETNF_WEIERSTRASS_HPP
#define JETNF_WEIERSTRASS_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "jetnf/series.hpp"

namespace jetnf {

// Monic y-polynomial y^d + a_1 y^{d-1} + ... + a_d with coefficients in the
// remaining variables, all vanishing at the origin. Coefficients are stored
// in the full ring with y-exponent zero.
struct WeierstrassPolynomial {
    int degree = 0;
    int y_index = 0;
    int nvars = 0;
    FieldSpec field{};
    std::vector<TruncatedSeries> coeffs;  // a_1 .. a_d

    TruncatedSeries as_series(int order) const;
};

WeierstrassPolynomial make_weierstrass(int degree, int y_index, int nvars, const FieldSpec& fs,
                                       std::vector<TruncatedSeries> coeffs);

// Smallest d with f(0,...,0,y) having a nonzero y^d coefficient; nullopt
// when no pure power of y appears within the truncation.
std::optional<int> y_general_order(const TruncatedSeries& f, int y_index);

struct DivisionResult {
    TruncatedSeries quotient;
    TruncatedSeries remainder;  // y-degree < d
};

// Weierstrass division f = q g + r, exact modulo total degree N, by the
// M'-adic fixed point q <- (f + q (y^d - g)) div y^d.
DivisionResult wdiv(const TruncatedSeries& f, const WeierstrassPolynomial& g, int N);

struct PreparationResult {
    TruncatedSeries unit;  // u with u(0) != 0
    WeierstrassPolynomial poly;
};

// Weierstrass preparation f = u g, solved slice by slice in the x'-degree
// as a triangular system.
PreparationResult wprep(const TruncatedSeries& f, int y_index, int N);

// Elementary symmetric functions from power sums by Newton's recurrence
// k sigma_k = sum_{i=1..k} (-1)^{i-1} sigma_{k-i} p_i.
std::vector<Coeff> newton_sigma(const std::vector<Coeff>& power_sums);
std::vector<std::complex<double>> newton_sigma(const std::vector<std::complex<double>>& power_sums);

// Numeric evaluation of a series at a complex point (exact coefficients are
// embedded; Taylor exponents only).
std::complex<double> eval_series(const TruncatedSeries& f,
                                 const std::vector<std::complex<double>>& point);

// Trapezoidal contour integrals I_k = (1/2 pi i) oint y^k f_y/f dy on
// |y| = radius around the roots of y -> f(x0, y); I_0 must come out within
// 1e-6 of d (root count), else "contour misplaced". Returns I_1..I_d.
std::vector<std::complex<double>> contour_power_sums(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const std::function<std::complex<double>(std::complex<double>)>& dfdy, int d,
    double radius, int nodes);

// Convenience overload: sections of a series at the x-point x0.
std::vector<std::complex<double>> contour_power_sums(const TruncatedSeries& f, int y_index,
                                                     const std::vector<std::complex<double>>& x0,
                                                     int d, double radius, int nodes);

struct NumericPrepSample {
    std::vector<std::complex<double>> x;
    std::vector<std::complex<double>> J;  // J_1..J_d (elementary symmetric values)
};

// The appendix route: power sums by contour integration, then Newton's
// identities; g(x, y) = y^d - J_1 y^{d-1} + J_2 y^{d-2} - ... at each grid
// point. Exact counterpart: a_k = (-1)^k J_k.
std::vector<NumericPrepSample> wprep_numeric(
    const TruncatedSeries& f, int y_index, int d,
    const std::vector<std::vector<std::complex<double>>>& grid, double radius, int nodes);

}  // namespace jetnf

#endif
