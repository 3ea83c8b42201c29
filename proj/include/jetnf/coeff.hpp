#ifndef JETNF_COEFF_HPP
#define JETNF_COEFF_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace jetnf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown on mathematically meaningful refusals (not bugs): singular linear
// part, non-membership, near-resonance, failed certification, ...
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed user input (bad expression text, bad documents).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind { Rational, Quadratic, ComplexFloat };

// Coefficient domain of one computation: exact rationals, a fixed real or
// imaginary quadratic extension Q(sqrt(d)) with square-free d, or complex
// doubles (numeric contour route and divisor statistics only).
struct FieldSpec {
    FieldKind kind = FieldKind::Rational;
    long long d = 0;  // radicand, Quadratic only

    bool operator==(const FieldSpec&) const = default;
    std::string str() const;
};

FieldSpec field_rational();
FieldSpec field_quadratic(long long d);
FieldSpec field_complex();

bool is_square_free(long long d);

// One coefficient value, closed under arithmetic within a single FieldSpec.
// Rational mode uses `a`; Quadratic mode stores a + b*sqrt(d); ComplexFloat
// mode uses `z`.
class Coeff {
public:
    Coeff() = default;

    static Coeff rational(Rational r);
    static Coeff quadratic(Rational a, Rational b, long long d);
    static Coeff complex(std::complex<double> z);
    static Coeff zero(const FieldSpec& fs);
    static Coeff one(const FieldSpec& fs);
    static Coeff integer(long long n, const FieldSpec& fs);
    static Coeff ratio(long long num, long long den, const FieldSpec& fs);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    // Exact parts; valid in Rational/Quadratic mode only.
    const Rational& rat_part() const { return a_; }
    const Rational& quad_part() const { return b_; }
    std::complex<double> complex_value() const;

    Coeff operator-() const;
    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator/(const Coeff& o) const;  // throws math_error on zero divisor
    Coeff inverse() const;

    bool operator==(const Coeff& o) const;
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    // Deterministic total order within one field (used for canonical maps).
    static int compare(const Coeff& x, const Coeff& y);

    // Numeric embedding: sqrt(d) -> real axis for d > 0, imaginary for d < 0.
    std::complex<double> to_complex() const;
    double abs_approx() const;

    // Exact k-th root when one exists in the same field (used for the
    // constant term of kth_root_unit). Rational mode only; Quadratic values
    // succeed only when purely rational.
    std::optional<Coeff> exact_kth_root(int k) const;

    std::string str() const;  // canonical text form, parseable back

private:
    FieldSpec field_{};
    Rational a_{};   // rational value, or real part over Q(sqrt d)
    Rational b_{};   // sqrt(d) coordinate
    std::complex<double> z_{0.0, 0.0};

    void check_same_field(const Coeff& o) const;
};

// Exact sign of u + v*sqrt(D) with D >= 0 (D = 0 means plain rational).
int quadreal_sign(const Rational& u, const Rational& v, long long D);

std::string rational_str(const Rational& r);
std::string double_str(double x);  // round-trip-exact decimal form

}  // namespace jetnf

#endif
