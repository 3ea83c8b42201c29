#include "jetnf/coeff.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace jetnf {

std::string FieldSpec::str() const {
    switch (kind) {
        case FieldKind::Rational: return "rat";
        case FieldKind::Quadratic: return "quad:" + std::to_string(d);
        case FieldKind::ComplexFloat: return "float";
    }
    return "?";
}

FieldSpec field_rational() { return FieldSpec{FieldKind::Rational, 0}; }

FieldSpec field_quadratic(long long d) {
    if (d == 0 || d == 1 || !is_square_free(d))
        throw input_error("quadratic radicand must be square-free and not 0 or 1");
    return FieldSpec{FieldKind::Quadratic, d};
}

FieldSpec field_complex() { return FieldSpec{FieldKind::ComplexFloat, 0}; }

bool is_square_free(long long d) {
    if (d == 0) return false;
    long long n = d < 0 ? -d : d;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

Coeff Coeff::rational(Rational r) {
    Coeff c;
    c.field_ = field_rational();
    c.a_ = std::move(r);
    return c;
}

Coeff Coeff::quadratic(Rational a, Rational b, long long d) {
    Coeff c;
    c.field_ = field_quadratic(d);
    c.a_ = std::move(a);
    c.b_ = std::move(b);
    return c;
}

Coeff Coeff::complex(std::complex<double> z) {
    Coeff c;
    c.field_ = field_complex();
    c.z_ = z;
    return c;
}

Coeff Coeff::zero(const FieldSpec& fs) { return integer(0, fs); }
Coeff Coeff::one(const FieldSpec& fs) { return integer(1, fs); }

Coeff Coeff::integer(long long n, const FieldSpec& fs) {
    Coeff c;
    c.field_ = fs;
    if (fs.kind == FieldKind::ComplexFloat)
        c.z_ = {static_cast<double>(n), 0.0};
    else
        c.a_ = Rational(n);
    return c;
}

Coeff Coeff::ratio(long long num, long long den, const FieldSpec& fs) {
    if (den == 0) throw input_error("zero denominator");
    Coeff c;
    c.field_ = fs;
    if (fs.kind == FieldKind::ComplexFloat)
        c.z_ = {static_cast<double>(num) / static_cast<double>(den), 0.0};
    else
        c.a_ = Rational(BigInt(num), BigInt(den));
    return c;
}

bool Coeff::is_zero() const {
    switch (field_.kind) {
        case FieldKind::Rational: return a_.is_zero();
        case FieldKind::Quadratic: return a_.is_zero() && b_.is_zero();
        case FieldKind::ComplexFloat: return z_ == std::complex<double>(0.0, 0.0);
    }
    return false;
}

bool Coeff::is_one() const {
    switch (field_.kind) {
        case FieldKind::Rational: return a_ == 1;
        case FieldKind::Quadratic: return a_ == 1 && b_.is_zero();
        case FieldKind::ComplexFloat: return z_ == std::complex<double>(1.0, 0.0);
    }
    return false;
}

std::complex<double> Coeff::complex_value() const {
    if (field_.kind != FieldKind::ComplexFloat)
        throw math_error("complex_value on exact coefficient");
    return z_;
}

void Coeff::check_same_field(const Coeff& o) const {
    if (!(field_ == o.field_))
        throw math_error("coefficient field mismatch: " + field_.str() + " vs " + o.field_.str());
}

Coeff Coeff::operator-() const {
    Coeff r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    r.z_ = -r.z_;
    return r;
}

Coeff Coeff::operator+(const Coeff& o) const {
    check_same_field(o);
    Coeff r = *this;
    if (field_.kind == FieldKind::ComplexFloat) {
        r.z_ += o.z_;
    } else {
        r.a_ += o.a_;
        r.b_ += o.b_;
    }
    return r;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
    check_same_field(o);
    Coeff r;
    r.field_ = field_;
    switch (field_.kind) {
        case FieldKind::Rational:
            r.a_ = a_ * o.a_;
            break;
        case FieldKind::Quadratic:
            r.a_ = a_ * o.a_ + b_ * o.b_ * field_.d;
            r.b_ = a_ * o.b_ + b_ * o.a_;
            break;
        case FieldKind::ComplexFloat:
            r.z_ = z_ * o.z_;
            break;
    }
    return r;
}

Coeff Coeff::inverse() const {
    if (is_zero()) throw math_error("division by zero coefficient");
    Coeff r;
    r.field_ = field_;
    switch (field_.kind) {
        case FieldKind::Rational:
            r.a_ = Rational(1) / a_;
            break;
        case FieldKind::Quadratic: {
            // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2); the norm is
            // nonzero because d is square-free (sqrt d irrational).
            Rational norm = a_ * a_ - b_ * b_ * field_.d;
            r.a_ = a_ / norm;
            r.b_ = -b_ / norm;
            break;
        }
        case FieldKind::ComplexFloat:
            r.z_ = 1.0 / z_;
            break;
    }
    return r;
}

Coeff Coeff::operator/(const Coeff& o) const { return *this * o.inverse(); }

bool Coeff::operator==(const Coeff& o) const {
    if (!(field_ == o.field_)) return false;
    if (field_.kind == FieldKind::ComplexFloat) return z_ == o.z_;
    return a_ == o.a_ && b_ == o.b_;
}

int Coeff::compare(const Coeff& x, const Coeff& y) {
    x.check_same_field(y);
    if (x.field_.kind == FieldKind::ComplexFloat) {
        if (x.z_.real() != y.z_.real()) return x.z_.real() < y.z_.real() ? -1 : 1;
        if (x.z_.imag() != y.z_.imag()) return x.z_.imag() < y.z_.imag() ? -1 : 1;
        return 0;
    }
    if (x.a_ != y.a_) return x.a_ < y.a_ ? -1 : 1;
    if (x.b_ != y.b_) return x.b_ < y.b_ ? -1 : 1;
    return 0;
}

std::complex<double> Coeff::to_complex() const {
    switch (field_.kind) {
        case FieldKind::Rational:
            return {a_.convert_to<double>(), 0.0};
        case FieldKind::Quadratic: {
            double a = a_.convert_to<double>();
            double b = b_.convert_to<double>();
            double s = std::sqrt(std::abs(static_cast<double>(field_.d)));
            if (field_.d > 0) return {a + b * s, 0.0};
            return {a, b * s};
        }
        case FieldKind::ComplexFloat:
            return z_;
    }
    return {};
}

double Coeff::abs_approx() const { return std::abs(to_complex()); }

namespace {

// Exact k-th root of a big integer, if one exists.
std::optional<BigInt> int_kth_root(const BigInt& n, int k) {
    if (n < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = int_kth_root(-n, k);
        if (!r) return std::nullopt;
        return -*r;
    }
    if (n == 0 || n == 1) return n;
    BigInt lo = 1, hi = 1;
    while (boost::multiprecision::pow(hi, static_cast<unsigned>(k)) < n) hi <<= 1;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, static_cast<unsigned>(k)) < n)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (boost::multiprecision::pow(lo, static_cast<unsigned>(k)) == n) return lo;
    return std::nullopt;
}

}  // namespace

std::optional<Coeff> Coeff::exact_kth_root(int k) const {
    if (k <= 0) throw input_error("root index must be positive");
    if (k == 1 || is_one()) return *this;
    switch (field_.kind) {
        case FieldKind::ComplexFloat:
            return Coeff::complex(std::pow(z_, 1.0 / k));
        case FieldKind::Rational:
        case FieldKind::Quadratic: {
            if (!b_.is_zero()) return std::nullopt;
            auto num = int_kth_root(numerator(a_), k);
            auto den = int_kth_root(denominator(a_), k);
            if (!num || !den) return std::nullopt;
            Coeff r = *this;
            r.a_ = Rational(*num, *den);
            r.b_ = 0;
            return r;
        }
    }
    return std::nullopt;
}

int quadreal_sign(const Rational& u, const Rational& v, long long D) {
    if (D < 0) throw math_error("quadreal_sign needs a nonnegative radicand");
    int su = u.sign();
    if (D == 0 || v.is_zero()) return su;
    int sv = v.sign();
    if (su == 0) return sv;
    if (su == sv) return su;
    // Opposite signs: compare |u| against |v| sqrt(D) via squares.
    Rational lhs = u * u;
    Rational rhs = v * v * D;
    if (lhs == rhs) return 0;
    return lhs > rhs ? su : sv;
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string double_str(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string Coeff::str() const {
    switch (field_.kind) {
        case FieldKind::Rational:
            return rational_str(a_);
        case FieldKind::Quadratic: {
            if (b_.is_zero()) return rational_str(a_);
            std::string s;
            if (!a_.is_zero()) s = rational_str(a_);
            Rational babs = b_ < 0 ? Rational(-b_) : b_;
            if (!a_.is_zero())
                s += (b_ < 0) ? "-" : "+";
            else if (b_ < 0)
                s += "-";
            if (babs != 1) s += rational_str(babs) + "*";
            s += "sqrt(" + std::to_string(field_.d) + ")";
            return s;
        }
        case FieldKind::ComplexFloat: {
            if (z_.imag() == 0.0) return double_str(z_.real());
            return "(" + double_str(z_.real()) + "," + double_str(z_.imag()) + ")";
        }
    }
    return "?";
}

}  // namespace jetnf
