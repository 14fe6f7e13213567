#pragma once

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace totpos {

using Float = boost::multiprecision::mpfr_float;

// Precision (bits) used when an exact value has to become a float and the
// caller did not say otherwise.
unsigned default_precision();
void set_default_precision(unsigned bits);

unsigned bits_of(const Float& x);
Float make_float(long v, unsigned bits);
Float make_float(double v, unsigned bits);
Float make_float(const mpq_class& q, unsigned bits);
Float make_float(const Float& x, unsigned bits);
Float parse_float(std::string_view text, unsigned bits);

class Scalar;

struct Conversion;

// Exact rational or MPFR float.  The two never mix silently: arithmetic on
// a mixed pair throws, conversion goes through to_float().
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}
    Scalar(int v) : v_(mpq_class(v)) {}
    Scalar(long v) : v_(mpq_class(v)) {}
    Scalar(mpq_class q) : v_(std::move(q)) { std::get<0>(v_).canonicalize(); }
    Scalar(Float f);

    static Scalar rational(long p, long q);
    // Integer, "p/q" or decimal ("0.25", "1e-3") literal, always exact.
    static Scalar parse(std::string_view text);
    static Scalar parse_float(std::string_view text, unsigned bits);

    bool is_exact() const { return v_.index() == 0; }
    const mpq_class& exact() const;
    const Float& flt() const;
    // 0 for exact values.
    unsigned precision() const;

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;
    double to_double() const;

    Conversion to_float(unsigned bits) const;
    Scalar as_float(unsigned bits) const;
    Scalar abs() const;

    // Exact: "p/q" or "p".  Float: shortest decimal that reads back to the
    // same value at the stored precision.
    std::string str() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

private:
    std::variant<mpq_class, Float> v_;
};

struct Conversion {
    Scalar value;
    bool inexact;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar pow_int(const Scalar& x, long e);

// Thrown when an operation would have to combine Exact and Float values.
struct MixedScalars : std::domain_error {
    MixedScalars() : std::domain_error("mixed exact and float scalars") {}
};

} // namespace totpos
