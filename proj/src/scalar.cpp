#include "totpos/scalar.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <ostream>

namespace totpos {

namespace {

std::atomic<unsigned> g_precision{128};

// Precision is set on a fresh value before assignment so the stored value is
// rounded once at the requested width.
Float blank(unsigned bits) {
    Float r;
    mpfr_set_prec(r.backend().data(), static_cast<mpfr_prec_t>(bits));
    return r;
}

mpq_class parse_decimal(std::string_view s) {
    // [-]digits[.digits][(e|E)[+-]digits]
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    mpz_class mant = 0;
    long scale = 0;
    bool any = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, any = true)
        mant = mant * 10 + (s[i] - '0');
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, any = true) {
            mant = mant * 10 + (s[i] - '0');
            --scale;
        }
    }
    if (!any) throw std::invalid_argument("bad number literal '" + std::string(s) + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) eneg = s[i++] == '-';
        long e = 0;
        bool edig = false;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, edig = true) {
            e = e * 10 + (s[i] - '0');
            if (e > 100000) throw std::invalid_argument("exponent too large");
        }
        if (!edig) throw std::invalid_argument("bad exponent in '" + std::string(s) + "'");
        scale += eneg ? -e : e;
    }
    if (i != s.size()) throw std::invalid_argument("bad number literal '" + std::string(s) + "'");
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    mpq_class q = scale >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

} // namespace

unsigned default_precision() { return g_precision.load(); }

void set_default_precision(unsigned bits) {
    if (bits < 53) throw std::invalid_argument("precision must be at least 53 bits");
    g_precision.store(bits);
}

unsigned bits_of(const Float& x) {
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

Float make_float(long v, unsigned bits) {
    Float r = blank(bits);
    mpfr_set_si(r.backend().data(), v, MPFR_RNDN);
    return r;
}

Float make_float(double v, unsigned bits) {
    Float r = blank(bits);
    mpfr_set_d(r.backend().data(), v, MPFR_RNDN);
    return r;
}

Float make_float(const mpq_class& q, unsigned bits) {
    Float r = blank(bits);
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Float make_float(const Float& x, unsigned bits) {
    Float r = blank(bits);
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Float parse_float(std::string_view text, unsigned bits) {
    Float r = blank(bits);
    std::string s(text);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.backend().data(), s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || *end != '\0' || !mpfr_number_p(r.backend().data()))
        throw std::invalid_argument("bad float literal '" + s + "'");
    return r;
}

Scalar::Scalar(Float f) : v_(std::move(f)) {
    if (!mpfr_number_p(std::get<1>(v_).backend().data()))
        throw std::domain_error("non-finite float scalar");
}

Scalar Scalar::rational(long p, long q) {
    if (q == 0) throw std::invalid_argument("zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    return Scalar(r);
}

Scalar Scalar::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Scalar(parse_decimal(text));
    mpq_class p = parse_decimal(text.substr(0, slash));
    mpq_class q = parse_decimal(text.substr(slash + 1));
    if (q <= 0) throw std::invalid_argument("denominator must be positive in '" + std::string(text) + "'");
    return Scalar(mpq_class(p / q));
}

Scalar Scalar::parse_float(std::string_view text, unsigned bits) {
    return Scalar(totpos::parse_float(text, bits));
}

const mpq_class& Scalar::exact() const {
    if (!is_exact()) throw MixedScalars();
    return std::get<0>(v_);
}

const Float& Scalar::flt() const {
    if (is_exact()) throw MixedScalars();
    return std::get<1>(v_);
}

unsigned Scalar::precision() const { return is_exact() ? 0 : bits_of(flt()); }

int Scalar::sign() const {
    if (is_exact()) return sgn(exact());
    return mpfr_sgn(flt().backend().data());
}

bool Scalar::is_integer() const {
    if (is_exact()) return exact().get_den() == 1;
    return mpfr_integer_p(flt().backend().data()) != 0;
}

double Scalar::to_double() const {
    if (is_exact()) return mpq_get_d(exact().get_mpq_t());
    return mpfr_get_d(flt().backend().data(), MPFR_RNDN);
}

Conversion Scalar::to_float(unsigned bits) const {
    Float r = blank(bits);
    int t = is_exact() ? mpfr_set_q(r.backend().data(), exact().get_mpq_t(), MPFR_RNDN)
                       : mpfr_set(r.backend().data(), flt().backend().data(), MPFR_RNDN);
    return {Scalar(std::move(r)), t != 0};
}

Scalar Scalar::as_float(unsigned bits) const { return to_float(bits).value; }

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::str() const {
    if (is_exact()) return exact().get_str();
    const auto* x = flt().backend().data();
    if (mpfr_zero_p(x)) return "0";
    mpfr_exp_t e;
    char* digits = mpfr_get_str(nullptr, &e, 10, 0, x, MPFR_RNDN);
    std::string d(digits);
    mpfr_free_str(digits);
    bool neg = d[0] == '-';
    if (neg) d.erase(0, 1);
    while (d.size() > 1 && d.back() == '0') d.pop_back();
    std::string out = neg ? "-" : "";
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    if (e - 1 != 0) out += "e" + std::to_string(e - 1);
    return out;
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(mpq_class(-exact()));
    return Scalar(Float(-flt()));
}

#define TOTPOS_SCALAR_OP(op)                                              \
    Scalar& Scalar::operator op##=(const Scalar& o) {                     \
        if (is_exact() != o.is_exact()) throw MixedScalars();             \
        if (is_exact())                                                   \
            std::get<0>(v_) op##= o.exact();                              \
        else                                                              \
            std::get<1>(v_) = std::get<1>(v_) op o.flt();                 \
        return *this;                                                     \
    }

TOTPOS_SCALAR_OP(+)
TOTPOS_SCALAR_OP(-)
TOTPOS_SCALAR_OP(*)
#undef TOTPOS_SCALAR_OP

Scalar& Scalar::operator/=(const Scalar& o) {
    if (is_exact() != o.is_exact()) throw MixedScalars();
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (is_exact())
        std::get<0>(v_) /= o.exact();
    else
        std::get<1>(v_) = std::get<1>(v_) / o.flt();
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) throw MixedScalars();
    return a.is_exact() ? a.exact() == b.exact() : a.flt() == b.flt();
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) throw MixedScalars();
    return a.is_exact() ? a.exact() < b.exact() : a.flt() < b.flt();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar pow_int(const Scalar& x, long e) {
    if (e < 0) {
        if (x.is_zero()) throw std::domain_error("zero to a negative power");
        Scalar one = x.is_exact() ? Scalar(1) : Scalar(make_float(1L, x.precision()));
        return one / pow_int(x, -e);
    }
    if (x.is_exact()) {
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), x.exact().get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), x.exact().get_den_mpz_t(), static_cast<unsigned long>(e));
        return Scalar(mpq_class(n, d));
    }
    Float r = make_float(0L, x.precision());
    mpfr_pow_si(r.backend().data(), x.flt().backend().data(), e, MPFR_RNDN);
    return Scalar(std::move(r));
}

} // namespace totpos
