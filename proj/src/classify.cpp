#include "totpos/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace totpos {

const char* to_string(Mode m) {
    switch (m) {
    case Mode::TN: return "TN";
    case Mode::TP: return "TP";
    case Mode::TN_SYM: return "TN_SYM";
    case Mode::TP_SYM: return "TP_SYM";
    case Mode::HANKEL_FIXED: return "HANKEL_FIXED";
    case Mode::HANKEL_ALL: return "HANKEL_ALL";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    std::string s;
    for (char c : text) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (Mode m : {Mode::TN, Mode::TP, Mode::TN_SYM, Mode::TP_SYM, Mode::HANKEL_FIXED, Mode::HANKEL_ALL})
        if (s == to_string(m)) return m;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

bool AlphaSet::contains(const Scalar& a) const {
    const int s = a.sign();
    auto cmp = [&](long v) {  // sign of a - v
        Scalar d = a - (a.is_exact() ? Scalar(v) : Scalar(make_float(v, a.precision())));
        return d.sign();
    };
    switch (kind) {
    case Kind::nonneg: return s >= 0;
    case Kind::positive: return s > 0;
    case Kind::at_least_one: return cmp(1) >= 0;
    case Kind::one_or_two_up: return cmp(1) == 0 || cmp(2) >= 0;
    case Kind::only_one: return cmp(1) == 0;
    case Kind::nonneg_integers: return s >= 0 && a.is_integer();
    case Kind::integers_or_above: return (s >= 0 && a.is_integer()) || cmp(threshold) > 0;
    }
    return false;
}

std::string AlphaSet::str() const {
    switch (kind) {
    case Kind::nonneg: return "[0, inf)";
    case Kind::positive: return "(0, inf)";
    case Kind::at_least_one: return "[1, inf)";
    case Kind::one_or_two_up: return "{1} U [2, inf)";
    case Kind::only_one: return "{1}";
    case Kind::nonneg_integers: return "Z>=0";
    case Kind::integers_or_above: return "Z>=0 U (" + std::to_string(threshold) + ", inf)";
    }
    return "?";
}

std::string PreserverClass::describe() const {
    switch (kind) {
    case Kind::any_nonneg: return "any F: [0, inf) -> [0, inf)";
    case Kind::any_positive: return "any F: (0, inf) -> (0, inf)";
    case Kind::mid_convex:
        return strict ? "F positive, increasing and multiplicatively mid-convex on (0, inf)"
                      : "F non-negative, non-decreasing and multiplicatively mid-convex on [0, inf)";
    case Kind::absolutely_monotonic: return "F absolutely monotonic (powers: alpha in Z>=0)";
    default: break;
    }
    std::string powers;
    if (alpha->kind == AlphaSet::Kind::only_one) powers = "F(x) = cx, c > 0";
    else powers = "F(x) = c x^alpha, c > 0, alpha in " + alpha->str();
    if (powers_rule_only) powers += " (power functions only)";
    return constants_allowed ? "constants c >= 0 or " + powers : powers;
}

PreserverClass classify_preservers(const PreserverQuery& q) {
    using K = PreserverClass::Kind;
    using A = AlphaSet::Kind;
    const std::size_t d = q.delta;
    if (q.mode != Mode::HANKEL_ALL && d < 1) throw std::invalid_argument("delta must be at least 1");
    auto cp = [](A a, bool consts) { return PreserverClass{consts ? K::constants_and_powers : K::powers_only, AlphaSet{a}, consts}; };
    switch (q.mode) {
    case Mode::TN:
        if (d == 1) return {K::any_nonneg};
        return cp(d == 2 ? A::nonneg : d == 3 ? A::at_least_one : A::only_one, true);
    case Mode::TP:
        if (d == 1) return {K::any_positive};
        return cp(d == 2 ? A::positive : d == 3 ? A::at_least_one : A::only_one, false);
    case Mode::TN_SYM:
        if (d == 1) return {K::any_nonneg};
        if (d == 2) return {K::mid_convex, std::nullopt, true, false};
        return cp(d == 3 ? A::at_least_one : d == 4 ? A::one_or_two_up : A::only_one, true);
    case Mode::TP_SYM:
        if (d == 1) return {K::any_positive};
        if (d == 2) return {K::mid_convex, std::nullopt, false, true};
        return cp(d == 3 ? A::at_least_one : d == 4 ? A::one_or_two_up : A::only_one, false);
    case Mode::HANKEL_FIXED: {
        if (d == 1) return {K::any_nonneg};
        PreserverClass c{K::constants_and_powers, AlphaSet{A::integers_or_above, static_cast<long>(d) - 2}, true};
        c.powers_rule_only = true;
        return c;
    }
    case Mode::HANKEL_ALL: return {K::absolutely_monotonic, AlphaSet{A::nonneg_integers}, true};
    }
    throw std::invalid_argument("unknown mode");
}

bool is_power_preserver(const PreserverQuery& q, const Scalar& c, const Scalar& alpha) {
    const PreserverClass cls = classify_preservers(q);
    using K = PreserverClass::Kind;
    if (c.sign() < 0) return false;
    if (c.sign() == 0) {
        switch (cls.kind) {
        case K::any_positive:
        case K::powers_only: return false;
        case K::mid_convex: return !cls.strict;
        default: return true;
        }
    }
    switch (cls.kind) {
    case K::any_nonneg: return alpha.sign() >= 0;
    case K::any_positive: return true;
    case K::mid_convex: return cls.strict ? alpha.sign() > 0 : alpha.sign() >= 0;
    default: return cls.alpha->contains(alpha);
    }
}

namespace {

std::vector<Scalar> probe_grid(unsigned bits) {
    std::vector<Scalar> g;
    for (int k = -12; k <= 12; ++k) g.emplace_back(make_float(std::pow(10.0, k / 4.0), bits));
    return g;
}

} // namespace

bool probe_midconvex(const FunctionDescriptor& f, bool strict) {
    const unsigned bits = default_precision();
    const std::vector<Scalar> g = probe_grid(bits);
    const long double eps = sign_epsilon(bits);
    std::vector<long double> v;
    try {
        for (const auto& x : g) v.push_back(mpfr_get_ld(f(x, bits).as_float(bits).flt().backend().data(), MPFR_RNDN));
    } catch (const DomainError&) {
        return false;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (strict ? v[i] <= 0 : v[i] < 0) return false;
        if (i && (strict ? v[i] <= v[i - 1] : v[i] < v[i - 1] - eps * std::fabs(v[i]))) return false;
    }
    // Grid points are geometric, so g[i] and g[j] have midpoint g[(i+j)/2].
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 2; j < v.size(); j += 2) {
            long double mid = v[(i + j) / 2];
            if (mid * mid > v[i] * v[j] * (1 + 1e-12L)) return false;
        }
    return true;
}

double functional_equation_residual(const FunctionDescriptor& f) {
    const unsigned bits = default_precision();
    const std::vector<Scalar> g = probe_grid(bits);
    const Scalar one(make_float(1L, bits));
    const Scalar f1 = f(one, bits).as_float(bits);
    double worst = 0;
    for (const auto& x : g)
        for (const auto& y : g) {
            Scalar lhs = f(x * y, bits).as_float(bits) * f1;
            Scalar rhs = f(x, bits).as_float(bits) * f(y, bits).as_float(bits);
            double scale = std::max(1.0, std::abs(rhs.to_double()));
            worst = std::max(worst, std::abs((lhs - rhs).to_double()) / scale);
        }
    return worst;
}

} // namespace totpos
