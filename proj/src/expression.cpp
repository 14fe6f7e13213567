#include "totpos/expression.hpp"

#include <cctype>

namespace totpos {

namespace {

ExprPtr node(Expr::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    return std::make_shared<const Expr>(Expr{k, {}, Scalar(0), std::move(l), std::move(r)});
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) e = node(Expr::Kind::add, e, term());
            else if (eat('-')) e = node(Expr::Kind::sub, e, term());
            else return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (eat('*')) e = node(Expr::Kind::mul, e, factor());
            else if (eat('/')) e = node(Expr::Kind::div, e, factor());
            else return e;
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (eat('^')) return node(Expr::Kind::pow, b, factor());
        return b;
    }

    bool digit_at(std::size_t i) const {
        return i < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i])) || s_[i] == '.');
    }

    ExprPtr number() {
        std::size_t start = pos_;
        if (s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = save;  // "2exp(x)" style juxtaposition is then rejected by the caller
            }
        }
        std::string text(s_.substr(start, pos_ - start));
        Scalar v;
        try {
            v = Scalar::parse(text);
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed number '" + text + "'", start);
        }
        return std::make_shared<const Expr>(Expr{Expr::Kind::number, text, v, nullptr, nullptr});
    }

    ExprPtr base() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (digit_at(pos_) || (c == '-' && digit_at(pos_ + 1))) return number();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == "x") return node(Expr::Kind::var);
            Expr::Kind k;
            if (id == "exp") k = Expr::Kind::exp;
            else if (id == "log") k = Expr::Kind::log;
            else if (id == "sqrt") k = Expr::Kind::sqrt;
            else throw ParseError("unknown identifier '" + std::string(id) + "'", start);
            if (!eat('(')) throw ParseError("expected '(' after " + std::string(id), pos_);
            ExprPtr arg = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return node(k, arg);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }
};

int prec(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::pow: return 3;
    case Expr::Kind::number: return e.value.sign() < 0 ? 0 : 4;
    default: return 4;
    }
}

std::string wrap(const Expr& e, bool paren) {
    std::string s = print_expression(e);
    return paren ? "(" + s + ")" : s;
}

struct NotExact {};

Scalar eval(const Expr& e, const Scalar& x, unsigned bits, bool exact);

Scalar power(const Scalar& b, const Scalar& p, unsigned bits, bool exact) {
    if (b.is_zero()) {
        if (p.sign() < 0) throw DomainError("zero to a negative power");
        return b;  // 0^0 = 0 by convention, 0^p = 0 otherwise
    }
    if (p.is_integer()) {
        long n = p.is_exact() ? p.exact().get_num().get_si() : static_cast<long>(p.to_double());
        if (std::abs(p.to_double()) < 1e6) return pow_int(b, n);
    }
    if (exact) throw NotExact{};
    if (b.sign() < 0) throw DomainError("negative base with non-integer exponent");
    Float r = make_float(0L, bits);
    mpfr_pow(r.backend().data(), b.flt().backend().data(), p.flt().backend().data(), MPFR_RNDN);
    return Scalar(std::move(r));
}

Scalar eval(const Expr& e, const Scalar& x, unsigned bits, bool exact) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number: return exact ? e.value : e.value.as_float(bits);
    case K::var: return x;
    case K::add: return eval(*e.lhs, x, bits, exact) + eval(*e.rhs, x, bits, exact);
    case K::sub: return eval(*e.lhs, x, bits, exact) - eval(*e.rhs, x, bits, exact);
    case K::mul: return eval(*e.lhs, x, bits, exact) * eval(*e.rhs, x, bits, exact);
    case K::div: {
        Scalar d = eval(*e.rhs, x, bits, exact);
        if (d.is_zero()) throw DomainError("division by zero");
        return eval(*e.lhs, x, bits, exact) / d;
    }
    case K::pow: return power(eval(*e.lhs, x, bits, exact), eval(*e.rhs, x, bits, exact), bits, exact);
    default: break;
    }
    if (exact) throw NotExact{};
    Scalar a = eval(*e.lhs, x, bits, false);
    Float r = make_float(0L, bits);
    const auto* in = a.flt().backend().data();
    switch (e.kind) {
    case K::exp: mpfr_exp(r.backend().data(), in, MPFR_RNDN); break;
    case K::log:
        if (a.sign() <= 0) throw DomainError("log of a non-positive number");
        mpfr_log(r.backend().data(), in, MPFR_RNDN);
        break;
    default:
        if (a.sign() < 0) throw DomainError("sqrt of a negative number");
        mpfr_sqrt(r.backend().data(), in, MPFR_RNDN);
        break;
    }
    if (!mpfr_number_p(r.backend().data())) throw DomainError("overflow in function evaluation");
    return Scalar(std::move(r));
}

bool has_var(const Expr& e) {
    if (e.kind == Expr::Kind::var) return true;
    return (e.lhs && has_var(*e.lhs)) || (e.rhs && has_var(*e.rhs));
}

} // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).run(); }

std::string print_expression(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number: return e.literal;
    case K::var: return "x";
    case K::exp: return "exp(" + print_expression(*e.lhs) + ")";
    case K::log: return "log(" + print_expression(*e.lhs) + ")";
    case K::sqrt: return "sqrt(" + print_expression(*e.lhs) + ")";
    default: break;
    }
    const int p = prec(e);
    const char* op = e.kind == K::add ? "+" : e.kind == K::sub ? "-" : e.kind == K::mul ? "*" : e.kind == K::div ? "/" : "^";
    if (e.kind == K::pow) return wrap(*e.lhs, prec(*e.lhs) <= p) + op + wrap(*e.rhs, prec(*e.rhs) < p);
    return wrap(*e.lhs, prec(*e.lhs) < p) + op + wrap(*e.rhs, prec(*e.rhs) <= p);
}

bool is_rational_closed(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number:
    case K::var: return true;
    case K::exp:
    case K::log:
    case K::sqrt: return false;
    case K::pow: {
        if (!is_rational_closed(*e.lhs) || !is_rational_closed(*e.rhs) || has_var(*e.rhs)) return false;
        try {
            return eval(*e.rhs, Scalar(0), 0, true).is_integer();
        } catch (...) {
            return false;
        }
    }
    default: return is_rational_closed(*e.lhs) && is_rational_closed(*e.rhs);
    }
}

Scalar evaluate(const Expr& e, const Scalar& x, unsigned bits) {
    if (x.is_exact() && is_rational_closed(e)) {
        try {
            return eval(e, x, bits, true);
        } catch (const NotExact&) {
        }
    }
    return eval(e, x.is_exact() ? x.as_float(bits) : x, bits, false);
}

} // namespace totpos
