#include "totpos/entrywise.hpp"

namespace totpos {

FunctionDescriptor FunctionDescriptor::power(Scalar c, Scalar alpha) {
    if (c.sign() <= 0) throw std::invalid_argument("power descriptor needs c > 0");
    return {PowerFn{std::move(c), std::move(alpha)}};
}

bool FunctionDescriptor::exact_on_exact() const {
    return std::visit(
        [](const auto& f) -> bool {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantFn>) return f.c.is_exact();
            else if constexpr (std::is_same_v<T, PowerFn>) return f.c.is_exact() && f.alpha.is_exact() && f.alpha.is_integer();
            else return is_rational_closed(*f.tree);
        },
        f_);
}

Scalar FunctionDescriptor::operator()(const Scalar& x, unsigned bits) const {
    const bool exact = x.is_exact() && exact_on_exact();
    auto lift = [&](const Scalar& s) { return exact ? s : s.as_float(bits); };
    if (const auto* k = as_constant()) return lift(k->c);
    if (const auto* p = as_power()) {
        if (x.sign() < 0) throw DomainError("power map evaluated at a negative number");
        if (x.is_zero()) {
            if (p->alpha.sign() < 0) throw DomainError("zero to a negative power");
            return lift(Scalar(0));
        }
        if (exact) return p->c * pow_int(x, p->alpha.exact().get_num().get_si());
        Scalar xf = x.as_float(bits);
        Float r = make_float(0L, bits);
        Float a = p->alpha.as_float(bits).flt();
        mpfr_pow(r.backend().data(), xf.flt().backend().data(), a.backend().data(), MPFR_RNDN);
        if (!mpfr_number_p(r.backend().data())) throw DomainError("overflow in power map");
        return p->c.as_float(bits) * Scalar(std::move(r));
    }
    const Expr& tree = *std::get<ExpressionFn>(f_).tree;
    Scalar v = evaluate(tree, exact ? x : x.as_float(bits), bits);
    return v.is_exact() == exact ? v : v.as_float(bits);
}

std::string FunctionDescriptor::describe() const {
    if (const auto* k = as_constant()) return "F(x) = " + k->c.str();
    if (const auto* p = as_power()) return "F(x) = " + p->c.str() + "*x^" + p->alpha.str();
    return "F(x) = " + print_expression(*std::get<ExpressionFn>(f_).tree);
}

Matrix apply_entrywise(const Matrix& m, const FunctionDescriptor& f) {
    const unsigned bits = m.is_exact() ? default_precision() : m.precision();
    return m.map([&](const Scalar& x) { return f(x, bits); });
}

Matrix hadamard_power(const Matrix& m, const Scalar& alpha) {
    for (const auto& x : m.entries())
        if (x.sign() < 0) throw DomainError("Hadamard power of a matrix with a negative entry");
    return apply_entrywise(m, FunctionDescriptor::power(Scalar(1), alpha));
}

} // namespace totpos
