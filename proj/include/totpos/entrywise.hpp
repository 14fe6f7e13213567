#pragma once

#include "totpos/expression.hpp"
#include "totpos/matrix.hpp"

#include <string>
#include <variant>

namespace totpos {

struct ConstantFn {
    Scalar c;
};

// c·x^α on x > 0, with 0^α := 0 for α >= 0 (so 0⁰ = 0).
struct PowerFn {
    Scalar c;
    Scalar alpha;
};

struct ExpressionFn {
    ExprPtr tree;
};

class FunctionDescriptor {
public:
    using Variant = std::variant<ConstantFn, PowerFn, ExpressionFn>;

    FunctionDescriptor(Variant v) : f_(std::move(v)) {}
    static FunctionDescriptor constant(Scalar c) { return {ConstantFn{std::move(c)}}; }
    static FunctionDescriptor power(Scalar c, Scalar alpha);
    static FunctionDescriptor expression(std::string_view text) { return {ExpressionFn{parse_expression(text)}}; }

    const Variant& get() const { return f_; }
    const PowerFn* as_power() const { return std::get_if<PowerFn>(&f_); }
    const ConstantFn* as_constant() const { return std::get_if<ConstantFn>(&f_); }

    // True when exact arguments give exact values.
    bool exact_on_exact() const;
    // Exact in, exact out when exact_on_exact(); otherwise float at `bits`.
    Scalar operator()(const Scalar& x, unsigned bits) const;
    std::string describe() const;

private:
    Variant f_;
};

// Uniform result: exact iff M is exact and F is exact_on_exact(); float
// results use M's precision (the default precision for exact M).
Matrix apply_entrywise(const Matrix& m, const FunctionDescriptor& f);
Matrix hadamard_power(const Matrix& m, const Scalar& alpha);

} // namespace totpos
