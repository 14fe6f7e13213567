#pragma once

#include "totpos/matrix.hpp"

#include <cstdint>
#include <vector>

namespace totpos {

// [[x, xy], [1, y]] and [[xy, x], [y, 1]], x, y >= 0; both singular TN.
Matrix family_A(const Scalar& x, const Scalar& y);
Matrix family_B(const Scalar& x, const Scalar& y);

// TP neighbours of the above: [[ax, axy], [a-eps, ay]] and
// [[axy, ax], [ay, a+eps]] with x, y > 0 and 0 < eps < a.
Matrix family_A_tp(const Scalar& a, const Scalar& x, const Scalar& y, const Scalar& eps);
Matrix family_B_tp(const Scalar& a, const Scalar& x, const Scalar& y, const Scalar& eps);

// [[y, x], [x, y]] with y > x > 0.
Matrix monotone_pair(const Scalar& x, const Scalar& y);

// [[x, sqrt(xy)], [sqrt(xy), y]].  Exact when xy is a rational square,
// otherwise float at `bits`.
Matrix sym_rank1(const Scalar& x, const Scalar& y, unsigned bits = 0);
// Same matrix for x = u², y = v², always exact for exact u, v.
Matrix sym_rank1_squared(const Scalar& u, const Scalar& v);

// 3×3: ones on the diagonal, 1/sqrt(2) next to it, zero corners.
Matrix matrix_C(unsigned bits = 0);

// J + x·M(eps) (4×4) with eps in (0, 1), x >= 0.
Matrix family_N(const Scalar& eps, const Scalar& x);
// J + x·H (5×5), x >= 0.
Matrix family_T(const Scalar& x);

// (1 + x^{i+j}), i, j < size, x in (0, 1).
Matrix moment_two_point(const Scalar& x, std::size_t size);
// (sum_k w_k t_k^{i+j}) for a discrete measure on [0, ∞); t^0 = 1 here.
Matrix moment_matrix(const std::vector<Scalar>& nodes, const std::vector<Scalar>& weights, std::size_t size);

// [[x+eps, sqrt(xy)+eps], [sqrt(xy)+eps, y+eps]], x != y, all positive.
Matrix family_M_tp(const Scalar& x, const Scalar& y, const Scalar& eps, unsigned bits = 0);

struct VasudevaSample {
    std::vector<Matrix> p_prime;         // [[a, b], [b, a]], a > b > 0
    std::vector<Matrix> p_double_prime;  // [[a, b], [b, c]], ac > b², rational
};
VasudevaSample vasudeva_sets(std::size_t count, std::uint64_t seed);

struct FormulaCheck {
    double measured;
    double predicted;
    double abs_error;
    // abs_error / |predicted|, or abs_error when predicted is 0.
    double rel_error;
};
// det(c·C^∘α) against c³(1 - 2^{1-α}).
FormulaCheck verify_detC_formula(const Scalar& c, const Scalar& alpha, unsigned bits = 0);

struct ExpansionFit {
    double cubic, cubic_predicted, cubic_rel_error;
    double quartic, quartic_predicted, quartic_rel_error;
};
// Least-squares fit of det N(eps, x)^∘α ≈ c3 x³ + c4 x⁴ over the samples.
ExpansionFit verify_N_expansion(const Scalar& eps, const Scalar& alpha, const std::vector<Scalar>& xs,
                                unsigned bits = 0);

} // namespace totpos
