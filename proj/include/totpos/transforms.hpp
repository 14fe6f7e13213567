#pragma once

#include "totpos/checker.hpp"
#include "totpos/entrywise.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace totpos {

enum class Mode { TN, TP, TN_SYM, TP_SYM, HANKEL_FIXED, HANKEL_ALL };

const char* to_string(Mode m);
// Accepts "tn", "tp", "tn-sym", "tp_sym", "hankel-fixed", ... (any case).
Mode parse_mode(std::string_view text);

struct PreserverQuery {
    Mode mode = Mode::TN;
    std::size_t delta = 1;  // ignored for HANKEL_ALL
};

// Admissible exponents of c·x^α.
struct AlphaSet {
    enum class Kind {
        nonneg,            // [0, ∞)
        positive,          // (0, ∞)
        at_least_one,      // [1, ∞)
        one_or_two_up,     // {1} ∪ [2, ∞)
        only_one,          // {1}
        nonneg_integers,   // ℤ≥0
        integers_or_above  // ℤ≥0 ∪ (threshold, ∞)
    };
    Kind kind;
    long threshold = 0;

    bool contains(const Scalar& alpha) const;
    std::string str() const;
};

struct PreserverClass {
    enum class Kind { any_nonneg, any_positive, constants_and_powers, powers_only, mid_convex, absolutely_monotonic };
    Kind kind;
    std::optional<AlphaSet> alpha = std::nullopt;
    bool constants_allowed = false;
    // mid_convex: positive + increasing instead of non-negative + non-decreasing.
    bool strict = false;
    // Only the power functions are classified (Hankel, fixed size).
    bool powers_rule_only = false;

    std::string describe() const;
};

PreserverClass classify_preservers(const PreserverQuery& q);
// Membership of c·x^α (c = 0 is the zero constant).
bool is_power_preserver(const PreserverQuery& q, const Scalar& c, const Scalar& alpha);

struct CounterexampleCertificate {
    Matrix matrix;
    Matrix transformed;
    Certificate source;     // matrix has the property
    Certificate violation;  // transformed does not
    std::string family;
};

struct FalsifyOptions {
    std::size_t budget = 4000;  // candidate sources examined
    std::uint64_t seed = 1;
    std::size_t random_samples = 40;
};

struct FalsifyResult {
    std::optional<CounterexampleCertificate> counterexample;
    std::size_t examined = 0;
    std::size_t domain_errors = 0;
};

// Walks the witness schedule for q (2×2 families, C, N, T, D grids, then
// random samples) and returns the first verified counterexample.
FalsifyResult falsify(const FunctionDescriptor& f, const PreserverQuery& q, const FalsifyOptions& opts = {});

// Products of non-negative elementary bidiagonal factors around a
// non-negative diagonal; exact rationals, verified by is_tn.
Matrix random_tn(std::size_t m, std::size_t n, bool full_rank, std::uint64_t seed);
// Positive parameters on a reduced word for the longest permutation.
Matrix random_tp(std::size_t n, std::uint64_t seed);
// Moment matrix of a random discrete measure on [0, ∞).
Matrix random_hankel_tn(std::size_t n, std::uint64_t seed);

// Sampled checks on a log-spaced grid of (0, ∞).
bool probe_midconvex(const FunctionDescriptor& f, bool strict);
// max |F(xy)F(1) - F(x)F(y)| / max(1, |F(x)F(y)|) over the grid.
double functional_equation_residual(const FunctionDescriptor& f);

} // namespace totpos
