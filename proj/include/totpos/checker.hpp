#pragma once

#include "totpos/numkernel.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace totpos {

enum class Verdict { holds, fails, inconclusive };
enum class Property { TN, TP, TN_r, TP_r, PD };

// What to do with a float minor whose magnitude is within tolerance on a
// non-strict (TN) check.  TP and PD checks always call such minors
// inconclusive.
enum class BoundaryPolicy { zero, strict };

const char* to_string(Verdict v);
const char* to_string(Property p);

struct MinorWitness {
    MinorIndex index;
    Scalar value;
};

struct Certificate {
    Verdict verdict = Verdict::holds;
    std::optional<MinorWitness> witness;
    Property property = Property::TN;
    std::optional<std::size_t> order;
    bool contiguous_shortcut = false;
    bool deterministic = true;
    std::size_t minors_checked = 0;

    bool holds() const { return verdict == Verdict::holds; }
    bool fails() const { return verdict == Verdict::fails; }
};

struct CheckRequest {
    Matrix matrix;
    Property property = Property::TN;
    std::optional<std::size_t> order = std::nullopt;
    bool deterministic = true;
    // TP only: skip the contiguous-minor shortcut.
    bool full_enumeration = false;
    BoundaryPolicy boundary = BoundaryPolicy::zero;
    // Absolute float tolerance; default is sign_epsilon(p) times the
    // minor's row-norm scale.
    std::optional<double> tol = std::nullopt;
    // Largest min(m, n) accepted for full enumeration.
    std::size_t size_guard = 10;
};

struct SizeGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Certificate is_tn(const CheckRequest& req);
Certificate is_tp(const CheckRequest& req);
Certificate is_tn(const Matrix& m);
Certificate is_tp(const Matrix& m);
Certificate is_tp_hankel(const Matrix& m);
Certificate is_pos_def(const Matrix& m);
// Dispatch on req.property.
Certificate check(const CheckRequest& req);

struct Structure {
    bool symmetric = false;
    bool hankel = false;
    bool positive_entries = false;
};

Structure structure_tests(const Matrix& m);
// Rows 1.. and columns ..n-2: first row and last column removed.
Matrix truncation(const Matrix& m);

// Sign of a minor value under the float tolerance model: -1, 0, +1, or
// nullopt when |v| <= tau for a float value.
struct SignedValue {
    Scalar value;
    std::optional<int> sign;
};
SignedValue signed_minor(const Matrix& m, const MinorIndex& idx, std::optional<double> tol = std::nullopt);

} // namespace totpos
