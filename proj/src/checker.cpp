#include "totpos/checker.hpp"

#include <algorithm>
#include <cmath>

namespace totpos {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Property p) {
    switch (p) {
    case Property::TN: return "TN";
    case Property::TP: return "TP";
    case Property::TN_r: return "TN_r";
    case Property::TP_r: return "TP_r";
    case Property::PD: return "PD";
    }
    return "?";
}

SignedValue signed_minor(const Matrix& m, const MinorIndex& idx, std::optional<double> tol) {
    idx.validate(m.rows(), m.cols());
    Matrix sub = m.submatrix(idx.rows, idx.cols);
    if (m.is_exact()) {
        Scalar v = det(sub);
        int s = v.sign();
        return {std::move(v), s};
    }
    const unsigned bits = m.precision();
    Scalar v = det(sub, 2 * bits);
    long double tau = tol ? static_cast<long double>(*tol) : sign_epsilon(bits) * minor_scale(sub);
    long double mag = std::fabs(mpfr_get_ld(v.flt().backend().data(), MPFR_RNDN));
    if (mag <= tau) return {std::move(v), std::nullopt};
    int s = v.sign();
    return {std::move(v), s};
}

namespace {

std::size_t effective_order(const CheckRequest& req) {
    const std::size_t full = std::min(req.matrix.rows(), req.matrix.cols());
    if (!req.order) return full;
    if (*req.order < 1 || *req.order > full) throw std::invalid_argument("order r must satisfy 1 <= r <= min(m, n)");
    return *req.order;
}

// Walks minors of size 1..r; `strict` means TP-style positivity.
Certificate scan(const CheckRequest& req, bool strict, bool contiguous) {
    const Matrix& m = req.matrix;
    const std::size_t r = effective_order(req);
    if (!contiguous && r > req.size_guard)
        throw SizeGuardExceeded("full minor enumeration refused for minors up to " + std::to_string(r) + "x" +
                                std::to_string(r) + " (size guard " + std::to_string(req.size_guard) + ")");
    Certificate cert;
    cert.property = strict ? (req.order ? Property::TP_r : Property::TP) : (req.order ? Property::TN_r : Property::TN);
    cert.order = req.order;
    cert.contiguous_shortcut = contiguous;
    cert.deterministic = req.deterministic;
    std::optional<MinorWitness> unsure;
    for (std::size_t k = 1; k <= r; ++k) {
        for (const auto& idx : enumerate_minors(m.rows(), m.cols(), k, contiguous)) {
            SignedValue sv = signed_minor(m, idx, req.tol);
            ++cert.minors_checked;
            bool bad = sv.sign && (strict ? *sv.sign <= 0 : *sv.sign < 0);
            if (bad) {
                cert.verdict = Verdict::fails;
                cert.witness = MinorWitness{idx, std::move(sv.value)};
                return cert;
            }
            bool undecided = !sv.sign && (strict || req.boundary == BoundaryPolicy::strict);
            if (undecided && !unsure) unsure = MinorWitness{idx, std::move(sv.value)};
        }
    }
    if (unsure) {
        cert.verdict = Verdict::inconclusive;
        cert.witness = std::move(unsure);
    }
    return cert;
}

bool float_close(const Scalar& a, const Scalar& b) {
    if (a.is_exact()) return a == b;
    unsigned bits = std::max(a.precision(), b.precision());
    long double x = mpfr_get_ld(a.flt().backend().data(), MPFR_RNDN);
    long double y = mpfr_get_ld(b.flt().backend().data(), MPFR_RNDN);
    return std::fabs(x - y) <= sign_epsilon(bits) * (std::fabs(x) + std::fabs(y));
}

void require_symmetric(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("positive definiteness needs a square matrix");
    if (!structure_tests(m).symmetric) throw std::invalid_argument("positive definiteness needs a symmetric matrix");
}

} // namespace

Certificate is_tn(const CheckRequest& req) { return scan(req, false, false); }

Certificate is_tp(const CheckRequest& req) { return scan(req, true, !req.full_enumeration); }

Certificate is_tn(const Matrix& m) { return is_tn(CheckRequest{m}); }

Certificate is_tp(const Matrix& m) {
    CheckRequest req{m};
    req.property = Property::TP;
    return is_tp(req);
}

Certificate is_pos_def(const Matrix& m) {
    require_symmetric(m);
    Certificate cert;
    cert.property = Property::PD;
    std::optional<MinorWitness> unsure;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        MinorIndex idx;
        for (std::size_t i = 0; i < k; ++i) {
            idx.rows.push_back(i);
            idx.cols.push_back(i);
        }
        SignedValue sv = signed_minor(m, idx);
        ++cert.minors_checked;
        if (sv.sign && *sv.sign <= 0) {
            cert.verdict = Verdict::fails;
            cert.witness = MinorWitness{idx, std::move(sv.value)};
            return cert;
        }
        if (!sv.sign && !unsure) unsure = MinorWitness{idx, std::move(sv.value)};
    }
    if (unsure) {
        cert.verdict = Verdict::inconclusive;
        cert.witness = std::move(unsure);
    }
    return cert;
}

Matrix truncation(const Matrix& m) {
    if (m.rows() < 2 || m.cols() < 2) throw std::invalid_argument("truncation needs at least 2 rows and columns");
    return m.block(1, 0, m.rows() - 1, m.cols() - 1);
}

Certificate is_tp_hankel(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("Hankel TP test needs a square matrix");
    if (!structure_tests(m).hankel) throw std::invalid_argument("matrix is not Hankel");
    Certificate cert = is_pos_def(m);
    cert.property = Property::TP;
    if (cert.fails() || m.rows() == 1) return cert;
    Certificate inner = is_pos_def(truncation(m));
    cert.minors_checked += inner.minors_checked;
    auto shifted = [](MinorWitness w) {
        for (auto& i : w.index.rows) ++i;
        return w;
    };
    if (inner.fails()) {
        cert.verdict = Verdict::fails;
        cert.witness = shifted(*inner.witness);
    } else if (inner.verdict == Verdict::inconclusive && cert.holds()) {
        cert.verdict = Verdict::inconclusive;
        cert.witness = shifted(*inner.witness);
    }
    return cert;
}

Certificate check(const CheckRequest& req) {
    switch (req.property) {
    case Property::TN:
    case Property::TN_r: return is_tn(req);
    case Property::TP:
    case Property::TP_r: return is_tp(req);
    case Property::PD: return is_pos_def(req.matrix);
    }
    throw std::invalid_argument("unknown property");
}

Structure structure_tests(const Matrix& m) {
    Structure s;
    s.positive_entries = std::all_of(m.entries().begin(), m.entries().end(), [](const Scalar& x) { return x.sign() > 0; });
    s.symmetric = m.square();
    for (std::size_t i = 0; s.symmetric && i < m.rows(); ++i)
        for (std::size_t j = i + 1; s.symmetric && j < m.cols(); ++j) s.symmetric = float_close(m(i, j), m(j, i));
    s.hankel = true;
    for (std::size_t i = 1; s.hankel && i < m.rows(); ++i)
        for (std::size_t j = 0; s.hankel && j + 1 < m.cols(); ++j) s.hankel = float_close(m(i, j), m(i - 1, j + 1));
    return s;
}

} // namespace totpos
