#include "totpos/completion.hpp"

#include <algorithm>
#include <cmath>

namespace totpos {

namespace {

Float flog(const Float& x) {
    Float r = make_float(0L, bits_of(x));
    mpfr_log(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Float fexp(const Float& x) {
    Float r = make_float(0L, bits_of(x));
    mpfr_exp(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Float fpow(const Float& x, const Float& y) {
    Float r = make_float(0L, std::max(bits_of(x), bits_of(y)));
    mpfr_pow(r.backend().data(), x.backend().data(), y.backend().data(), MPFR_RNDN);
    return r;
}

Scalar fs(Float f) { return Scalar(std::move(f)); }

// Nodes (or exponents) filling positions 0..len-1 with x at i and y at j,
// continuing the geometric (or arithmetic) progression through x and y.
std::vector<Scalar> fill(std::size_t len, std::size_t i, std::size_t j, const Float& x, const Float& y, bool geometric) {
    const unsigned bits = bits_of(x);
    std::vector<Scalar> out;
    for (std::size_t t = 0; t < len; ++t) {
        Float w = make_float(static_cast<long>(t) - static_cast<long>(i), bits) / make_float(static_cast<long>(j - i), bits);
        if (t == i) out.emplace_back(x);
        else if (t == j) out.emplace_back(y);
        else out.emplace_back(geometric ? Float(x * fpow(Float(y / x), w)) : Float(x + (y - x) * w));
    }
    return out;
}

struct TwoNode {
    Float mu, u1, u2, a1, a2;
    std::string tag;
};

TwoNode solve_2x2(const Matrix& A, unsigned bits) {
    const Scalar &a = A(0, 0), &b = A(0, 1), &c = A(1, 0), &d = A(1, 1);
    auto F = [bits](const Scalar& s) { return s.as_float(bits).flt(); };
    const Float one = make_float(1L, bits), zero = make_float(0L, bits);
    auto mk = [&](Float mu, Float u1, Float u2, Float a1, Float a2, const char* tag) {
        return TwoNode{std::move(mu), std::move(u1), std::move(u2), std::move(a1), std::move(a2), tag};
    };
    // Three equal entries.
    if (b == c && c == d) return mk(one / F(b), F(a) / F(b), one, one, zero, "A1");
    if (a == c && c == d) return mk(one / F(a), F(b) / F(a), one, zero, one, "A2");
    if (a == b && b == d) return mk(one / F(a), one, F(c) / F(a), one, zero, "A3");
    if (a == b && b == c) return mk(one / F(a), one, F(d) / F(a), zero, one, "A4");
    // One equal pair.
    if (a == b) {
        Float g = F(c) / F(a), dl = F(d) / F(a);
        return mk(one / F(a), one, g, one, flog(dl) / flog(g), "A5");
    }
    if (c == d) {
        Float dl = F(a) / F(c), g = F(b) / F(c);
        return mk(one / F(c), dl, one, one, flog(g) / flog(dl), "A6");
    }
    if (b == d) return mk(one / F(b), F(a) / F(b), F(c) / F(b), one, zero, "A7");
    if (a == c) return mk(one / F(a), F(b) / F(a), F(d) / F(a), zero, one, "A8");
    const Float la = flog(F(a)), lb = flog(F(b)), lc = flog(F(c)), ld = flog(F(d));
    Float mu = fexp(Float((lb * lc - la * ld) / (la + ld - lb - lc)));
    Float a2 = (lb - ld) / (la - lc);
    return mk(mu, mu * F(a), mu * F(c), one, a2, "generic");
}

std::vector<Scalar> hankel_moments(const Scalar& a, const Scalar& b, const Scalar& c, std::size_t count, std::size_t k,
                                   unsigned bits, Scalar& s_out, double& residual) {
    if (!(a.sign() > 0 && b.sign() > 0 && c.sign() > 0) || !(a * c > b * b))
        throw std::invalid_argument("target [[a, b], [b, c]] must be totally positive (a, b, c > 0, ac > b^2)");
    const Scalar rho = a * c / (b * b);
    const Scalar one = rho.is_exact() ? Scalar(1) : Scalar(make_float(1L, rho.precision()));
    const Scalar disc = rho * (rho - one);
    // s = (rho - 1) + sqrt(rho (rho - 1)), exact when the root is rational.
    std::optional<Scalar> root;
    if (disc.is_exact()) {
        const mpq_class& q = disc.exact();
        if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
            mpz_class n, d;
            mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
            root = Scalar(mpq_class(n, d));
        }
    }
    const bool exact = root.has_value() && k == 1;
    auto lift = [&](const Scalar& x) { return exact ? x : x.as_float(bits); };
    if (!root) {
        Float r = make_float(0L, bits);
        mpfr_sqrt(r.backend().data(), disc.as_float(bits).flt().backend().data(), MPFR_RNDN);
        root = Scalar(std::move(r));
    }
    Scalar s = lift(rho) - lift(one) + lift(*root);
    const Scalar A = lift(a), lam = lift(b) / A * (s + lift(one)), S = s, One = lift(one);
    Scalar h = (s + One) * (s + One) / (lift(Scalar(2)) * s + One);
    residual = std::abs((h - lift(rho)).to_double());
    std::vector<Scalar> mom;
    for (std::size_t m = 0; m < count; ++m) {
        Scalar lm = lift(Scalar::rational(static_cast<long>(m), static_cast<long>(k)));
        Scalar pw;
        if (exact) {
            pw = pow_int(lam, static_cast<long>(m));
        } else {
            pw = fs(fpow(lam.flt(), lm.flt()));
        }
        mom.push_back(A * pw / (S * lm + One));
    }
    s_out = s;
    return mom;
}

Matrix gauss_kernel(std::size_t n, const Scalar& delta) {
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long d = static_cast<long>(i) - static_cast<long>(j);
            e.push_back(pow_int(delta, d * d));
        }
    return Matrix(n, n, std::move(e));
}

// Near-degenerate targets give minors far below the float tolerance of the
// working precision; redo the construction at 2x, 4x, 8x the bits before
// giving up.  A definite failure is never retried.
template <class Build>
auto with_rising_precision(unsigned base, Build build) {
    for (unsigned bits = base;; bits *= 2) {
        auto r = build(bits);
        const Verdict v = r.certificate.verdict;
        if (v == Verdict::holds || v == Verdict::fails || bits >= 8 * base) return r;
    }
}

unsigned working_bits(const Scalar& s) { return s.is_exact() ? default_precision() : s.precision(); }

VandermondeEmbedding embed_at_bits(const Matrix& A, std::size_t m, std::size_t n, std::size_t p, std::size_t p2,
                                   std::size_t q, std::size_t q2, unsigned bits) {
    TwoNode t = solve_2x2(A, bits);
    VandermondeEmbedding e;
    e.mu = fs(t.mu);
    e.u = fill(m, p, p2, t.u1, t.u2, true);
    e.alpha = fill(n, q, q2, t.a1, t.a2, false);
    e.p = p;
    e.p2 = p2;
    e.q = q;
    e.q2 = q2;
    e.case_tag = t.tag;
    e.certificate = is_tp(e.realize());
    return e;
}

} // namespace

Matrix VandermondeEmbedding::realize() const {
    std::vector<Scalar> e;
    for (const auto& ui : u)
        for (const auto& aj : alpha) e.push_back(fs(fpow(ui.flt(), aj.flt())));
    return Matrix(u.size(), alpha.size(), std::move(e));
}

VandermondeEmbedding embed_2x2_at_position(const Matrix& A, std::size_t m, std::size_t n, std::size_t p,
                                           std::size_t p2, std::size_t q, std::size_t q2) {
    if (!(p < p2 && p2 < m && q < q2 && q2 < n)) throw std::invalid_argument("embedding positions must satisfy p < p2 < m, q < q2 < n");
    if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("Vandermonde embedding needs a 2x2 matrix");
    if (!is_tp(A).holds()) throw std::invalid_argument("Vandermonde embedding needs a totally positive matrix");
    VandermondeEmbedding e = with_rising_precision(A.is_exact() ? default_precision() : A.precision(), [&](unsigned bits) {
        return embed_at_bits(A, m, n, p, p2, q, q2, bits);
    });
    if (!e.certificate.holds()) throw VerificationError("generalized Vandermonde embedding failed the TP check", e.certificate);
    return e;
}

VandermondeEmbedding embed_2x2_vandermonde(const Matrix& A, std::size_t m, std::size_t n) {
    return embed_2x2_at_position(A, m, n, 0, 1, 0, 1);
}

HankelCompletion complete_hankel_sym(const Scalar& a, const Scalar& b, const Scalar& c, std::size_t delta) {
    if (delta < 1) throw std::invalid_argument("Hankel completion size must be positive");
    HankelCompletion out = with_rising_precision(working_bits(a * c / (b * b)), [&](unsigned bits) {
        Scalar s;
        double residual = 0;
        std::vector<Scalar> mom = hankel_moments(a, b, c, 2 * delta - 1, 1, bits, s, residual);
        Matrix h = Matrix::hankel(mom, delta);
        Certificate cert = is_tp_hankel(h);
        return HankelCompletion{s, a, std::move(mom), std::move(h), std::move(cert), residual, 0, 1, delta - 1};
    });
    if (!out.certificate.holds()) throw VerificationError("Hankel completion failed the TP check", out.certificate);
    return out;
}

BackwardsExtension extend_backwards(const std::vector<Scalar>& moments, std::optional<Scalar> margin) {
    if (moments.size() % 2 == 0) throw std::invalid_argument("backwards extension needs an odd number of moments s_0..s_2N");
    const std::size_t N = moments.size() / 2;
    const bool exact = moments.front().is_exact();
    const Scalar zero = exact ? Scalar(0) : Scalar(make_float(0L, moments.front().precision()));
    const Scalar one = exact ? Scalar(1) : Scalar(make_float(1L, moments.front().precision()));
    Matrix A = Matrix::hankel(moments, N + 1);
    if (!is_tp_hankel(A).holds()) throw std::invalid_argument("backwards extension needs a totally positive Hankel matrix");
    if (margin && margin->is_exact() != exact) {
        if (exact) throw std::invalid_argument("float margin for exact moments");
        *margin = margin->as_float(one.precision());
    }

    // Prepend t to seq; det of the Hankel matrix of size `size` is affine in t.
    auto next = [&](std::vector<Scalar> seq, std::size_t size, const Scalar& slope, Scalar& root, Scalar& used) {
        seq.insert(seq.begin(), zero);
        Scalar d0 = det(Matrix::hankel(seq, size));
        root = -d0 / slope;
        used = margin ? *margin : std::max(one, root.abs());
        Scalar t = std::max(root, zero) + used;
        seq.front() = t;
        return seq;
    };

    BackwardsExtension out{zero, zero, zero, zero, zero, zero, {}, A, {}};
    // det A' has cofactor det A^(1) = det Hankel(s_1..s_{2N-1}); 1 when N = 0.
    Scalar slope1 = N == 0 ? one : det(Matrix::hankel(std::vector<Scalar>(moments.begin() + 1, moments.end() - 1), N));
    std::vector<Scalar> seq1(moments.begin(), moments.end() - 1);
    std::vector<Scalar> ext1 = next(seq1, N + 1, slope1, out.root1, out.margin1);
    out.s_m1 = ext1.front();
    std::vector<Scalar> seq2 = moments;
    seq2.insert(seq2.begin(), out.s_m1);
    std::vector<Scalar> ext2 = next(seq2, N + 2, det(A), out.root2, out.margin2);
    out.s_m2 = ext2.front();
    out.moments = ext2;
    out.matrix = Matrix::hankel(ext2, N + 2);
    out.certificate = is_tp_hankel(out.matrix);
    if (!out.certificate.holds()) throw VerificationError("backwards extension failed the TP check", out.certificate);
    return out;
}

HankelCompletion embed_equally_spaced(const Matrix& target, std::size_t n, std::size_t k, std::size_t N) {
    if (target.rows() != 2 || target.cols() != 2 || !structure_tests(target).symmetric)
        throw std::invalid_argument("equally spaced embedding needs a symmetric 2x2 target");
    if (k < 1 || n + 2 * k > 2 * N) throw std::invalid_argument("need k >= 1 and n + 2k <= 2N");
    const Scalar &a = target(0, 0), &b = target(0, 1), &c = target(1, 1);
    Scalar s;
    double residual = 0;
    std::vector<Scalar> seq = hankel_moments(a, b, c, 2 * N + 1, k, working_bits(a * c / (b * b)), s, residual);
    const std::size_t ext = (n + 1) / 2;
    for (std::size_t t = 0; t < ext; ++t) seq = extend_backwards(seq).moments;
    const std::size_t start = 2 * ext - n;
    std::vector<Scalar> mom(seq.begin() + static_cast<long>(start), seq.begin() + static_cast<long>(start + 2 * N + 1));
    Matrix h = Matrix::hankel(mom, N + 1);
    Certificate cert = is_tp_hankel(h);
    if (!cert.holds()) throw VerificationError("equally spaced embedding failed the TP check", cert);
    const Scalar* want[3] = {&a, &b, &c};
    for (std::size_t t = 0; t < 3; ++t) {
        double got = mom[n + t * k].to_double(), w = want[t]->to_double();
        if (std::abs(got - w) > 1e-12 * std::max(1.0, std::abs(w)))
            throw VerificationError("equally spaced embedding missed a prescribed entry", cert);
    }
    HankelCompletion out{s, a, std::move(mom), std::move(h), std::move(cert), residual, n, k, N};
    return out;
}

Densification densify_to_tp(const Matrix& M, double tol, int max_halvings) {
    Certificate tn = is_tn(M);
    if (!tn.holds()) throw std::invalid_argument("densification needs a totally non-negative matrix");
    if (rank(M) != std::min(M.rows(), M.cols()))
        throw Unsupported("Whitney densification implemented only for full-rank TN");
    const bool sym = structure_tests(M).symmetric;
    Scalar delta = M.is_exact() ? Scalar::rational(1, 2) : Scalar(make_float(0.5, M.precision()));
    const Scalar two = M.is_exact() ? Scalar(2) : Scalar(make_float(2L, M.precision()));
    for (int it = 0; it < max_halvings; ++it, delta /= two) {
        Matrix B = gauss_kernel(M.rows(), delta) * M * gauss_kernel(M.cols(), delta);
        if (sym) {
            std::vector<Scalar> e = B.entries();
            for (std::size_t i = 0; i < B.rows(); ++i)
                for (std::size_t j = 0; j < i; ++j) e[i * B.cols() + j] = e[j * B.cols() + i];
            B = Matrix(B.rows(), B.cols(), std::move(e));
        }
        double dist = (B - M).norm_inf();
        if (dist > tol) continue;
        Certificate cert = is_tp(B);
        if (!cert.holds()) throw VerificationError("densified matrix failed the TP check", cert);
        return Densification{std::move(B), delta, dist, std::move(cert)};
    }
    throw std::runtime_error("densification did not reach the tolerance within the iteration budget");
}

} // namespace totpos
