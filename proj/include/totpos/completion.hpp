#pragma once

#include "totpos/checker.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace totpos {

// A construction whose output failed its own post-check.
struct VerificationError : std::runtime_error {
    VerificationError(const std::string& what, Certificate cert) : std::runtime_error(what), certificate(std::move(cert)) {}
    Certificate certificate;
};

// Requested behaviour exists mathematically but is not implemented.
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// mu·A sits at rows (p, p2) and columns (q, q2) of (u_i^{alpha_j}).
struct VandermondeEmbedding {
    Scalar mu;
    std::vector<Scalar> u;      // m nodes, strictly monotone, positive
    std::vector<Scalar> alpha;  // n exponents, monotone in the same direction
    std::size_t p = 0, p2 = 1, q = 0, q2 = 1;
    std::string case_tag;       // "A1".."A8" or "generic"
    Certificate certificate;

    bool increasing() const { return u.front() < u.back(); }
    Matrix realize() const;
};

VandermondeEmbedding embed_2x2_vandermonde(const Matrix& a, std::size_t m, std::size_t n);
// 0-based positions p < p2 < m, q < q2 < n.
VandermondeEmbedding embed_2x2_at_position(const Matrix& a, std::size_t m, std::size_t n, std::size_t p,
                                           std::size_t p2, std::size_t q, std::size_t q2);

// Moments s_k = a (b/a)^k (s+1)^k / (ks+1) of f(x) = (b/a)(s+1) x^s on [0,1]
// scaled by a, where h(s) = (s+1)²/(2s+1) equals rho = ac/b².
struct HankelCompletion {
    Scalar s;
    Scalar scale;
    std::vector<Scalar> moments;
    Matrix matrix;
    Certificate certificate;
    double residual = 0;  // |h(s) - rho|
    std::size_t n = 0, k = 1, N = 0;
};

HankelCompletion complete_hankel_sym(const Scalar& a, const Scalar& b, const Scalar& c, std::size_t delta);

struct BackwardsExtension {
    Scalar s_m1, s_m2;
    Scalar root1, root2;
    Scalar margin1, margin2;
    std::vector<Scalar> moments;  // s_{-2}, s_{-1}, s_0, ..., s_{2N}
    Matrix matrix;                // Hankel over the extended sequence
    Certificate certificate;
};

// Input s_0..s_{2N} of a TP Hankel matrix.  Each new moment is the root of
// its (affine) determinant clipped at 0, plus the margin; the default
// margin is max(1, |root|).
BackwardsExtension extend_backwards(const std::vector<Scalar>& moments, std::optional<Scalar> margin = std::nullopt);

// TP Hankel (N+1)×(N+1) matrix with s_n = a, s_{n+k} = b, s_{n+2k} = c for
// the symmetric TP target [[a, b], [b, c]].
HankelCompletion embed_equally_spaced(const Matrix& a, std::size_t n, std::size_t k, std::size_t N);

struct Densification {
    Matrix matrix;
    Scalar delta;
    double distance;  // ‖B - M‖∞
    Certificate certificate;
};

// B = G_δ M H_δ with Gaussian kernels (δ^{(i-j)²}), δ halved from 1/2
// until ‖B - M‖∞ <= tol.  Symmetric input gives symmetric output.
Densification densify_to_tp(const Matrix& m, double tol, int max_halvings = 200);

} // namespace totpos
