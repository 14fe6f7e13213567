#include "totpos/witnesses.hpp"

#include "totpos/entrywise.hpp"
#include "totpos/numkernel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace totpos {

namespace {

unsigned bits_or_default(unsigned bits) { return bits ? bits : default_precision(); }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// Exact square root of a non-negative rational, if it has one.
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return mpq_class(n, d);
}

Scalar sqrt_of(const Scalar& v, unsigned bits) {
    if (v.is_exact())
        if (auto r = rational_sqrt(v.exact())) return Scalar(*r);
    Float r = make_float(0L, bits);
    mpfr_sqrt(r.backend().data(), v.as_float(bits).flt().backend().data(), MPFR_RNDN);
    return Scalar(std::move(r));
}

Matrix sym2(const Scalar& a, const Scalar& b, const Scalar& c) {
    if (a.is_exact() && b.is_exact() && c.is_exact()) return Matrix::from_rows({{a, b}, {b, c}});
    unsigned p = std::max({a.precision(), b.precision(), c.precision()});
    return Matrix::from_rows({{a.as_float(p), b.as_float(p)}, {b.as_float(p), c.as_float(p)}});
}

Scalar one_like(const Scalar& s) { return s.is_exact() ? Scalar(1) : Scalar(make_float(1L, s.precision())); }

} // namespace

Matrix family_A(const Scalar& x, const Scalar& y) {
    require(x.sign() >= 0 && y.sign() >= 0, "family A needs x, y >= 0");
    return Matrix::from_rows({{x, x * y}, {one_like(x), y}});
}

Matrix family_B(const Scalar& x, const Scalar& y) {
    require(x.sign() >= 0 && y.sign() >= 0, "family B needs x, y >= 0");
    return Matrix::from_rows({{x * y, x}, {y, one_like(x)}});
}

Matrix family_A_tp(const Scalar& a, const Scalar& x, const Scalar& y, const Scalar& eps) {
    require(x.sign() > 0 && y.sign() > 0 && eps.sign() > 0 && eps < a, "family A(x,y,eps) needs x, y > 0, 0 < eps < a");
    return Matrix::from_rows({{a * x, a * x * y}, {a - eps, a * y}});
}

Matrix family_B_tp(const Scalar& a, const Scalar& x, const Scalar& y, const Scalar& eps) {
    require(x.sign() > 0 && y.sign() > 0 && eps.sign() > 0 && eps < a, "family B(x,y,eps) needs x, y > 0, 0 < eps < a");
    return Matrix::from_rows({{a * x * y, a * x}, {a * y, a + eps}});
}

Matrix monotone_pair(const Scalar& x, const Scalar& y) {
    require(x.sign() > 0 && y > x, "monotonicity pair needs y > x > 0");
    return Matrix::from_rows({{y, x}, {x, y}});
}

Matrix sym_rank1(const Scalar& x, const Scalar& y, unsigned bits) {
    require(x.sign() >= 0 && y.sign() >= 0, "symmetric rank-1 matrix needs x, y >= 0");
    return sym2(x, sqrt_of(x * y, bits_or_default(bits)), y);
}

Matrix sym_rank1_squared(const Scalar& u, const Scalar& v) {
    require(u.sign() >= 0 && v.sign() >= 0, "symmetric rank-1 matrix needs u, v >= 0");
    return Matrix::from_rows({{u * u, u * v}, {u * v, v * v}});
}

Matrix matrix_C(unsigned bits) {
    bits = bits_or_default(bits);
    Float r = make_float(0L, bits);
    mpfr_sqrt_ui(r.backend().data(), 2, MPFR_RNDN);
    Scalar s(Float(make_float(1L, bits) / r));
    Scalar one(make_float(1L, bits)), zero(make_float(0L, bits));
    return Matrix::from_rows({{one, s, zero}, {s, one, s}, {zero, s, one}});
}

Matrix family_N(const Scalar& eps, const Scalar& x) {
    Scalar one = one_like(eps);
    require(eps.sign() > 0 && eps < one, "N(eps, x) needs eps in (0, 1)");
    require(x.sign() >= 0, "N(eps, x) needs x >= 0");
    auto k = [&](long v) { return eps.is_exact() ? Scalar(v) : Scalar(make_float(v, eps.precision())); };
    Scalar half = k(5) / k(2);
    const Scalar M[4][4] = {{k(0), k(0), k(0), k(0)},
                            {k(0), k(1), k(2), k(3)},
                            {k(0), k(2), k(4) + eps, k(6) + half * eps},
                            {k(0), k(3), k(8), k(14) + eps}};
    std::vector<Scalar> e;
    for (const auto& row : M)
        for (const auto& v : row) e.push_back(one + x * v);
    return Matrix(4, 4, std::move(e));
}

Matrix family_T(const Scalar& x) {
    require(x.sign() >= 0, "T(x) needs x >= 0");
    static const long H[5][5] = {{2, 3, 6, 14, 36},
                                 {3, 6, 14, 36, 98},
                                 {6, 14, 36, 98, 276},
                                 {14, 36, 98, 284, 842},
                                 {36, 98, 276, 842, 2604}};
    Scalar one = one_like(x);
    std::vector<Scalar> e;
    for (const auto& row : H)
        for (long v : row) e.push_back(one + x * (x.is_exact() ? Scalar(v) : Scalar(make_float(v, x.precision()))));
    return Matrix(5, 5, std::move(e));
}

Matrix moment_matrix(const std::vector<Scalar>& nodes, const std::vector<Scalar>& weights, std::size_t size) {
    require(!nodes.empty() && nodes.size() == weights.size(), "moment matrix needs matching nodes and weights");
    require(size >= 1, "moment matrix size must be positive");
    std::vector<Scalar> mom;
    for (std::size_t k = 0; k + 1 < 2 * size; ++k) {
        Scalar acc = weights[0].is_exact() ? Scalar(0) : Scalar(make_float(0L, weights[0].precision()));
        for (std::size_t t = 0; t < nodes.size(); ++t) {
            require(nodes[t].sign() >= 0 && weights[t].sign() >= 0, "moment matrix needs a measure on [0, inf)");
            acc += weights[t] * (k == 0 ? one_like(nodes[t]) : pow_int(nodes[t], static_cast<long>(k)));
        }
        mom.push_back(acc);
    }
    return Matrix::hankel(mom, size);
}

Matrix moment_two_point(const Scalar& x, std::size_t size) {
    require(x.sign() > 0 && x < one_like(x), "two-point moment matrix needs x in (0, 1)");
    return moment_matrix({one_like(x), x}, {one_like(x), one_like(x)}, size);
}

Matrix family_M_tp(const Scalar& x, const Scalar& y, const Scalar& eps, unsigned bits) {
    require(x.sign() > 0 && y.sign() > 0 && eps.sign() > 0 && !(x == y), "M(x, y, eps) needs x != y and x, y, eps > 0");
    Scalar g = sqrt_of(x * y, bits_or_default(bits));
    if (!g.is_exact() && x.is_exact()) {
        unsigned p = g.precision();
        return sym2(x.as_float(p) + eps.as_float(p), g + eps.as_float(p), y.as_float(p) + eps.as_float(p));
    }
    return sym2(x + eps, g + eps, y + eps);
}

VasudevaSample vasudeva_sets(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(1, 60), den(1, 12);
    auto rnd = [&] { return Scalar::rational(num(rng), den(rng)); };
    VasudevaSample out;
    while (out.p_prime.size() < count) {
        Scalar a = rnd(), b = rnd();
        if (a > b) out.p_prime.push_back(Matrix::from_rows({{a, b}, {b, a}}));
    }
    while (out.p_double_prime.size() < count) {
        Scalar a = rnd(), b = rnd(), c = rnd();
        if (a * c > b * b) out.p_double_prime.push_back(Matrix::from_rows({{a, b}, {b, c}}));
    }
    return out;
}

FormulaCheck verify_detC_formula(const Scalar& c, const Scalar& alpha, unsigned bits) {
    require(c.sign() > 0, "det C formula needs c > 0");
    bits = bits_or_default(bits);
    Matrix img = apply_entrywise(matrix_C(bits), FunctionDescriptor::power(c, alpha));
    Scalar measured = det(img, 2 * bits);
    Float a = alpha.as_float(bits).flt();
    Float two_pow = make_float(0L, bits);
    Float e = make_float(1L, bits) - a;
    mpfr_ui_pow(two_pow.backend().data(), 2, e.backend().data(), MPFR_RNDN);
    Float cf = c.as_float(bits).flt();
    Float predicted = cf * cf * cf * (make_float(1L, bits) - two_pow);
    Float diff = abs(measured.as_float(bits).flt() - predicted);
    FormulaCheck out;
    out.measured = measured.to_double();
    out.predicted = predicted.convert_to<double>();
    out.abs_error = diff.convert_to<double>();
    out.rel_error = predicted == 0 ? out.abs_error : Float(diff / abs(predicted)).convert_to<double>();
    return out;
}

ExpansionFit verify_N_expansion(const Scalar& eps, const Scalar& alpha, const std::vector<Scalar>& xs, unsigned bits) {
    bits = bits_or_default(bits);
    require(xs.size() >= 2, "expansion fit needs at least two samples");
    // det/x³ = c3 + c4·x + O(x²): ordinary least squares on (x, det/x³).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& x : xs) {
        require(x.sign() > 0, "expansion samples must be positive");
        Matrix img = hadamard_power(family_N(eps, x), alpha);
        double d = det(img, img.is_exact() ? 0 : 2 * bits).to_double();
        double xv = x.to_double(), yv = d / (xv * xv * xv);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
    }
    const double n = static_cast<double>(xs.size());
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) <= 1e-14 * n * sxx) throw std::domain_error("ill-conditioned expansion fit (samples coincide)");
    ExpansionFit f;
    f.quartic = (n * sxy - sx * sy) / denom;
    f.cubic = (sy - f.quartic * sx) / n;
    const double e = eps.to_double(), a = alpha.to_double();
    f.cubic_predicted = e * e * a * a * a;
    f.quartic_predicted = 0.25 * (8 - 70 * e - 59 * e * e - 4 * e * e * e) * (a * a * a - a * a * a * a);
    auto rel = [](double got, double want) { return want == 0 ? std::abs(got) : std::abs(got - want) / std::abs(want); };
    f.cubic_rel_error = rel(f.cubic, f.cubic_predicted);
    f.quartic_rel_error = rel(f.quartic, f.quartic_predicted);
    return f;
}

} // namespace totpos
