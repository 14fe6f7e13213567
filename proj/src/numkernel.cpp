#include "totpos/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace totpos {

void MinorIndex::validate(std::size_t m, std::size_t n) const {
    if (rows.empty() || rows.size() != cols.size()) throw std::invalid_argument("ragged minor index");
    if (rows.size() > std::min(m, n)) throw std::invalid_argument("minor larger than matrix");
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t] >= m || cols[t] >= n) throw std::out_of_range("minor index out of bounds");
        if (t && (rows[t] <= rows[t - 1] || cols[t] <= cols[t - 1]))
            throw std::invalid_argument("minor index sets must be strictly increasing");
    }
}

namespace {

Scalar det_exact(const Matrix& a) {
    const std::size_t n = a.rows();
    // Scale each row by the lcm of its denominators, then Bareiss.
    std::vector<mpz_class> w(n * n);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).exact().get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& q = a(i, j).exact();
            w[i * n + j] = q.get_num() * (l / q.get_den());
        }
    }
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && w[p * n + k] == 0) ++p;
            if (p == n) return Scalar(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(w[k * n + j], w[p * n + j]);
            sign = -sign;
        }
        const mpz_class& piv = w[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = w[i * n + j] * piv - w[i * n + k] * w[k * n + j];
                mpz_divexact(w[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w[i * n + k] = 0;
        }
        prev = piv;
    }
    mpq_class d(w[n * n - 1] * sign, scale);
    d.canonicalize();
    return Scalar(d);
}

Scalar det_float(const Matrix& a, unsigned bits) {
    const std::size_t n = a.rows();
    std::vector<Float> w;
    w.reserve(n * n);
    for (const auto& s : a.entries()) w.push_back(make_float(s.flt(), bits));
    Float d = make_float(1L, bits);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(w[i * n + k]) > abs(w[p * n + k])) p = i;
        if (w[p * n + k] == 0) return Scalar(make_float(0L, bits));
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(w[k * n + j], w[p * n + j]);
            d = -d;
        }
        const Float& piv = w[k * n + k];
        d *= piv;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (w[i * n + k] == 0) continue;
            Float f = w[i * n + k] / piv;
            for (std::size_t j = k + 1; j < n; ++j) w[i * n + j] -= f * w[k * n + j];
        }
    }
    return Scalar(std::move(d));
}

} // namespace

Scalar det(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
    return m.is_exact() ? det_exact(m) : det_float(m, m.precision());
}

Scalar det(const Matrix& m, unsigned bits) {
    if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
    return m.is_exact() ? det_exact(m) : det_float(m, bits);
}

Scalar minor(const Matrix& m, const MinorIndex& idx) {
    idx.validate(m.rows(), m.cols());
    return det(m.submatrix(idx.rows, idx.cols));
}

Scalar minor(const Matrix& m, const MinorIndex& idx, unsigned bits) {
    idx.validate(m.rows(), m.cols());
    return det(m.submatrix(idx.rows, idx.cols), bits);
}

namespace {

// Advance a strictly increasing k-subset of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t t = k; t-- > 0;) {
        if (c[t] < n - k + t) {
            ++c[t];
            for (std::size_t u = t + 1; u < k; ++u) c[u] = c[u - 1] + 1;
            return true;
        }
    }
    return false;
}

void shift_window(std::vector<std::size_t>& c, std::size_t start) {
    for (std::size_t t = 0; t < c.size(); ++t) c[t] = start + t;
}

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

MinorRange::MinorRange(std::size_t m, std::size_t n, std::size_t k, bool contiguous)
    : m_(m), n_(n), k_(k), contiguous_(contiguous) {
    if (k < 1 || k > std::min(m, n)) throw std::invalid_argument("minor size out of range");
}

std::size_t MinorRange::count() const {
    if (contiguous_) return (m_ - k_ + 1) * (n_ - k_ + 1);
    return binom(m_, k_) * binom(n_, k_);
}

MinorRange::iterator::iterator(std::size_t m, std::size_t n, std::size_t k, bool contiguous)
    : m_(m), n_(n), contiguous_(contiguous), done_(false) {
    cur_.rows.resize(k);
    cur_.cols.resize(k);
    shift_window(cur_.rows, 0);
    shift_window(cur_.cols, 0);
}

MinorRange::iterator& MinorRange::iterator::operator++() {
    if (done_) return *this;
    const std::size_t k = cur_.rows.size();
    if (contiguous_) {
        if (cur_.cols[0] + k < n_) {
            shift_window(cur_.cols, cur_.cols[0] + 1);
        } else if (cur_.rows[0] + k < m_) {
            shift_window(cur_.rows, cur_.rows[0] + 1);
            shift_window(cur_.cols, 0);
        } else {
            done_ = true;
        }
        return *this;
    }
    if (next_combination(cur_.cols, n_)) return *this;
    shift_window(cur_.cols, 0);
    if (!next_combination(cur_.rows, m_)) done_ = true;
    return *this;
}

MinorRange enumerate_minors(std::size_t m, std::size_t n, std::size_t k, bool contiguous) {
    return MinorRange(m, n, k, contiguous);
}

long double sign_epsilon(unsigned bits) {
    return 1e-9L * std::pow(2.0L, 53.0L - static_cast<long double>(bits));
}

long double minor_scale(const Matrix& s) {
    long double p = 1;
    for (std::size_t i = 0; i < s.rows(); ++i) {
        long double row = 0;
        for (std::size_t j = 0; j < s.cols(); ++j) {
            const Scalar& x = s(i, j);
            row += x.is_exact() ? std::fabs(static_cast<long double>(x.to_double()))
                                : std::fabs(mpfr_get_ld(x.flt().backend().data(), MPFR_RNDN));
        }
        p *= row;
    }
    return p;
}

std::size_t rank(const Matrix& a, std::optional<double> tol) {
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t r = 0;
    if (a.is_exact()) {
        std::vector<mpq_class> w;
        for (const auto& s : a.entries()) w.push_back(s.exact());
        for (std::size_t c = 0; c < n && r < m; ++c) {
            std::size_t p = r;
            while (p < m && w[p * n + c] == 0) ++p;
            if (p == m) continue;
            for (std::size_t j = 0; j < n; ++j) std::swap(w[r * n + j], w[p * n + j]);
            for (std::size_t i = r + 1; i < m; ++i) {
                if (w[i * n + c] == 0) continue;
                mpq_class f = w[i * n + c] / w[r * n + c];
                for (std::size_t j = c; j < n; ++j) w[i * n + j] -= f * w[r * n + j];
            }
            ++r;
        }
        return r;
    }
    const unsigned bits = a.precision();
    const long double t = tol ? static_cast<long double>(*tol) : sign_epsilon(bits);
    Float cutoff = make_float(static_cast<double>(t * std::max(1.0L, static_cast<long double>(a.norm_inf()))), bits);
    std::vector<Float> w;
    for (const auto& s : a.entries()) w.push_back(make_float(s.flt(), 2 * bits));
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        for (std::size_t i = r + 1; i < m; ++i)
            if (abs(w[i * n + c]) > abs(w[p * n + c])) p = i;
        if (abs(w[p * n + c]) <= cutoff) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(w[r * n + j], w[p * n + j]);
        for (std::size_t i = r + 1; i < m; ++i) {
            Float f = w[i * n + c] / w[r * n + c];
            for (std::size_t j = c; j < n; ++j) w[i * n + j] -= f * w[r * n + j];
        }
        ++r;
    }
    return r;
}

} // namespace totpos
