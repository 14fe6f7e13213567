#pragma once

// Test-only oracles.  Nothing here calls the library's determinant or
// checker code, so the unit tests compare two independent computations.

#include "totpos/matrix.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using QMat = std::vector<std::vector<mpq_class>>;

inline QMat to_q(const totpos::Matrix& m) {
    QMat a(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).exact();
    return a;
}

// Laplace expansion along the first row.
inline mpq_class det_cofactor(const QMat& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    mpq_class sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        QMat sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpq_class> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            sub.push_back(row);
        }
        mpq_class t = a[0][j] * det_cofactor(sub);
        if (j % 2) sum -= t;
        else sum += t;
    }
    return sum;
}

inline mpq_class minor_cofactor(const QMat& a, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
    QMat s(r.size(), std::vector<mpq_class>(c.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) s[i][j] = a[r[i]][c[j]];
    return det_cofactor(s);
}

// All k-subsets of {0..n-1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Smallest minor over every size up to `order` (all sizes when 0).
inline mpq_class min_minor(const totpos::Matrix& m, std::size_t order = 0) {
    const QMat a = to_q(m);
    const std::size_t r = order ? order : std::min(m.rows(), m.cols());
    mpq_class best = a[0][0];
    for (std::size_t k = 1; k <= r; ++k)
        for (const auto& rows : subsets(m.rows(), k))
            for (const auto& cols : subsets(m.cols(), k)) {
                mpq_class v = minor_cofactor(a, rows, cols);
                if (v < best) best = v;
            }
    return best;
}

inline bool tn_brute(const totpos::Matrix& m, std::size_t order = 0) { return min_minor(m, order) >= 0; }
inline bool tp_brute(const totpos::Matrix& m, std::size_t order = 0) { return min_minor(m, order) > 0; }

inline std::size_t rank_brute(const totpos::Matrix& m) {
    const QMat a = to_q(m);
    std::size_t best = 0;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        bool any = false;
        for (const auto& rows : subsets(m.rows(), k)) {
            for (const auto& cols : subsets(m.cols(), k))
                if (minor_cofactor(a, rows, cols) != 0) {
                    any = true;
                    break;
                }
            if (any) break;
        }
        if (any) best = k;
    }
    return best;
}

// Cyclic Jacobi rotations for a symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev;
    for (std::size_t i = 0; i < n; ++i) ev.push_back(a[i][i]);
    return ev;
}

inline std::vector<std::vector<double>> to_double(const totpos::Matrix& m) {
    std::vector<std::vector<double>> a(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).to_double();
    return a;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    // p/q in [lo, hi] with 1 <= q <= den.
    totpos::Scalar rational(long lo, long hi, long den = 6) {
        const long q = integer(1, den);
        return totpos::Scalar::rational(integer(lo * q, hi * q), q);
    }

    totpos::Matrix rational_matrix(std::size_t m, std::size_t n, long lo, long hi, long den = 6) {
        std::vector<totpos::Scalar> e;
        for (std::size_t i = 0; i < m * n; ++i) e.push_back(rational(lo, hi, den));
        return totpos::Matrix(m, n, std::move(e));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle
