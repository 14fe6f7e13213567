#include "totpos/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace totpos {

namespace {

Scalar zero_like(const Scalar& like) {
    return like.is_exact() ? Scalar(0) : Scalar(make_float(0L, like.precision()));
}

} // namespace

Matrix::Matrix(std::size_t m, std::size_t n, std::vector<Scalar> entries)
    : m_(m), n_(n), a_(std::move(entries)) {
    if (m == 0 || n == 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (a_.size() != m * n) throw std::invalid_argument("entry count does not match shape");
    bool exact = a_.front().is_exact();
    for (const auto& s : a_)
        if (s.is_exact() != exact) throw std::invalid_argument("matrix mixes exact and float entries");
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty matrix");
    std::vector<Scalar> e;
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw std::invalid_argument("ragged rows");
        e.insert(e.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), rows.front().size(), std::move(e));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
    std::vector<std::vector<Scalar>> v;
    for (auto r : rows) v.emplace_back(r);
    return from_rows(v);
}

Matrix Matrix::from_doubles(const std::vector<std::vector<double>>& rows, unsigned bits) {
    std::vector<std::vector<Scalar>> v;
    for (const auto& r : rows) {
        v.emplace_back();
        for (double x : r) v.back().emplace_back(make_float(x, bits));
    }
    return from_rows(v);
}

Matrix Matrix::identity(std::size_t n, const Scalar& like) {
    Scalar one = like.is_exact() ? Scalar(1) : Scalar(make_float(1L, like.precision()));
    std::vector<Scalar> e(n * n, zero_like(like));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = one;
    return Matrix(n, n, std::move(e));
}

Matrix Matrix::zeros(std::size_t m, std::size_t n, const Scalar& like) {
    return Matrix(m, n, std::vector<Scalar>(m * n, zero_like(like)));
}

Matrix Matrix::hankel(const std::vector<Scalar>& moments, std::size_t n) {
    if (moments.size() < 2 * n - 1) throw std::invalid_argument("not enough moments for Hankel matrix");
    std::vector<Scalar> e;
    e.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e.push_back(moments[i + j]);
    return Matrix(n, n, std::move(e));
}

unsigned Matrix::precision() const {
    unsigned p = 0;
    for (const auto& s : a_) p = std::max(p, s.precision());
    return p;
}

Matrix Matrix::transpose() const {
    std::vector<Scalar> e;
    e.reserve(a_.size());
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < m_; ++i) e.push_back((*this)(i, j));
    return Matrix(n_, m_, std::move(e));
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    std::vector<Scalar> e;
    e.reserve(rows.size() * cols.size());
    for (auto i : rows)
        for (auto j : cols) {
            if (i >= m_ || j >= n_) throw std::out_of_range("submatrix index out of range");
            e.push_back((*this)(i, j));
        }
    return Matrix(rows.size(), cols.size(), std::move(e));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t m, std::size_t n) const {
    if (r0 + m > m_ || c0 + n > n_) throw std::out_of_range("block out of range");
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) e.push_back((*this)(r0 + i, c0 + j));
    return Matrix(m, n, std::move(e));
}

Matrix Matrix::to_float(unsigned bits) const {
    return map([bits](const Scalar& s) { return s.as_float(bits); });
}

Matrix Matrix::map(const std::function<Scalar(const Scalar&)>& f) const {
    std::vector<Scalar> e;
    e.reserve(a_.size());
    for (const auto& s : a_) e.push_back(f(s));
    return Matrix(m_, n_, std::move(e));
}

Matrix Matrix::with_entry(std::size_t i, std::size_t j, const Scalar& v) const {
    if (i >= m_ || j >= n_) throw std::out_of_range("entry out of range");
    std::vector<Scalar> e = a_;
    e[i * n_ + j] = v;
    return Matrix(m_, n_, std::move(e));
}

Matrix Matrix::scaled(const Scalar& c) const {
    return map([&c](const Scalar& s) { return s * c; });
}

double Matrix::norm_inf() const {
    double best = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j).to_double());
        best = std::max(best, row);
    }
    return best;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.m_) throw std::invalid_argument("matrix product shape mismatch");
    std::vector<Scalar> e;
    e.reserve(a.m_ * b.n_);
    for (std::size_t i = 0; i < a.m_; ++i)
        for (std::size_t j = 0; j < b.n_; ++j) {
            Scalar acc = a(i, 0) * b(0, j);
            for (std::size_t k = 1; k < a.n_; ++k) acc += a(i, k) * b(k, j);
            e.push_back(std::move(acc));
        }
    return Matrix(a.m_, b.n_, std::move(e));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_) throw std::invalid_argument("matrix sum shape mismatch");
    std::vector<Scalar> e = a.a_;
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.a_[k];
    return Matrix(a.m_, a.n_, std::move(e));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_) throw std::invalid_argument("matrix difference shape mismatch");
    std::vector<Scalar> e = a.a_;
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.a_[k];
    return Matrix(a.m_, a.n_, std::move(e));
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_ || a.is_exact() != b.is_exact()) return false;
    return a.a_ == b.a_;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    if (a.is_exact() != b.is_exact()) throw MixedScalars();
    std::size_t m = a.rows() + b.rows(), n = a.cols() + b.cols();
    Scalar zero = a.is_exact() ? Scalar(0) : Scalar(make_float(0L, a.precision()));
    std::vector<Scalar> e(m * n, zero);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e[i * n + j] = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) e[(a.rows() + i) * n + a.cols() + j] = b(i, j);
    return Matrix(m, n, std::move(e));
}

Matrix as_float(const Matrix& m, unsigned bits) { return m.is_exact() ? m.to_float(bits) : m; }

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

} // namespace totpos
