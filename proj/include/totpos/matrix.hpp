#pragma once

#include "totpos/scalar.hpp"

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

namespace totpos {

// Dense, immutable, row-major.  Every entry has the same Scalar variant; a
// float matrix may still carry entries of different precisions.
class Matrix {
public:
    Matrix(std::size_t m, std::size_t n, std::vector<Scalar> entries);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
    static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);
    static Matrix from_doubles(const std::vector<std::vector<double>>& rows, unsigned bits);

    // Exact identity/zeros; `like` picks the variant (and precision) of a
    // template scalar.
    static Matrix identity(std::size_t n, const Scalar& like = Scalar(0));
    static Matrix zeros(std::size_t m, std::size_t n, const Scalar& like = Scalar(0));
    // (s_{i+j}) for i, j < n; needs 2n-1 moments.
    static Matrix hankel(const std::vector<Scalar>& moments, std::size_t n);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    bool square() const { return m_ == n_; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<Scalar>& entries() const { return a_; }

    bool is_exact() const { return a_.front().is_exact(); }
    // Largest entry precision; 0 for exact matrices.
    unsigned precision() const;

    Matrix transpose() const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t m, std::size_t n) const;
    Matrix to_float(unsigned bits) const;
    Matrix map(const std::function<Scalar(const Scalar&)>& f) const;
    Matrix with_entry(std::size_t i, std::size_t j, const Scalar& v) const;
    Matrix scaled(const Scalar& c) const;

    // max_i sum_j |a_ij|
    double norm_inf() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t m_, n_;
    std::vector<Scalar> a_;
};

Matrix direct_sum(const Matrix& a, const Matrix& b);

// Float copy of `m` if it is exact, else unchanged.
Matrix as_float(const Matrix& m, unsigned bits);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

} // namespace totpos
