#pragma once

#include "totpos/matrix.hpp"

#include <cstddef>
#include <iterator>
#include <optional>
#include <vector>

namespace totpos {

// 0-based, strictly increasing, equal lengths.
struct MinorIndex {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t size() const { return rows.size(); }
    void validate(std::size_t m, std::size_t n) const;
    friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
};

// Exact: fraction-free elimination, never rounds.  Float: partial pivoting
// at the largest entry precision, or at `bits` when given.
Scalar det(const Matrix& m);
Scalar det(const Matrix& m, unsigned bits);
Scalar minor(const Matrix& m, const MinorIndex& idx);
Scalar minor(const Matrix& m, const MinorIndex& idx, unsigned bits);

// Lazy stream of k×k minor indices.  Full mode: row sets in lexicographic
// order, and for each of them the column sets in lexicographic order.
// Contiguous mode: windows ordered by first row, then first column.
class MinorRange {
public:
    MinorRange(std::size_t m, std::size_t n, std::size_t k, bool contiguous);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = MinorIndex;
        using difference_type = std::ptrdiff_t;
        using pointer = const MinorIndex*;
        using reference = const MinorIndex&;

        iterator() = default;
        reference operator*() const { return cur_; }
        pointer operator->() const { return &cur_; }
        iterator& operator++();
        iterator operator++(int) { auto t = *this; ++*this; return t; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

    private:
        friend class MinorRange;
        iterator(std::size_t m, std::size_t n, std::size_t k, bool contiguous);
        std::size_t m_ = 0, n_ = 0;
        bool contiguous_ = false;
        bool done_ = true;
        MinorIndex cur_;
    };

    iterator begin() const { return iterator(m_, n_, k_, contiguous_); }
    iterator end() const { return iterator(); }
    // Number of indices the stream yields.
    std::size_t count() const;

private:
    std::size_t m_, n_, k_;
    bool contiguous_;
};

MinorRange enumerate_minors(std::size_t m, std::size_t n, std::size_t k, bool contiguous);

// Exact rank in exact mode.  Float mode counts pivots above
// tol·max(1, ‖M‖∞); tol defaults to sign_epsilon(precision).
std::size_t rank(const Matrix& m, std::optional<double> tol = std::nullopt);

// Relative sign tolerance for p-bit floats: 1e-9 · 2^(53-p).
long double sign_epsilon(unsigned bits);

// prod_i sum_j |s_ij|: bounds every term of the determinant expansion,
// so it scales the rounding error of a float determinant.
long double minor_scale(const Matrix& s);

} // namespace totpos
