#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "totpos/numkernel.hpp"
#include "totpos/witnesses.hpp"

#include <algorithm>
#include <set>

using namespace totpos;

static Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

TEST_CASE("scalar: exact values stay reduced and never mix with floats") {
    Scalar a = q(6, 8);
    CHECK(a.exact().get_num() == 3);
    CHECK(a.exact().get_den() == 4);
    CHECK(q(3, -6).str() == "-1/2");
    CHECK(Scalar::parse("3/6") == q(1, 2));
    CHECK(Scalar::parse("0.25") == q(1, 4));
    CHECK(Scalar::parse("-1.5e-2") == q(-3, 200));
    CHECK(Scalar::parse("7") == q(7));
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("abc"));
    CHECK_THROWS(Scalar::parse("1/-2"));
    Scalar f(make_float(0.5, 128));
    CHECK_THROWS_AS(a + f, MixedScalars);
    CHECK(f.precision() == 128);
    CHECK((a.as_float(128) + f).to_double() == doctest::Approx(1.25));
    CHECK_THROWS_AS(a / q(0), std::domain_error);
}

TEST_CASE("scalar: float conversion records inexactness") {
    CHECK_FALSE(q(1, 2).to_float(64).inexact);
    CHECK(q(1, 3).to_float(64).inexact);
    CHECK(Scalar::parse_float("0.1", 200).precision() == 200);
}

TEST_CASE("det examples") {
    CHECK(det(Matrix::from_rows({{1, 1}, {1, 1}})) == q(0));
    Scalar dc = det(matrix_C(128));
    CHECK_FALSE(dc.is_exact());
    CHECK(std::abs(dc.to_double()) <= 1e-12);
    Scalar a = det(Matrix::from_rows({{q(2, 1), q(6, 1)}, {q(1, 1), q(3, 1)}}));
    CHECK(a.is_exact());
    CHECK(a == q(0));
    CHECK_THROWS_AS(det(Matrix::from_rows({{1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("minor examples") {
    Matrix m = Matrix::from_rows({{3, 1}, {2, 5}});
    CHECK(minor(m, {{0, 1}, {0, 1}}) == det(m));
    Matrix n = family_N(q(1, 2), q(1));
    CHECK(minor(n, {{2, 3}, {2, 3}}).exact() == oracle::minor_cofactor(oracle::to_q(n), {2, 3}, {2, 3}));
    CHECK(minor(n, {{1}, {3}}) == n(1, 3));
    CHECK_THROWS(minor(m, {{0, 2}, {0, 1}}));
    CHECK_THROWS(minor(m, {{0, 1}, {0}}));
    CHECK_THROWS(minor(m, {{1, 0}, {0, 1}}));
}

TEST_CASE("enumerate_minors counts and order") {
    CHECK(enumerate_minors(2, 2, 1, false).count() == 4);
    CHECK(enumerate_minors(4, 4, 2, true).count() == 9);
    CHECK(enumerate_minors(3, 3, 3, false).count() == 1);
    CHECK_THROWS(enumerate_minors(3, 3, 4, false));
    CHECK_THROWS(enumerate_minors(3, 3, 0, false));

    auto binom = [](std::size_t n, std::size_t k) {
        std::size_t r = 1;
        for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    };
    for (std::size_t m = 1; m <= 5; ++m)
        for (std::size_t n = 1; n <= 5; ++n)
            for (std::size_t k = 1; k <= std::min(m, n); ++k) {
                std::vector<MinorIndex> full(enumerate_minors(m, n, k, false).begin(), enumerate_minors(m, n, k, false).end());
                CHECK(full.size() == binom(m, k) * binom(n, k));
                CHECK(enumerate_minors(m, n, k, false).count() == full.size());
                // lexicographic, no repeats, same set as the oracle's subsets
                auto key = [](const MinorIndex& x) { return std::make_pair(x.rows, x.cols); };
                CHECK(std::is_sorted(full.begin(), full.end(), [&](auto& a, auto& b) { return key(a) < key(b); }));
                std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
                for (auto& x : full) seen.insert(key(x));
                CHECK(seen.size() == full.size());

                std::size_t contiguous = 0;
                for (const auto& x : enumerate_minors(m, n, k, true)) {
                    ++contiguous;
                    CHECK(x.rows.back() - x.rows.front() == k - 1);
                    CHECK(x.cols.back() - x.cols.front() == k - 1);
                }
                CHECK(contiguous == (m - k + 1) * (n - k + 1));
                CHECK(enumerate_minors(m, n, k, true).count() == contiguous);
            }
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::zeros(3, 3)) == 0);
    CHECK(rank(matrix_C(128)) == 2);
    CHECK(rank(family_N(q(1, 2), q(1))) == 4);
    CHECK(rank(Matrix::from_rows({{1, 2, 3}, {2, 4, 6}})) == 1);
}

TEST_CASE("property: exact det equals cofactor expansion") {
    oracle::Gen g(11);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 4;
        Matrix m = g.rational_matrix(n, n, -5, 5);
        CHECK(det(m).exact() == oracle::det_cofactor(oracle::to_q(m)));
    }
}

TEST_CASE("property: transpose and row swaps") {
    oracle::Gen g(12);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + t % 5;
        Matrix m = g.rational_matrix(n, n, -4, 4);
        CHECK(det(m.transpose()) == det(m));
        std::vector<std::size_t> rows(n), cols(n);
        for (std::size_t i = 0; i < n; ++i) rows[i] = cols[i] = i;
        std::swap(rows[0], rows[n - 1]);
        CHECK(det(m.submatrix(rows, cols)) == -det(m));
    }
}

TEST_CASE("property: float det agrees with exact det") {
    oracle::Gen g(13);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 6;
        Matrix m = g.rational_matrix(n, n, -9, 9, 7);
        const double exact = det(m).to_double();
        const double approx = det(m.to_float(128)).to_double();
        CHECK(std::abs(exact - approx) <= 1e-10 * std::max(1.0, std::abs(exact)));
        CHECK(det(m, 64).to_double() == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("property: rank matches the largest nonvanishing minor") {
    oracle::Gen g(14);
    for (int t = 0; t < 150; ++t) {
        const std::size_t m = 1 + t % 4, n = 1 + (t / 4) % 4;
        // low-rank products hit every rank value
        const std::size_t r = 1 + g.integer(0, 3);
        Matrix a = g.rational_matrix(m, r, -3, 3) * g.rational_matrix(r, n, -3, 3);
        const std::size_t want = oracle::rank_brute(a);
        CHECK(rank(a) == want);
        CHECK(rank(a.to_float(128)) == want);
    }
}
