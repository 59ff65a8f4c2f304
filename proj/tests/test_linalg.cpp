#include <doctest.h>

#include <random>

#include "equistrata/linalg.hpp"

using namespace equistrata;

namespace {

QMat random_matrix(std::mt19937& rng, size_t r, size_t c) {
    std::uniform_int_distribution<int> d(-5, 5);
    QMat m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("rref ranks and nullspace") {
    QMat m(2, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(1, 2) = 6;
    CHECK(rank(m) == 1);
    QMat ns = nullspace(m);
    CHECK(ns.rows() == 2);
    for (size_t k = 0; k < ns.rows(); ++k) {
        Rational s = 0;
        for (size_t j = 0; j < 3; ++j) s += m(0, j) * ns(k, j);
        CHECK(s == 0);
    }
}

TEST_CASE("solve and inverse") {
    QMat a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = 3;
    auto x = solve(a, {Rational(5), Rational(10)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 3);
    QMat inv = inverse(a);
    CHECK(inv * a == QMat::identity(2));

    QMat bad(2, 2);
    bad(0, 0) = 1;
    bad(1, 0) = 1;  // x = 1 and x = 2 inconsistent
    CHECK_FALSE(solve(bad, {Rational(1), Rational(2)}).has_value());
}

TEST_CASE("random nullspace and intersection properties") {
    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        QMat a = random_matrix(rng, 3, 5);
        QMat ns = nullspace(a);
        CHECK(ns.rows() == 5 - rank(a));
        for (size_t k = 0; k < ns.rows(); ++k) {
            auto prod = a.apply(ns.row(k));
            for (const auto& v : prod) CHECK(v == 0);
        }
        QMat b = random_matrix(rng, 2, 5);
        QMat meet = intersect_row_spaces(row_space_basis(a), row_space_basis(b));
        for (size_t k = 0; k < meet.rows(); ++k) {
            CHECK(in_row_space(row_space_basis(a), meet.row(k)));
            CHECK(in_row_space(row_space_basis(b), meet.row(k)));
        }
        QMat stacked = a;
        for (size_t r = 0; r < b.rows(); ++r) stacked.append_row(b.row(r));
        CHECK(rank(a) + rank(b) == rank(stacked) + meet.rows());
    }
}
