#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eqlines/bounds.hpp"
#include "eqlines/constructions.hpp"

using namespace eqlines;

TEST_CASE("gerzon bound and equality condition") {
    auto g7 = gerzon(7);
    CHECK(g7.bound == 28);
    CHECK(g7.equality_possible);  // 7 + 2 = 3^2

    auto g2 = gerzon(2);
    CHECK(g2.bound == 3);
    CHECK(g2.equality_possible);

    auto g4 = gerzon(4);
    CHECK(g4.bound == 10);
    CHECK_FALSE(g4.equality_possible);

    CHECK(gerzon(23).equality_possible);  // 25 = 5^2
    CHECK_FALSE(gerzon(14).equality_possible);
    CHECK_THROWS_AS(gerzon(0), std::invalid_argument);
}

TEST_CASE("relative bound: values and validity boundary") {
    auto b7 = relative_bound(7, Rational(1, 3));
    REQUIRE(b7);
    CHECK(*b7 == Rational(28));

    auto b5 = relative_bound(5, Rational(1, 3));
    REQUIRE(b5);
    CHECK(*b5 == Rational(10));

    CHECK_FALSE(relative_bound(9, Rational(1, 3)));   // d = 1/alpha^2 exactly
    CHECK_FALSE(relative_bound(12, Rational(1, 3)));
}

TEST_CASE("classical caps") {
    auto a = classical_caps(Rational(1, 4), 10);
    CHECK(a.two_d_applies);  // 1/alpha = 4, even
    CHECK_FALSE(a.known_exact);

    auto b = classical_caps(Rational(1, 3), 20);
    CHECK_FALSE(b.two_d_applies);
    REQUIRE(b.known_exact);
    CHECK(*b.known_exact == 38);
    CHECK_FALSE(b.threshold_assumed);

    auto c = classical_caps(Rational(1, 5), 201);
    REQUIRE(c.known_exact);
    CHECK(*c.known_exact == 300);
    CHECK(c.threshold_assumed);

    // below the (configurable) threshold the 1/5 value is not claimed
    CHECK_FALSE(classical_caps(Rational(1, 5), 100).known_exact);
    CHECK(classical_caps(Rational(1, 5), 100, 90).known_exact.has_value());

    CHECK_FALSE(classical_caps(Rational(1, 3), 14).known_exact);
    CHECK_THROWS_AS(classical_caps(Rational(2), 5), std::invalid_argument);
}

TEST_CASE("bukh_constant: beta = 1 chain, every intermediate pinned") {
    BukhBreakdown b = bukh_constant(Rational(1));
    CHECK(b.t == Rational(2));
    CHECK(b.eps == Rational(1, 2));
    CHECK(b.n0 == Rational(9));
    CHECK(b.B == 2);
    CHECK(b.delta == Rational(1, 9));
    CHECK(b.n == 18);
    CHECK(b.R_bound == 190);
    CHECK(b.pow_term == 786432);  // 3 * 2^18
    CHECK(b.M == 786432);
    CHECK(b.c == 1572864);
}

TEST_CASE("bukh_constant: beta = 1/2 chain") {
    BukhBreakdown b = bukh_constant(Rational(1, 2));
    CHECK(b.t == Rational(3));
    CHECK(b.eps == Rational(1, 8));
    CHECK(b.n0 == Rational(33));
    CHECK(b.B == 3);
    CHECK(b.delta == Rational(1, 16));
    CHECK(b.n == 48);
    CHECK(b.pow_term == BigInt(9) * BigInt("281474976710656"));  // 9 * 2^48
}

TEST_CASE("bukh_constant: c is non-increasing in beta") {
    BigInt prev = -1;
    for (Rational beta : {Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                          Rational(1)}) {
        BigInt c = bukh_constant(beta).c;
        if (prev >= 0) CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("bukh_constant: log2 M <= 64 / beta^2 regression envelope") {
    for (Rational beta : {Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 4)}) {
        BigInt m = bukh_constant(beta).M;
        // bit count is within 1 of log2
        long bits = long(boost::multiprecision::msb(m)) + 1;
        Rational cap = 64 / (beta * beta);
        CHECK(Rational(bits) <= cap);
    }
}

TEST_CASE("theorem statement sanity: c*d covers concrete codes") {
    BukhBreakdown b = bukh_constant(Rational(1, 3));
    for (auto [code, d] : {std::pair{ls_family({2, 14, Rational(1, 2)}), 15L},
                           std::pair{gallery("e7-28"), 7L}}) {
        CHECK(BigInt(long(code.size())) <= b.c * d);
    }
}

TEST_CASE("relative bound matches gallery witnesses at small dimension") {
    CHECK(*relative_bound(5, Rational(1, 3)) == Rational(long(gallery("petersen-10").size())));
    CHECK(*relative_bound(7, Rational(1, 3)) == Rational(long(gallery("e7-28").size())));
}

TEST_CASE("gallery witnesses respect both gerzon and relative bounds") {
    CHECK(BigInt(long(gallery("petersen-10").size())) <= gerzon(5).bound);
    CHECK(BigInt(long(gallery("e7-28").size())) <= gerzon(7).bound);
}
