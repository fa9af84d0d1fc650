#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eqlines/rational.hpp"
#include "eqlines/symmatrix.hpp"

using namespace eqlines;

namespace {

SymMatrix random_symmetric(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 6);
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a.set(i, j, Rational(num(rng), den(rng)));
    return a;
}

// PSD by construction: B^T B for a random rational B.
SymMatrix random_psd(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
    for (auto& row : b)
        for (auto& e : row) e = Rational(num(rng), 2);
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k) s += b[k][i] * b[k][j];
            a.set(i, j, s);
        }
    return a;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(2, 4)) == "1/2");
    CHECK(to_string(Rational(-3)) == "-3");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
}

TEST_CASE("big integer helpers") {
    CHECK(binomial(20, 18) == 190);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(4, 7) == 0);
    CHECK(pow2(48) == BigInt("281474976710656"));
    CHECK(ceil_rational(Rational(7, 2)) == 4);
    CHECK(ceil_rational(Rational(-7, 2)) == -3);
    CHECK(floor_rational(Rational(7, 2)) == 3);
    CHECK(ceil_rational(Rational(6)) == 6);
}

TEST_CASE("ldlt_certify: identity, all-ones, simplex gram") {
    auto id3 = ldlt_certify(SymMatrix::identity(3));
    CHECK(id3.is_psd);
    CHECK(id3.rank == 3);

    auto j4 = ldlt_certify(SymMatrix::ones(4));
    CHECK(j4.is_psd);
    CHECK(j4.rank == 1);

    // (4/3)I4 - (1/3)J4: eigenvalues 4/3 (x3) and 0.
    SymMatrix a = SymMatrix::identity(4).scaled(Rational(4, 3)) -
                  SymMatrix::ones(4).scaled(Rational(1, 3));
    auto cert = ldlt_certify(a);
    CHECK(cert.is_psd);
    CHECK(cert.rank == 3);
}

TEST_CASE("ldlt_certify produces verified witnesses on indefinite input") {
    SymMatrix a(2);
    a.set(0, 0, 1);
    a.set(1, 1, 1);
    a.set(0, 1, 2);  // eigenvalues 3, -1
    auto cert = ldlt_certify(a);
    REQUIRE_FALSE(cert.is_psd);
    REQUIRE(cert.failure_witness.has_value());
    CHECK(quadratic_form(a, *cert.failure_witness) < 0);
    CHECK(cert.rank == 2);

    // Zero diagonal with nonzero off-diagonal.
    SymMatrix b(2);
    b.set(0, 1, 1);
    auto bc = ldlt_certify(b);
    REQUIRE_FALSE(bc.is_psd);
    CHECK(quadratic_form(b, *bc.failure_witness) < 0);
}

TEST_CASE("ldlt rank agrees with Gaussian elimination oracle on random input") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + std::size_t(trial % 11);  // orders up to 12
        SymMatrix a = random_symmetric(rng, n);
        auto cert = ldlt_certify(a);
        CHECK(cert.rank == exact_rank(a));
        if (!cert.is_psd) CHECK(quadratic_form(a, *cert.failure_witness) < 0);
    }
}

TEST_CASE("random PSD matrices certify PSD and kron preserves PSD") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        SymMatrix a = random_psd(rng, 3);
        SymMatrix b = random_psd(rng, 2);
        CHECK(ldlt_certify(a).is_psd);
        CHECK(ldlt_certify(b).is_psd);
        CHECK(ldlt_certify(kron(a, b)).is_psd);
    }
}

TEST_CASE("inverse: identity, closed form, singular rejection") {
    CHECK(inverse(SymMatrix::identity(3)) == SymMatrix::identity(3));

    // (1/3)J3 + (2/3)I3 inverts to (3/2)(I3 - (1/5)J3).
    SymMatrix a = SymMatrix::ones(3).scaled(Rational(1, 3)) +
                  SymMatrix::identity(3).scaled(Rational(2, 3));
    SymMatrix expect = (SymMatrix::identity(3) - SymMatrix::ones(3).scaled(Rational(1, 5)))
                           .scaled(Rational(3, 2));
    SymMatrix inv = inverse(a);
    CHECK(inv == expect);
    CHECK(product_is_identity(a, inv));

    CHECK_THROWS_AS(inverse(SymMatrix::ones(2)), SingularMatrix);
}

TEST_CASE("inverse is an involution on random nonsingular matrices") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 15) {
        SymMatrix a = random_symmetric(rng, 4);
        try {
            SymMatrix inv = inverse(a);
            CHECK(inverse(inv) == a);
            CHECK(product_is_identity(a, inv));
            ++done;
        } catch (const SingularMatrix&) {
        }
    }
}

TEST_CASE("kron on identities, matchings, all-ones") {
    CHECK(kron(SymMatrix::identity(2), SymMatrix::identity(3)) == SymMatrix::identity(6));
    CHECK(kron(SymMatrix::ones(2), SymMatrix::ones(2)) == SymMatrix::ones(4));

    SymMatrix offdiag = SymMatrix::ones(2) - SymMatrix::identity(2);
    SymMatrix k = kron(offdiag, SymMatrix::identity(2));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(k.at(i, j) == Rational((i % 2 == j % 2 && i / 2 != j / 2) ? 1 : 0));
}

TEST_CASE("leading principal minors of certified PSD matrices are nonnegative") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        SymMatrix a = random_psd(rng, 4);
        REQUIRE(ldlt_certify(a).is_psd);
        for (std::size_t k = 1; k <= 4; ++k) {
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            SymMatrix sub = a.submatrix(idx);
            // determinant via elimination: product of pivots
            CHECK(ldlt_certify(sub).is_psd);
        }
    }
}
