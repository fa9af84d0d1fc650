#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "eqlines/code.hpp"
#include "eqlines/constructions.hpp"
#include "eqlines/lset.hpp"

using namespace eqlines;

TEST_CASE("parse_lset: interval plus point, single point, decimals") {
    LSet L = parse_lset("[-1,-1/3]u{1/3}");
    REQUIRE(L.intervals.size() == 1);
    REQUIRE(L.points.size() == 1);
    CHECK(L.intervals[0].lo == Rational(-1));
    CHECK(L.intervals[0].hi == Rational(-1, 3));
    CHECK(L.points[0] == Rational(1, 3));

    LSet single = parse_lset("{0}");
    CHECK(single.intervals.empty());
    CHECK(single.points.size() == 1);

    LSet mixed = parse_lset("[-1,-0.25]u{1/4}u{1/2}");
    CHECK(mixed.intervals[0].hi == Rational(-1, 4));
    CHECK(mixed.points.size() == 2);
}

TEST_CASE("parse_lset: errors") {
    CHECK_THROWS_AS(parse_lset(""), ParseError);
    CHECK_THROWS_AS(parse_lset("[-1,-1/3"), ParseError);
    CHECK_THROWS_AS(parse_lset("{2}"), RangeError);
    CHECK_THROWS_AS(parse_lset("[-1,1]"), RangeError);       // hi must stay < 1
    CHECK_THROWS_AS(parse_lset("[-1,0]u{0}"), RangeError);   // point inside interval
    CHECK_THROWS_AS(parse_lset("[-1,-1/2]u[-2/3,-1/3]"), RangeError);
    CHECK_THROWS_AS(parse_lset("{1/3}x{1/2}"), ParseError);
}

TEST_CASE("validate: simplex against matching and mismatching L") {
    Code s3 = simplex(3);
    ValidationReport ok = validate(s3, parse_lset("{-1/3}"));
    CHECK(ok.ok);
    CHECK(ok.dimension == 3);
    CHECK(ok.size == 4);

    ValidationReport bad = validate(s3, parse_lset("{1/3}"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.offending_pairs.size() == 6);
}

TEST_CASE("validate: ls_family(2,14,1/2) is a 28-point code in dimension 15") {
    Code c = ls_family({2, 14, Rational(1, 2)});
    ValidationReport rep = validate(c, parse_lset("[-1,-1/3]u{1/3}"));
    CHECK(rep.ok);
    CHECK(rep.dimension == 15);
    CHECK(rep.size == 28);
}

TEST_CASE("validate rejects non-unit diagonal and non-PSD gram") {
    SymMatrix g(2);
    g.set(0, 0, 2);
    g.set(1, 1, 1);
    CHECK_THROWS_AS(validate(Code::from_gram(g), parse_lset("{0}")), NotUnit);

    SymMatrix h(2);
    h.set(0, 0, 1);
    h.set(1, 1, 1);
    h.set(0, 1, 2);
    try {
        validate(Code::from_gram(h), parse_lset("{0}"));
        FAIL("expected NotPsd");
    } catch (const NotPsd& e) {
        CHECK(quadratic_form(h, e.witness) < 0);
    }
}

TEST_CASE("attachment_graph: complete, matching, empty") {
    LSet L = parse_lset("[-1,-1/3]u{1/3}");

    Graph k4 = attachment_graph(simplex(3), L);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK(k4.has_edge(i, j));

    Graph matching = attachment_graph(ls_family({2, 3, Rational(1, 2)}), L);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            CHECK(matching.has_edge(i, j) == (j == i + 3));

    SymMatrix g(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j <= i; ++j) g.set(i, j, i == j ? Rational(1) : Rational(1, 3));
    Graph empty = attachment_graph(Code::from_gram(g), L);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) CHECK_FALSE(empty.has_edge(i, j));
}

TEST_CASE("attachment_graph rejects L outside the theorem shape") {
    Code s3 = simplex(3);
    CHECK_THROWS_AS(attachment_graph(s3, parse_lset("{-1/3}u{1/4}u{1/3}")), AmbiguousL);
    CHECK_THROWS_AS(attachment_graph(s3, parse_lset("[1/4,1/2]")), AmbiguousL);
}

TEST_CASE("realize: identity, planar simplex, ls_family round trip") {
    Code id2 = realize(Code::from_gram(SymMatrix::identity(2)), 1e-9);
    REQUIRE(id2.vecs.rows() == 2);
    REQUIRE(id2.vecs.cols() == 2);
    CHECK(std::abs(id2.vecs.col(0).dot(id2.vecs.col(1))) < 1e-9);

    Code s2 = realize(simplex(2), 1e-9);
    REQUIRE(s2.vecs.rows() == 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(std::abs(s2.vecs.col(i).dot(s2.vecs.col(j)) + 0.5) < 1e-9);

    Code fam = ls_family({2, 2, Rational(1, 2)});
    Code vecs = realize(fam, 1e-9);
    CHECK(vecs.vecs.rows() == 3);
    Eigen::MatrixXd g = gram_of(vecs);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(g(i, j) - to_double(fam.gram.at(i, j))) < 1e-8);
}

TEST_CASE("gram_of: orthonormal basis, icosahedron, single vector") {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(3, 3);
    Eigen::MatrixXd g = gram_of(Code::from_vectors(basis));
    CHECK((g - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

    Code ico = gallery("icosahedron-6");
    Eigen::MatrixXd gi = gram_of(ico);
    const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            CHECK(std::abs(std::abs(gi(i, j)) - inv_sqrt5) < 1e-9);

    Eigen::MatrixXd one(3, 1);
    one << 1, 0, 0;
    Eigen::MatrixXd g1 = gram_of(Code::from_vectors(one));
    REQUIRE(g1.rows() == 1);
    CHECK(std::abs(g1(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("round trip property: exact gram -> vectors -> gram within 1e-8") {
    for (const auto& code :
         {simplex(4), ls_family({3, 4, Rational(1, 2)}), gallery("petersen-10")}) {
        Code v = realize(code, 1e-9);
        Eigen::MatrixXd g = gram_of(v);
        for (std::size_t i = 0; i < code.size(); ++i)
            for (std::size_t j = 0; j < code.size(); ++j)
                CHECK(std::abs(g(i, j) - to_double(code.gram.at(i, j))) < 1e-8);
        ValidationReport rep = validate(code, parse_lset("[-1,-1/100]u{1/2}"));
        CHECK(rep.dimension == std::size_t(v.vecs.rows()));
    }
}

TEST_CASE("code file format: rational files reload byte-identically") {
    Code c = ls_family({2, 5, Rational(1, 2)});
    std::string path = "codes_io_test.json";
    save_code(c, path);
    Code back = load_code(path);
    CHECK(back.gram == c.gram);
    CHECK(back.label == c.label);
    std::ifstream in(path, std::ios::binary);
    std::stringstream first;
    first << in.rdbuf();
    save_code(back, path);
    std::ifstream in2(path, std::ios::binary);
    std::stringstream second;
    second << in2.rdbuf();
    CHECK(first.str() == second.str());
    std::remove(path.c_str());
}

TEST_CASE("code file format: vectors round trip and bad files are rejected") {
    Code ico = gallery("icosahedron-6");
    std::string path = "codes_io_vec_test.json";
    save_code(ico, path);
    Code back = load_code(path);
    CHECK(back.form == Code::Form::vectors);
    CHECK((back.vecs - ico.vecs).cwiseAbs().maxCoeff() < 1e-15);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_code("does_not_exist.json"), IoError);
    std::ofstream(path) << "{\"kind\": \"nope\"}";
    CHECK_THROWS_AS(load_code(path), IoError);
    std::remove(path.c_str());
}

TEST_CASE("validate is order-invariant in ok status") {
    Code c = ls_family({2, 4, Rational(1, 2)});
    LSet L = parse_lset("[-1,-1/3]u{1/3}");
    // permute the points by reversing indices
    std::size_t m = c.size();
    SymMatrix perm(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            perm.set(i, j, c.gram.at(m - 1 - i, m - 1 - j));
    CHECK(validate(Code::from_gram(perm), L).ok == validate(c, L).ok);

    LSet wrong = parse_lset("{1/3}");
    auto a = validate(c, wrong);
    auto b = validate(Code::from_gram(perm), wrong);
    CHECK(a.ok == b.ok);
    CHECK(a.offending_pairs.size() == b.offending_pairs.size());
}
