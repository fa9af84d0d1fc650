#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqlines {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar, always kept in lowest terms with positive
// denominator (cpp_rational maintains both invariants).
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

inline BigInt pow2(unsigned n) {
    BigInt r = 1;
    return r << n;
}

inline BigInt binomial(const BigInt& n, const BigInt& k) {
    if (k < 0 || k > n) return 0;
    BigInt kk = k;
    if (n - k < kk) kk = n - k;
    BigInt r = 1;
    for (BigInt i = 0; i < kk; ++i) {
        r = r * (n - i) / (i + 1);
    }
    return r;
}

inline BigInt ceil_rational(const Rational& q) {
    BigInt num = numerator(q), den = denominator(q);
    BigInt d = num / den;
    if (d * den < num) ++d;
    return d;
}

inline BigInt floor_rational(const Rational& q) {
    BigInt num = numerator(q), den = denominator(q);
    BigInt d = num / den;
    if (d * den > num) --d;
    return d;
}

// Parses "p", "p/q" or a decimal literal ("0.25" -> 1/4), exactly.
inline Rational parse_rational(std::string_view text, std::size_t base_pos = 0) {
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(base_pos + i, msg); };
    if (text.empty()) fail("empty number");

    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    auto digits = [&]() {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) fail("expected digits");
        return std::string(text.substr(start, i - start));
    };

    BigInt num(digits());
    BigInt den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = BigInt(digits());
        if (den == 0) fail("zero denominator");
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        std::string frac = digits();
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    }
    if (i != text.size()) fail("trailing characters in number");
    if (negative) num = -num;
    return Rational(num, den);
}

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace eqlines
