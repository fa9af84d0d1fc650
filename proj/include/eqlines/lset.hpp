#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqlines/rational.hpp"

namespace eqlines {

struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Allowed inner products: a union of closed intervals and isolated points
// inside [-1, 1). Inner product 1 would mean two coinciding unit vectors.
struct LSet {
    struct Interval {
        Rational lo, hi;
    };
    std::vector<Interval> intervals;
    std::vector<Rational> points;

    bool contains(const Rational& v) const {
        for (const auto& iv : intervals)
            if (iv.lo <= v && v <= iv.hi) return true;
        return std::find(points.begin(), points.end(), v) != points.end();
    }

    // Membership for floating values: intervals inflated by tol, points
    // widened to [p - tol, p + tol].
    bool contains_approx(double v, double tol) const {
        for (const auto& iv : intervals)
            if (to_double(iv.lo) - tol <= v && v <= to_double(iv.hi) + tol) return true;
        for (const auto& p : points)
            if (std::abs(v - to_double(p)) <= tol) return true;
        return false;
    }

    std::string str() const {
        std::string s;
        for (const auto& iv : intervals) {
            if (!s.empty()) s += "u";
            s += "[" + to_string(iv.lo) + "," + to_string(iv.hi) + "]";
        }
        for (const auto& p : points) {
            if (!s.empty()) s += "u";
            s += "{" + to_string(p) + "}";
        }
        return s;
    }
};

// Grammar: term ('u' term)*; term = '[' num ',' num ']' | '{' num '}'.
// Numbers are rational or decimal literals, stored exactly.
inline LSet parse_lset(std::string_view text) {
    LSet out;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(i, msg); };
    auto skip_ws = [&]() {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto read_num = [&]() -> Rational {
        std::size_t start = i;
        while (i < text.size() && (std::string_view("+-/.").find(text[i]) != std::string_view::npos ||
                                   (text[i] >= '0' && text[i] <= '9')))
            ++i;
        if (i == start) fail("expected number");
        return parse_rational(text.substr(start, i - start), start);
    };

    bool first = true;
    while (true) {
        skip_ws();
        if (!first) {
            if (i >= text.size()) break;
            if (text[i] != 'u' && text[i] != 'U') fail("expected 'u' between terms");
            ++i;
            skip_ws();
        }
        first = false;
        if (i >= text.size()) fail("expected term");
        if (text[i] == '[') {
            ++i;
            skip_ws();
            Rational lo = read_num();
            skip_ws();
            if (i >= text.size() || text[i] != ',') fail("expected ','");
            ++i;
            skip_ws();
            Rational hi = read_num();
            skip_ws();
            if (i >= text.size() || text[i] != ']') fail("expected ']'");
            ++i;
            if (lo < -1 || hi < lo || hi >= 1)
                throw RangeError("interval [" + to_string(lo) + "," + to_string(hi) +
                                 "] not within [-1,1)");
            out.intervals.push_back({lo, hi});
        } else if (text[i] == '{') {
            ++i;
            skip_ws();
            Rational p = read_num();
            skip_ws();
            if (i >= text.size() || text[i] != '}') fail("expected '}'");
            ++i;
            if (p <= -1 || p >= 1) throw RangeError("point " + to_string(p) + " not in (-1,1)");
            out.points.push_back(p);
        } else {
            fail("expected '[' or '{'");
        }
        skip_ws();
        if (i >= text.size()) break;
    }

    // Disjointness: intervals pairwise, and points off every interval.
    for (std::size_t a = 0; a < out.intervals.size(); ++a)
        for (std::size_t b = a + 1; b < out.intervals.size(); ++b) {
            const auto &x = out.intervals[a], &y = out.intervals[b];
            if (x.lo <= y.hi && y.lo <= x.hi) throw RangeError("overlapping intervals in L-set");
        }
    for (const auto& p : out.points) {
        for (const auto& iv : out.intervals)
            if (iv.lo <= p && p <= iv.hi)
                throw RangeError("point " + to_string(p) + " lies inside an interval of the L-set");
        if (std::count(out.points.begin(), out.points.end(), p) > 1)
            throw RangeError("duplicate point in L-set");
    }
    return out;
}

}  // namespace eqlines
