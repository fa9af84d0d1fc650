#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eqlines/rational.hpp"

namespace eqlines {

struct GerzonResult {
    BigInt bound;
    bool equality_possible;
};

// N(d) <= d(d+1)/2, equality only for d in {2,3} or d+2 an odd square.
inline GerzonResult gerzon(long d) {
    if (d < 1) throw std::invalid_argument("gerzon needs d >= 1");
    BigInt bound = BigInt(d) * (d + 1) / 2;
    bool eq = d == 2 || d == 3;
    if (!eq) {
        BigInt target = d + 2;
        for (BigInt k = 1; k * k <= target; k += 2)
            if (k * k == target) {
                eq = true;
                break;
            }
    }
    return {bound, eq};
}

// Relative bound d(1-a^2)/(1-d a^2), valid only when d < 1/a^2.
inline std::optional<Rational> relative_bound(long d, const Rational& alpha) {
    if (d < 1) throw std::invalid_argument("relative_bound needs d >= 1");
    Rational a2 = alpha * alpha;
    if (!(Rational(d) < 1 / a2)) return std::nullopt;
    return Rational(d) * (1 - a2) / (1 - Rational(d) * a2);
}

struct ClassicalCaps {
    bool two_d_applies;                 // N_alpha(d) <= 2d unless 1/alpha is an odd integer
    std::optional<BigInt> known_exact;  // exact N_alpha(d) when known
    bool threshold_assumed = false;     // the alpha=1/5 threshold is not pinned by any source
};

// The dimension above which N_{1/5}(d) = floor(3(d-1)/2) is only stated
// "for all sufficiently large d"; this default is configurable and flagged.
inline constexpr long kOneFifthDefaultThreshold = 185;

inline ClassicalCaps classical_caps(const Rational& alpha, long d,
                                    long one_fifth_threshold = kOneFifthDefaultThreshold) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
    ClassicalCaps out{};
    Rational inv = 1 / alpha;
    bool odd_integer = denominator(inv) == 1 && numerator(inv) % 2 != 0;
    out.two_d_applies = !odd_integer;
    if (alpha == Rational(1, 3) && d >= 15) {
        out.known_exact = BigInt(2) * d - 2;
    } else if (alpha == Rational(1, 5) && d >= one_fifth_threshold) {
        out.known_exact = BigInt(3) * (d - 1) / 2;
        out.threshold_assumed = true;
    }
    return out;
}

// Every constant in the proof of the linear bound N_L(d) <= c_beta d for
// L = [-1,-beta] u {alpha}, chained exactly:
//   t    = 1/beta + 1
//   eps  = beta^2 / 2
//   n0   = 1 + 8/beta^2
//   B    = ceil(1/beta + 1)
//   delta= 1/(B+1)^2
//   n    = max(ceil(n0), ceil(t/delta))
//   R    <= binom(n + ceil(1/beta) + 1, n)   (Ramsey quantity, bounded)
//   M    = max(R_bound, ceil((1/eps + 1) 2^n))
//   c    = B * M
struct BukhBreakdown {
    Rational beta, t, eps, n0;
    BigInt B;
    Rational delta;
    BigInt n;
    BigInt R_bound;
    BigInt pow_term;
    BigInt M;
    BigInt c;
};

inline BukhBreakdown bukh_constant(const Rational& beta) {
    if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("beta must lie in (0,1]");
    BukhBreakdown b;
    b.beta = beta;
    b.t = 1 / beta + 1;
    b.eps = beta * beta / 2;
    b.n0 = 1 + 8 / (beta * beta);
    b.B = ceil_rational(1 / beta + 1);
    b.delta = Rational(1, (b.B + 1) * (b.B + 1));
    BigInt n_from_n0 = ceil_rational(b.n0);
    BigInt n_from_t = ceil_rational(b.t / b.delta);
    b.n = n_from_n0 > n_from_t ? n_from_n0 : n_from_t;
    b.R_bound = binomial(b.n + ceil_rational(1 / beta) + 1, b.n);
    b.pow_term = ceil_rational((1 / b.eps + 1) * Rational(pow2(b.n.convert_to<unsigned>())));
    b.M = b.R_bound > b.pow_term ? b.R_bound : b.pow_term;
    b.c = b.B * b.M;
    return b;
}

inline std::string breakdown_report(const BukhBreakdown& b) {
    std::ostringstream os;
    os << "beta     = " << to_string(b.beta) << "\n"
       << "t        = " << to_string(b.t) << "\n"
       << "eps      = " << to_string(b.eps) << "\n"
       << "n0       = " << to_string(b.n0) << "\n"
       << "B        = " << b.B.str() << "\n"
       << "delta    = " << to_string(b.delta) << "\n"
       << "n        = " << b.n.str() << "\n"
       << "R_bound  = " << b.R_bound.str() << "\n"
       << "pow_term = " << b.pow_term.str() << "\n"
       << "M        = " << b.M.str() << "\n"
       << "c = " << b.c.str() << "\n";
    return os.str();
}

}  // namespace eqlines
