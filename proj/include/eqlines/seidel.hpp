#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "eqlines/rational.hpp"
#include "eqlines/symmatrix.hpp"

namespace eqlines {

struct OrderTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleAlpha : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symmetric +-1 matrix with zero diagonal. Switching (negating a subset of
// rows and their columns) leaves the underlying line system unchanged;
// normalize() switches so that row 0 is all +1.
class SeidelMatrix {
public:
    SeidelMatrix() = default;
    explicit SeidelMatrix(std::size_t order) : m_(order), e_(order * order, 1) {
        for (std::size_t i = 0; i < order; ++i) e_[i * order + i] = 0;
    }

    std::size_t order() const { return m_; }
    int entry(std::size_t i, std::size_t j) const { return e_[i * m_ + j]; }

    void set(std::size_t i, std::size_t j, int v) {
        e_[i * m_ + j] = std::int8_t(v);
        e_[j * m_ + i] = std::int8_t(v);
    }

    SeidelMatrix normalized() const {
        SeidelMatrix s = *this;
        for (std::size_t v = 1; v < m_; ++v)
            if (s.entry(0, v) < 0) s.switch_vertex(v);
        return s;
    }

    void switch_vertex(std::size_t v) {
        for (std::size_t j = 0; j < m_; ++j) {
            if (j == v) continue;
            set(v, j, -entry(v, j));
        }
    }

    // Canonical bit encoding of the free entries (i < j, i >= 1) of a
    // normalized matrix; bit set iff the entry is -1.
    std::uint64_t encoding() const {
        std::uint64_t code = 0;
        unsigned bit = 0;
        for (std::size_t i = 1; i < m_; ++i)
            for (std::size_t j = i + 1; j < m_; ++j, ++bit)
                if (entry(i, j) < 0) code |= std::uint64_t(1) << bit;
        return code;
    }

    static SeidelMatrix from_encoding(std::size_t m, std::uint64_t code) {
        SeidelMatrix s(m);
        unsigned bit = 0;
        for (std::size_t i = 1; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j, ++bit)
                if ((code >> bit) & 1) s.set(i, j, -1);
        return s;
    }

    SymMatrix gram(const Rational& alpha) const {
        SymMatrix g(m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                g.set(i, j, i == j ? Rational(1) : alpha * entry(i, j));
        return g;
    }

private:
    std::size_t m_ = 0;
    std::vector<std::int8_t> e_;
};

struct SpectralCert {
    double lambda_min = 0;
    std::size_t multiplicity = 0;
    double alpha = 0;                       // -1/lambda_min
    std::optional<Rational> alpha_exact;    // present when rational-certified
    std::size_t d_min = 0;                  // order - multiplicity
    std::string exactness;                  // "rational-certified" | "float-certified"
};

namespace detail {

// Best rational approximation with denominator <= max_den (continued
// fractions), used to probe whether the float eigenvalue is exactly rational.
inline Rational rational_reconstruct(double x, long max_den) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(v);
        long a = long(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = v - fl;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    return Rational(p1, q1 == 0 ? 1 : q1);
}

}  // namespace detail

// Smallest eigenvalue, its multiplicity, and the implied angle/dimension.
// Floating clustering at 1e-8; when the eigenvalue reconstructs to a rational
// with small denominator that is an exact root, multiplicity is re-certified
// by exact rank computation over the rationals.
inline SpectralCert spectral_feasibility(const SeidelMatrix& s, double cluster_tol = 1e-8) {
    const std::size_t m = s.order();
    Eigen::MatrixXd a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = s.entry(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    double lam = es.eigenvalues()(0);

    if (lam >= -1.0 - cluster_tol)
        throw InfeasibleAlpha("smallest eigenvalue " + std::to_string(lam) +
                              " >= -1: alpha would reach 1");

    SpectralCert cert;
    cert.lambda_min = lam;
    cert.multiplicity = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        if (es.eigenvalues()(k) - lam <= cluster_tol) ++cert.multiplicity;
    cert.alpha = -1.0 / lam;
    cert.exactness = "float-certified";

    Rational cand = detail::rational_reconstruct(lam, 100);
    if (std::abs(to_double(cand) - lam) < 1e-6) {
        SymMatrix shifted(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                shifted.set(i, j, Rational(s.entry(i, j)) - (i == j ? cand : Rational(0)));
        std::size_t rank = exact_rank(shifted);
        if (rank < m) {
            cert.multiplicity = m - rank;
            cert.alpha_exact = -1 / cand;
            cert.alpha = to_double(*cert.alpha_exact);
            cert.exactness = "rational-certified";
        }
    }
    cert.d_min = m - cert.multiplicity;
    return cert;
}

// Yields every switching-normalized Seidel matrix of the given order.
inline void enumerate_switching_classes(std::size_t m,
                                        const std::function<void(const SeidelMatrix&)>& sink) {
    if (m > 8) throw OrderTooLarge("enumeration is limited to order 8");
    if (m < 2) throw std::invalid_argument("need order >= 2");
    unsigned bits = unsigned((m - 1) * (m - 2) / 2);
    for (std::uint64_t code = 0; code < (std::uint64_t(1) << bits); ++code)
        sink(SeidelMatrix::from_encoding(m, code));
}

// Optional second pass: dedupe normalized matrices by the minimum encoding
// over permutations of the non-root vertices (canonical form of the -1 graph).
inline std::vector<SeidelMatrix> enumerate_dedup(std::size_t m) {
    if (m > 8) throw OrderTooLarge("enumeration is limited to order 8");
    std::vector<std::size_t> perm;
    for (std::size_t v = 1; v < m; ++v) perm.push_back(v);
    std::vector<std::uint64_t> seen;
    std::vector<SeidelMatrix> out;
    enumerate_switching_classes(m, [&](const SeidelMatrix& s) {
        std::uint64_t canon = ~std::uint64_t(0);
        std::vector<std::size_t> p = perm;
        do {
            SeidelMatrix t(m);
            for (std::size_t i = 1; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) t.set(p[i - 1], p[j - 1], s.entry(i, j));
            std::uint64_t e = t.encoding();
            if (e < canon) canon = e;
        } while (std::next_permutation(p.begin(), p.end()));
        if (canon == s.encoding()) out.push_back(s);
        (void)seen;
    });
    return out;
}

struct SearchResult {
    long d = 0;
    std::size_t m_max = 0;
    std::optional<SeidelMatrix> witness;
    std::optional<SpectralCert> witness_cert;
    bool exhaustive = false;
};

// Exhaustive scan m = m_cap .. d+1 for the largest order admitting a Seidel
// matrix whose smallest-eigenvalue multiplicity certifies d_min <= d.
// Deterministic across thread counts: ties break to the least encoding.
inline SearchResult max_lines(long d, std::size_t m_cap, unsigned threads = 1) {
    if (d < 2) throw std::invalid_argument("max_lines needs d >= 2");
    if (m_cap > 8) throw OrderTooLarge("enumeration is limited to order 8");
    SearchResult result;
    result.d = d;
    result.exhaustive = true;

    for (std::size_t m = m_cap; m + 0 > std::size_t(d); --m) {
        unsigned bits = unsigned((m - 1) * (m - 2) / 2);
        std::uint64_t total = std::uint64_t(1) << bits;
        unsigned nthreads = std::max(1u, threads);
        std::vector<std::uint64_t> best_per_thread(nthreads, ~std::uint64_t(0));

        auto worker = [&](unsigned tid) {
            std::uint64_t best = ~std::uint64_t(0);
            for (std::uint64_t code = tid; code < total; code += nthreads) {
                SeidelMatrix s = SeidelMatrix::from_encoding(m, code);
                try {
                    SpectralCert c = spectral_feasibility(s);
                    if (long(c.d_min) <= d && code < best) best = code;
                } catch (const InfeasibleAlpha&) {
                }
            }
            best_per_thread[tid] = best;
        };
        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        std::uint64_t best = ~std::uint64_t(0);
        for (std::uint64_t b : best_per_thread) best = std::min(best, b);
        if (best != ~std::uint64_t(0)) {
            result.m_max = m;
            result.witness = SeidelMatrix::from_encoding(m, best);
            result.witness_cert = spectral_feasibility(*result.witness);
            return result;
        }
        if (m == std::size_t(d) + 1) break;
    }
    return result;
}

}  // namespace eqlines
