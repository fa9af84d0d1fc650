#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqlines/rational.hpp"

namespace eqlines {

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("matrix is singular") {}
};

// Dense symmetric matrix over exact rationals. Writes through set() keep the
// two mirrored entries in sync.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t order) : n_(order), a_(order * order, Rational(0)) {}

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static SymMatrix ones(std::size_t n) {
        SymMatrix m(n);
        for (auto& e : m.a_) e = 1;
        return m;
    }

    std::size_t order() const { return n_; }

    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, Rational v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = std::move(v);
    }

    bool operator==(const SymMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    SymMatrix operator+(const SymMatrix& o) const {
        SymMatrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    SymMatrix operator-(const SymMatrix& o) const {
        SymMatrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    SymMatrix scaled(const Rational& c) const {
        SymMatrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = c * a_[k];
        return r;
    }

    // Principal submatrix on the given (distinct) indices.
    SymMatrix submatrix(const std::vector<std::size_t>& idx) const {
        SymMatrix r(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) r.set(i, j, at(idx[i], idx[j]));
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<Rational> a_;
};

struct PsdCertificate {
    bool is_psd = false;
    std::size_t rank = 0;
    // Present iff !is_psd; satisfies x^T A x < 0 exactly.
    std::optional<std::vector<Rational>> failure_witness;
};

inline Rational quadratic_form(const SymMatrix& a, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.order(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < a.order(); ++j) {
            if (x[j] == 0) continue;
            s += x[i] * a.at(i, j) * x[j];
        }
    }
    return s;
}

namespace detail {

// Dense working copy with row/column bookkeeping for pivoted elimination.
struct Workspace {
    std::size_t n;
    std::vector<Rational> m;
    Rational& at(std::size_t i, std::size_t j) { return m[i * n + j]; }
    explicit Workspace(const SymMatrix& a) : n(a.order()), m(a.order() * a.order()) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) at(i, j) = a.at(i, j);
    }
};

}  // namespace detail

inline std::size_t exact_rank(const SymMatrix& a);

// Exact LDL^T with symmetric diagonal pivoting (largest-magnitude remaining
// diagonal entry first). For a symmetric matrix this either certifies PSD
// with the exact rank, or produces a witness vector x with x^T A x < 0:
//   - a negative pivot yields a witness from the accumulated elimination;
//   - a zero diagonal with a nonzero off-diagonal entry in the remaining
//     block is handled by probing the two sign choices of a 2x2 direction.
inline PsdCertificate ldlt_certify(const SymMatrix& a) {
    const std::size_t n = a.order();
    detail::Workspace w(a);
    // perm[k] = original index processed at step k.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<bool> eliminated(n, false);
    // Rows of the inverse-transpose elimination operator: coeff[i] expresses
    // the current row i of the working matrix as a combination of original
    // rows, so a bad direction in working coordinates maps back exactly.
    std::vector<std::vector<Rational>> coeff(n);
    for (std::size_t i = 0; i < n; ++i) {
        coeff[i].assign(n, Rational(0));
        coeff[i][i] = 1;
    }

    auto verify_witness = [&](std::vector<Rational> x) -> PsdCertificate {
        Rational q = quadratic_form(a, x);
        if (!(q < 0)) throw std::logic_error("internal: witness does not certify");
        PsdCertificate c;
        c.is_psd = false;
        c.rank = exact_rank(a);
        c.failure_witness = std::move(x);
        return c;
    };

    std::size_t rank = 0;
    for (std::size_t step = 0; step < n; ++step) {
        // Pick the remaining diagonal entry of largest magnitude.
        std::size_t best = n;
        Rational best_abs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (eliminated[i]) continue;
            Rational v = abs(w.at(i, i));
            if (best == n || v > best_abs) {
                best = i;
                best_abs = v;
            }
        }
        Rational pivot = w.at(best, best);
        if (pivot < 0) return verify_witness(coeff[best]);
        if (pivot == 0) {
            // All remaining diagonal entries are zero. PSD requires the whole
            // remaining block to vanish; a surviving off-diagonal entry gives
            // an indefinite 2x2 block and hence a witness.
            for (std::size_t i = 0; i < n; ++i) {
                if (eliminated[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (eliminated[j] || j == i) continue;
                    if (w.at(i, j) != 0) {
                        std::vector<Rational> x(n, Rational(0));
                        Rational sign = w.at(i, j) > 0 ? -1 : 1;
                        for (std::size_t k = 0; k < n; ++k)
                            x[k] = coeff[i][k] + sign * coeff[j][k];
                        return verify_witness(std::move(x));
                    }
                }
            }
            break;  // remaining block is exactly zero
        }
        ++rank;
        eliminated[best] = true;
        std::vector<Rational> pivot_row(n);
        for (std::size_t j = 0; j < n; ++j) pivot_row[j] = w.at(best, j);
        for (std::size_t i = 0; i < n; ++i) {
            if (eliminated[i]) continue;
            if (pivot_row[i] == 0) continue;
            Rational f = pivot_row[i] / pivot;
            for (std::size_t j = 0; j < n; ++j) {
                if (eliminated[j]) continue;
                w.at(i, j) -= f * pivot_row[j];
            }
            w.at(i, best) = 0;
            w.at(best, i) = 0;
            for (std::size_t k = 0; k < n; ++k) coeff[i][k] -= f * coeff[best][k];
        }
    }

    PsdCertificate c;
    c.is_psd = true;
    c.rank = rank;
    return c;
}

// Exact rank via Gaussian elimination with partial pivoting.
inline std::size_t exact_rank(const SymMatrix& a) {
    detail::Workspace w(a);
    const std::size_t n = w.n;
    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && w.at(p, col) == 0) ++p;
        if (p == n) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(w.at(p, j), w.at(row, j));
        for (std::size_t i = row + 1; i < n; ++i) {
            if (w.at(i, col) == 0) continue;
            Rational f = w.at(i, col) / w.at(row, col);
            for (std::size_t j = col; j < n; ++j) w.at(i, j) -= f * w.at(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Exact inverse by Gauss-Jordan. Throws SingularMatrix when rank < order.
inline SymMatrix inverse(const SymMatrix& a) {
    const std::size_t n = a.order();
    std::vector<std::vector<Rational>> m(n), inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(n);
        inv[i].assign(n, Rational(0));
        inv[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col] == 0) ++p;
        if (p == n) throw SingularMatrix();
        std::swap(m[p], m[col]);
        std::swap(inv[p], inv[col]);
        Rational piv = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= piv;
            inv[col][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    SymMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) r.set(i, j, inv[i][j]);
    return r;
}

inline SymMatrix kron(const SymMatrix& a, const SymMatrix& b) {
    const std::size_t na = a.order(), nb = b.order();
    SymMatrix r(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    r.set(i * nb + k, j * nb + l, a.at(i, j) * b.at(k, l));
        }
    return r;
}

// A * v for column vectors, and the product check A * inverse(A) == I.
inline std::vector<Rational> matvec(const SymMatrix& a, const std::vector<Rational>& v) {
    std::vector<Rational> r(a.order(), Rational(0));
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

inline bool product_is_identity(const SymMatrix& a, const SymMatrix& b) {
    const std::size_t n = a.order();
    if (b.order() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k) s += a.at(i, k) * b.at(k, j);
            if (s != Rational(i == j ? 1 : 0)) return false;
        }
    return true;
}

}  // namespace eqlines
