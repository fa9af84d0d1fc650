#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "eqlines/code.hpp"
#include "eqlines/symmatrix.hpp"

namespace eqlines {

struct UnknownName : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FamilyParams {
    long r;       // >= 2
    long t;       // >= 1
    Rational tau; // in (0,1); tau = 1/2 is the equiangular case
};

// Regular simplex: n+1 unit vectors in R^n, all pairwise inner products -1/n.
inline Code simplex(long n) {
    if (n < 1) throw std::invalid_argument("simplex needs n >= 1");
    std::size_t m = std::size_t(n) + 1;
    SymMatrix g(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) g.set(i, j, i == j ? Rational(1) : Rational(-1, n));
    return Code::from_gram(std::move(g), "simplex(" + std::to_string(n) + ")");
}

// Lower-bound family: with M = (r-1) I_rt - (J_r - I_r) (x) I_t, the matrix
// (M + tau J_rt) / (r - 1 + tau) is the Gram matrix of an rt-point code in
// dimension (r-1)t + 1 whose off-diagonal products are -(1-tau)/(r-1+tau)
// and tau/(r-1+tau). Point i = b*t + k lives in block b; the negative pairs
// are (b,k)-(b',k) for b != b'.
inline Code ls_family(const FamilyParams& p) {
    if (p.r < 2 || p.t < 1) throw std::invalid_argument("ls_family needs r >= 2, t >= 1");
    if (!(p.tau > 0 && p.tau < 1)) throw std::invalid_argument("ls_family needs tau in (0,1)");
    SymMatrix inner = kron(SymMatrix::ones(std::size_t(p.r)) - SymMatrix::identity(std::size_t(p.r)),
                           SymMatrix::identity(std::size_t(p.t)));
    std::size_t m = std::size_t(p.r) * std::size_t(p.t);
    Rational denom = Rational(p.r - 1) + p.tau;
    SymMatrix g(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Rational base = (i == j ? Rational(p.r - 1) : Rational(0)) - inner.at(i, j);
            g.set(i, j, (base + p.tau) / denom);
        }
    return Code::from_gram(std::move(g), "ls(r=" + std::to_string(p.r) +
                                             ",t=" + std::to_string(p.t) +
                                             ",tau=" + to_string(p.tau) + ")");
}

// The inner PSD matrix M itself (nullity t), exposed for rank checks.
inline SymMatrix ls_inner_matrix(const FamilyParams& p) {
    SymMatrix inner = kron(SymMatrix::ones(std::size_t(p.r)) - SymMatrix::identity(std::size_t(p.r)),
                           SymMatrix::identity(std::size_t(p.t)));
    std::size_t m = std::size_t(p.r) * std::size_t(p.t);
    SymMatrix out(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            out.set(i, j, (i == j ? Rational(p.r - 1) : Rational(0)) - inner.at(i, j));
    return out;
}

namespace detail {

inline Code e7_28() {
    // 28 vectors: two coordinates 3 and six coordinates -1 among 8 slots,
    // scaled by 1/sqrt(24). Pairwise products are rational: 8/24 = 1/3 when
    // the 3-slots share one position, -8/24 = -1/3 when disjoint.
    std::array<std::pair<int, int>, 28> slots;
    std::size_t idx = 0;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) slots[idx++] = {a, b};
    SymMatrix g(28);
    for (std::size_t i = 0; i < 28; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (i == j) {
                g.set(i, j, 1);
                continue;
            }
            int common = int(slots[i].first == slots[j].first) +
                         int(slots[i].first == slots[j].second) +
                         int(slots[i].second == slots[j].first) +
                         int(slots[i].second == slots[j].second);
            g.set(i, j, common == 1 ? Rational(1, 3) : Rational(-1, 3));
        }
    return Code::from_gram(std::move(g), "e7-28");
}

inline Code petersen_10() {
    // Gram = I + (1/3) S with S = J - I - 2A the Seidel matrix of the
    // Petersen graph (Kneser graph K(5,2): vertices are 2-subsets of
    // {0..4}, adjacent iff disjoint).
    std::array<std::pair<int, int>, 10> verts;
    std::size_t idx = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) verts[idx++] = {a, b};
    SymMatrix g(10);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (i == j) {
                g.set(i, j, 1);
                continue;
            }
            bool disjoint = verts[i].first != verts[j].first &&
                            verts[i].first != verts[j].second &&
                            verts[i].second != verts[j].first &&
                            verts[i].second != verts[j].second;
            g.set(i, j, disjoint ? Rational(-1, 3) : Rational(1, 3));
        }
    return Code::from_gram(std::move(g), "petersen-10");
}

inline Code icosahedron_6() {
    // Classical icosahedral axes (0, +-1, phi) up to sign, normalized;
    // pairwise products +-1/sqrt(5).
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Eigen::MatrixXd v(3, 6);
    v.col(0) << 0, 1, phi;
    v.col(1) << 0, -1, phi;
    v.col(2) << 1, phi, 0;
    v.col(3) << -1, phi, 0;
    v.col(4) << phi, 0, 1;
    v.col(5) << phi, 0, -1;
    for (int j = 0; j < 6; ++j) v.col(j).normalize();
    return Code::from_vectors(std::move(v), 1e-9, "icosahedron-6");
}

}  // namespace detail

// Classical lower-bound witnesses, embedded as data.
inline Code gallery(const std::string& name) {
    if (name == "e7-28") return detail::e7_28();
    if (name == "petersen-10") return detail::petersen_10();
    if (name == "icosahedron-6") return detail::icosahedron_6();
    throw UnknownName("unknown gallery code: " + name);
}

}  // namespace eqlines
