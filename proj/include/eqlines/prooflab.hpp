#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqlines/bounds.hpp"
#include "eqlines/code.hpp"
#include "eqlines/graph.hpp"
#include "eqlines/symmatrix.hpp"

namespace eqlines {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularBasis : std::runtime_error {
    SingularBasis() : std::runtime_error("basis Gram submatrix is singular") {}
};
struct NotIndependent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- closed-form inverse of alpha J + (1-alpha) I --------------------------

struct ClosedFormInverse {
    SymMatrix matrix;  // (I - phi J) / (1 - alpha)
    Rational phi;      // alpha / (1 + (n-1) alpha)
};

inline ClosedFormInverse closed_form_inverse(std::size_t n, const Rational& alpha) {
    if (n < 1 || !(alpha > 0 && alpha < 1))
        throw std::invalid_argument("closed_form_inverse needs n >= 1, alpha in (0,1)");
    Rational phi = alpha / (1 + Rational(long(n) - 1) * alpha);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            m.set(i, j, ((i == j ? Rational(1) : Rational(0)) - phi) / (1 - alpha));
    return {std::move(m), phi};
}

// Gram matrix of an independent set: alpha J + (1-alpha) I.
inline SymMatrix independent_set_gram(std::size_t n, const Rational& alpha) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, i == j ? Rational(1) : alpha);
    return m;
}

// ---- projection inner products (purely from Gram data) ---------------------

// Inner product of the projections of points i and j onto the span of the
// basis points: s^T (G_basis)^{-1} s' with s, s' the Gram columns restricted
// to the basis.
inline Rational projection_inner(const Code& code, const std::vector<std::size_t>& basis,
                                 std::size_t i, std::size_t j) {
    if (code.form != Code::Form::gram)
        throw std::invalid_argument("projection_inner needs an exact gram-form code");
    const SymMatrix& g = code.gram;
    SymMatrix gb = g.submatrix(basis);
    SymMatrix gb_inv;
    try {
        gb_inv = inverse(gb);
    } catch (const SingularMatrix&) {
        throw SingularBasis();
    }
    std::vector<Rational> s(basis.size()), sp(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        s[k] = g.at(basis[k], i);
        sp[k] = g.at(basis[k], j);
    }
    std::vector<Rational> ws = matvec(gb_inv, sp);
    Rational out = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) out += s[k] * ws[k];
    return out;
}

// ---- Lemma 4 machinery -----------------------------------------------------

struct Lemma4Quantities {
    Rational t;       // 1/beta + 1
    Rational t_star;  // (1-alpha)(alpha-beta) / (alpha(alpha+beta))
    Rational eps;     // beta^2 / 2
    Rational n0;      // 1 + 8/beta^2
};

inline Lemma4Quantities lemma4_quantities(const Rational& alpha, const Rational& beta) {
    if (!(beta > 0 && alpha < 1)) throw DomainError("need 0 < beta and alpha < 1");
    if (beta > alpha)
        throw DomainError("beta > alpha makes t* negative; outside the lemma's setting");
    Lemma4Quantities q;
    q.t = 1 / beta + 1;
    q.t_star = (1 - alpha) * (alpha - beta) / (alpha * (alpha + beta));
    q.eps = beta * beta / 2;
    q.n0 = 1 + 8 / (beta * beta);
    return q;
}

// R(m,n) = alpha^2 (n-m) + beta^2 m - phi ((n-m) alpha - m beta)^2,
// the lower bound on (1-alpha)<v,v'> after corner minimization.
inline Rational r_poly(const Rational& m, long n, const Rational& alpha, const Rational& beta) {
    if (n < 1) throw std::invalid_argument("r_poly needs n >= 1");
    Rational phi = alpha / (1 + Rational(n - 1) * alpha);
    Rational nm = Rational(n) - m;
    Rational lin = nm * alpha - m * beta;
    return alpha * alpha * nm + beta * beta * m - phi * lin * lin;
}

// Closed form for the boundary value R(1,n) = R(n-t*-1,n).
inline Rational r_poly_boundary(long n, const Rational& alpha, const Rational& beta) {
    return alpha * (1 - alpha) + (alpha + beta) * (alpha + beta) -
           alpha * (1 + beta) * (1 + beta) / (1 + alpha * Rational(n - 1));
}

// Exact sweep: R(m,n) > alpha(1-alpha) + (alpha+beta)^2/2 for every integer
// m with 1 <= m <= n - t* - 1 and m < n - t, over n in [n_lo, n_hi].
inline bool verify_lemma4_bound(const Rational& alpha, const Rational& beta, long n_lo,
                                long n_hi) {
    Lemma4Quantities q = lemma4_quantities(alpha, beta);
    if (Rational(n_lo) < q.n0) throw DomainError("n range must start at or above n0");
    Rational threshold = alpha * (1 - alpha) + (alpha + beta) * (alpha + beta) / 2;
    for (long n = n_lo; n <= n_hi; ++n) {
        for (long m = 1; Rational(m) <= Rational(n) - q.t_star - 1 && Rational(m) < Rational(n) - q.t;
             ++m) {
            if (!(r_poly(Rational(m), n, alpha, beta) > threshold)) return false;
        }
    }
    return true;
}

// Brute-force check that the right side of the optimization display
//   alpha^2 (n-m) + sum beta_i beta_i' - phi (sum s_i)(sum s_i')
// is minimized at the all-beta corner over the grid {beta, beta+h, ..., <=1}.
inline bool verify_corner_minimum(const Rational& alpha, const Rational& beta, long m, long n,
                                  const Rational& h) {
    if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= n");
    if (!(h > 0)) throw std::invalid_argument("grid step must be positive");
    Rational phi = alpha / (1 + Rational(n - 1) * alpha);

    std::vector<Rational> grid;
    for (Rational v = beta; v <= 1; v += h) grid.push_back(v);

    auto objective = [&](const std::vector<Rational>& b, const std::vector<Rational>& bp) {
        Rational sum_b = 0, sum_bp = 0, cross = 0;
        for (long i = 0; i < m; ++i) {
            cross += b[i] * bp[i];
            sum_b += b[i];
            sum_bp += bp[i];
        }
        Rational s_total = Rational(n - m) * alpha - sum_b;
        Rational sp_total = Rational(n - m) * alpha - sum_bp;
        return alpha * alpha * Rational(n - m) + cross - phi * s_total * sp_total;
    };

    std::vector<Rational> corner(std::size_t(m), beta);
    Rational corner_value = objective(corner, corner);

    // Enumerate all grid assignments of (beta_1..beta_m, beta_1'..beta_m').
    std::vector<std::size_t> pick(std::size_t(2 * m), 0);
    while (true) {
        std::vector<Rational> b(static_cast<std::size_t>(m)), bp(static_cast<std::size_t>(m));
        for (long i = 0; i < m; ++i) {
            b[i] = grid[pick[std::size_t(i)]];
            bp[i] = grid[pick[std::size_t(m + i)]];
        }
        if (objective(b, bp) < corner_value) return false;
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == grid.size()) pick[k++] = 0;
        if (k == pick.size()) break;
    }
    return true;
}

// ---- Lemma 1 certificate ---------------------------------------------------

struct NegativeFamilyResult {
    std::size_t count;
    Rational bound;     // 1/gamma + 1
    bool ok;            // count <= bound
    Rational gram_sum;  // ||sum u_i||^2 recomputed from the Gram data
};

inline NegativeFamilyResult check_negative_family(const SymMatrix& gram, const Rational& gamma) {
    if (!(gamma > 0)) throw PreconditionViolated("gamma must be positive");
    std::string bad;
    for (std::size_t i = 0; i < gram.order(); ++i) {
        if (gram.at(i, i) > 1) bad += " diag[" + std::to_string(i) + "]=" + to_string(gram.at(i, i));
        for (std::size_t j = i + 1; j < gram.order(); ++j)
            if (gram.at(i, j) > -gamma)
                bad += " (" + std::to_string(i) + "," + std::to_string(j) +
                       ")=" + to_string(gram.at(i, j));
    }
    if (!bad.empty()) throw PreconditionViolated("entries violate the negative-family shape:" + bad);

    NegativeFamilyResult r;
    r.count = gram.order();
    r.bound = 1 / gamma + 1;
    r.ok = Rational(long(r.count)) <= r.bound;
    r.gram_sum = 0;
    for (std::size_t i = 0; i < gram.order(); ++i)
        for (std::size_t j = 0; j < gram.order(); ++j) r.gram_sum += gram.at(i, j);
    return r;
}

// ---- Lemma 2: independent sets are linearly independent --------------------

inline bool check_independent_rank(const Code& code, const LSet& L,
                                   const std::vector<std::size_t>& indep) {
    Graph g = attachment_graph(code, L);
    for (std::size_t a = 0; a < indep.size(); ++a)
        for (std::size_t b = a + 1; b < indep.size(); ++b)
            if (g.has_edge(indep[a], indep[b]))
                throw NotIndependent("vertices " + std::to_string(indep[a]) + " and " +
                                     std::to_string(indep[b]) + " are adjacent");
    if (code.form != Code::Form::gram)
        throw std::invalid_argument("check_independent_rank needs an exact gram-form code");
    SymMatrix sub = code.gram.submatrix(indep);
    return exact_rank(sub) == indep.size();
}

// ---- Lemma 6 audit ----------------------------------------------------------

struct AuditOverrides {
    std::optional<long> n;
    std::optional<Rational> t;
    std::optional<Rational> eps;
    std::optional<Rational> delta;
};

struct WindowAudit {
    std::size_t index;  // window start position within I's circular order
    // type signature (sorted member indices of T) -> bad vertices of that type
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> bad_types;
};

struct Lemma5Violation {
    std::size_t window;
    std::vector<std::size_t> type;
    std::vector<std::size_t> members;
};

struct GoodVertex {
    std::size_t vertex;
    std::size_t degree_into_I;
};

struct AuditReport {
    bool applicable = false;
    long n = 0;           // window size actually used
    Rational t, eps, delta;
    std::vector<WindowAudit> windows;
    std::size_t bad_total = 0;
    std::vector<GoodVertex> good_vertices;
    std::vector<Lemma5Violation> lemma5_violations;
    bool lemma6_conclusion_holds = false;
};

namespace detail {

// Core of the Lemma 6 audit, parameterized on an explicit graph so the
// peeling rounds can run it on induced subsets.
inline AuditReport run_bad_vertex_audit(const Code& code, const Graph& g,
                                        const std::vector<std::size_t>& I,
                                        const std::vector<std::size_t>& universe, long n,
                                        const Rational& alpha, const Rational& t,
                                        const Rational& eps, const Rational& delta) {
    AuditReport rep;
    rep.n = n;
    rep.t = t;
    rep.eps = eps;
    rep.delta = delta;

    for (std::size_t a = 0; a < I.size(); ++a)
        for (std::size_t b = a + 1; b < I.size(); ++b)
            if (g.has_edge(I[a], I[b]))
                throw NotIndependent("audit set contains adjacent vertices " +
                                     std::to_string(I[a]) + ", " + std::to_string(I[b]));

    const std::size_t N = I.size();
    if (long(N) < n + 1) {
        rep.applicable = false;
        return rep;
    }
    rep.applicable = true;

    std::vector<bool> in_I(g.order(), false);
    for (std::size_t v : I) in_I[v] = true;
    std::vector<std::size_t> outside;
    for (std::size_t v : universe)
        if (!in_I[v]) outside.push_back(v);

    Rational cap = 1 / eps + 1;
    std::vector<bool> is_bad(g.order(), false);

    for (std::size_t i = 0; i < N; ++i) {
        WindowAudit w;
        w.index = i;
        std::vector<std::size_t> window(static_cast<std::size_t>(n));
        for (long k = 0; k < n; ++k) window[std::size_t(k)] = I[(i + std::size_t(k)) % N];
        for (std::size_t p : outside) {
            std::vector<std::size_t> nbrs;
            for (std::size_t s : window)
                if (g.has_edge(p, s)) nbrs.push_back(s);
            if (!nbrs.empty() && Rational(long(nbrs.size())) <= Rational(n) - t) {
                w.bad_types[nbrs].push_back(p);
                is_bad[p] = true;
            }
        }
        // Lemma 5 cap per type: an oversized class is only a genuine
        // violation if all pairwise projected products exceed alpha + eps,
        // checked exactly via the window-basis projection.
        if (code.form == Code::Form::gram) {
            for (const auto& [type, members] : w.bad_types) {
                if (Rational(long(members.size())) <= cap) continue;
                Rational alpha_plus = alpha + eps;
                bool all_exceed = true;
                for (std::size_t a = 0; a < members.size() && all_exceed; ++a)
                    for (std::size_t b = a + 1; b < members.size() && all_exceed; ++b)
                        if (!(projection_inner(code, window, members[a], members[b]) > alpha_plus))
                            all_exceed = false;
                if (all_exceed) rep.lemma5_violations.push_back({i, type, members});
            }
        }
        rep.windows.push_back(std::move(w));
    }

    for (std::size_t p : outside)
        if (is_bad[p]) ++rep.bad_total;

    Rational degree_floor = (1 - delta) * Rational(long(N));
    rep.lemma6_conclusion_holds = true;
    for (std::size_t p : outside) {
        if (is_bad[p]) continue;
        std::size_t deg = 0;
        for (std::size_t v : I)
            if (g.has_edge(p, v)) ++deg;
        rep.good_vertices.push_back({p, deg});
        if (Rational(long(deg)) < degree_floor) rep.lemma6_conclusion_holds = false;
    }
    return rep;
}

}  // namespace detail

// Defaults for the audit constants come from the proof pipeline with beta the
// (negated) interval endpoint and alpha the point of L.
struct AuditDefaults {
    Rational alpha, beta;
    Rational t, eps, delta;
    BigInt n;
};

inline AuditDefaults audit_defaults(const LSet& L) {
    require_attachment_shape(L);
    if (L.points.size() != 1 || L.intervals.size() != 1)
        throw AmbiguousL("audit needs L of the shape [-1,-beta] u {alpha}");
    AuditDefaults d;
    d.alpha = L.points[0];
    d.beta = -L.intervals[0].hi;
    if (!(d.beta > 0)) throw AmbiguousL("audit needs a strictly negative interval endpoint");
    BukhBreakdown b = bukh_constant(d.beta);
    d.t = b.t;
    d.eps = b.eps;
    d.delta = b.delta;
    d.n = b.n;
    return d;
}

inline AuditReport bad_vertex_audit(const Code& code, const LSet& L,
                                    const std::vector<std::size_t>& I,
                                    const AuditOverrides& ov = {}) {
    AuditDefaults defs = audit_defaults(L);
    Graph g = attachment_graph(code, L);
    for (std::size_t a = 0; a < I.size(); ++a)
        for (std::size_t b = a + 1; b < I.size(); ++b)
            if (g.has_edge(I[a], I[b]))
                throw NotIndependent("audit set contains adjacent vertices " +
                                     std::to_string(I[a]) + ", " + std::to_string(I[b]));
    Rational t = ov.t.value_or(defs.t);
    Rational eps = ov.eps.value_or(defs.eps);
    Rational delta = ov.delta.value_or(defs.delta);
    long n;
    if (ov.n) {
        n = *ov.n;
    } else if (defs.n > BigInt(long(I.size()))) {
        // The chained default n exceeds any desk-scale |I|; the audit reports
        // inapplicability rather than truncating the constant.
        AuditReport rep;
        rep.n = long(I.size()) + 1;
        rep.t = t;
        rep.eps = eps;
        rep.delta = delta;
        rep.applicable = false;
        return rep;
    } else {
        n = defs.n.convert_to<long>();
    }
    std::vector<std::size_t> universe(code.size());
    for (std::size_t v = 0; v < code.size(); ++v) universe[v] = v;
    return detail::run_bad_vertex_audit(code, g, I, universe, n, defs.alpha, t, eps, delta);
}

// ---- transversal clique search ---------------------------------------------

// Exhaustive search for a clique with exactly one vertex per group.
inline std::optional<std::vector<std::size_t>> transversal_clique(
    const Graph& g, const std::vector<std::vector<std::size_t>>& groups) {
    std::vector<std::size_t> pick;
    std::optional<std::vector<std::size_t>> found;
    auto rec = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == groups.size()) {
            found = pick;
            return true;
        }
        for (std::size_t v : groups[depth]) {
            bool ok = true;
            for (std::size_t u : pick)
                if (!g.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pick.push_back(v);
            if (self(self, depth + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

// ---- peeling ----------------------------------------------------------------

struct PeelingRound {
    std::size_t U_size;
    std::size_t I_size;
    std::size_t survivor_count;
};

struct PeelingReport {
    std::vector<PeelingRound> rounds;
    std::size_t terminated_at = 0;  // number of completed rounds
    std::vector<std::vector<std::size_t>> independent_sets;
    std::optional<std::vector<std::size_t>> clique_found;
    Rational clique_probability_bound;  // 1 - C(B+1,2) delta, reported alongside
    BigInt B;
};

// Iterated audit: U_0 = all points, I_k a maximum independent set of U_k,
// U_{k+1} the good vertices of round k. After B+1 non-empty rounds, an
// exhaustive transversal search looks for a clique of size B+1 (one vertex
// per I_k), which would contradict the clique cap 1/beta + 1.
inline PeelingReport peeling_audit(const Code& code, const LSet& L,
                                   const AuditOverrides& ov = {}) {
    AuditDefaults defs = audit_defaults(L);
    Graph g = attachment_graph(code, L);
    Rational t = ov.t.value_or(defs.t);
    Rational eps = ov.eps.value_or(defs.eps);
    Rational delta = ov.delta.value_or(defs.delta);

    PeelingReport rep;
    rep.B = ceil_rational(1 / defs.beta + 1);
    long b_rounds = rep.B.convert_to<long>();
    rep.clique_probability_bound =
        1 - Rational(BigInt(b_rounds + 1) * b_rounds / 2) * delta;

    std::vector<std::size_t> U(code.size());
    for (std::size_t v = 0; v < code.size(); ++v) U[v] = v;

    for (long round = 0; round <= b_rounds; ++round) {
        if (U.empty()) break;
        Graph sub = g.induced(U);
        SetResult I_local = max_independent_set(sub);
        std::vector<std::size_t> I(I_local.vertices.size());
        for (std::size_t k = 0; k < I.size(); ++k) I[k] = U[I_local.vertices[k]];
        if (I.empty()) break;

        long n;
        if (ov.n) {
            n = *ov.n;
        } else if (defs.n > BigInt(long(I.size()))) {
            rep.rounds.push_back({U.size(), I.size(), 0});
            rep.independent_sets.push_back(I);
            break;  // chained-default constants make the round inapplicable
        } else {
            n = defs.n.convert_to<long>();
        }

        AuditReport audit =
            detail::run_bad_vertex_audit(code, g, I, U, n, defs.alpha, t, eps, delta);
        if (!audit.applicable) {
            rep.rounds.push_back({U.size(), I.size(), 0});
            rep.independent_sets.push_back(I);
            break;
        }
        std::vector<std::size_t> survivors;
        for (const GoodVertex& gv : audit.good_vertices) survivors.push_back(gv.vertex);
        std::sort(survivors.begin(), survivors.end());
        rep.rounds.push_back({U.size(), I.size(), survivors.size()});
        rep.independent_sets.push_back(I);
        U = std::move(survivors);
    }
    rep.terminated_at = rep.rounds.size();

    if (long(rep.independent_sets.size()) == b_rounds + 1) {
        bool all_nonempty = true;
        for (const auto& I : rep.independent_sets)
            if (I.empty()) all_nonempty = false;
        if (all_nonempty) rep.clique_found = transversal_clique(g, rep.independent_sets);
    }
    return rep;
}

}  // namespace eqlines
