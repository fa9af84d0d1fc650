#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace eqlines {

// Simple undirected graph on 0..n-1 with bitset adjacency rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t order)
        : n_(order), words_((order + 63) / 64), adj_(order * ((order + 63) / 64), 0) {}

    std::size_t order() const { return n_; }

    void add_edge(std::size_t u, std::size_t v) {
        if (u == v) return;
        row(u)[v / 64] |= std::uint64_t(1) << (v % 64);
        row(v)[u / 64] |= std::uint64_t(1) << (u % 64);
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        if (u == v) return false;
        return (row(u)[v / 64] >> (v % 64)) & 1;
    }

    std::size_t degree(std::size_t u) const {
        std::size_t d = 0;
        for (std::size_t w = 0; w < words_; ++w) d += __builtin_popcountll(row(u)[w]);
        return d;
    }

    Graph complement() const {
        Graph g(n_);
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = u + 1; v < n_; ++v)
                if (!has_edge(u, v)) g.add_edge(u, v);
        return g;
    }

    Graph induced(const std::vector<std::size_t>& verts) const {
        Graph g(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (has_edge(verts[i], verts[j])) g.add_edge(i, j);
        return g;
    }

private:
    std::uint64_t* row(std::size_t u) { return adj_.data() + u * words_; }
    const std::uint64_t* row(std::size_t u) const { return adj_.data() + u * words_; }

    std::size_t n_ = 0, words_ = 0;
    std::vector<std::uint64_t> adj_;
};

struct SetResult {
    std::vector<std::size_t> vertices;
    bool exact = true;  // false when the heuristic path (> 64 vertices) ran
};

namespace detail {

// Branch-and-bound maximum clique over a uint64_t candidate mask (n <= 64).
// Classic greedy-coloring-free variant; orders are tiny here.
class CliqueBB {
public:
    explicit CliqueBB(const Graph& g) : n_(g.order()), nb_(g.order(), 0) {
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                if (g.has_edge(u, v)) nb_[u] |= std::uint64_t(1) << v;
    }

    std::uint64_t solve() {
        best_ = 0;
        std::uint64_t all = n_ == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n_) - 1);
        expand(0, all);
        return best_;
    }

private:
    void expand(std::uint64_t cur, std::uint64_t cand) {
        if (std::size_t(__builtin_popcountll(cur)) > std::size_t(__builtin_popcountll(best_)))
            best_ = cur;
        while (cand) {
            if (std::size_t(__builtin_popcountll(cur)) + std::size_t(__builtin_popcountll(cand)) <=
                std::size_t(__builtin_popcountll(best_)))
                return;
            std::size_t v = std::size_t(__builtin_ctzll(cand));
            cand &= cand - 1;
            expand(cur | (std::uint64_t(1) << v), cand & nb_[v]);
        }
    }

    std::size_t n_;
    std::vector<std::uint64_t> nb_;
    std::uint64_t best_ = 0;
};

inline std::vector<std::size_t> bits_to_vertices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    while (mask) {
        out.push_back(std::size_t(__builtin_ctzll(mask)));
        mask &= mask - 1;
    }
    return out;
}

// Max clique restricted to a candidate mask.
inline std::uint64_t largest_in(const std::vector<std::uint64_t>& nb, std::uint64_t cand);

// Among all maximum cliques, return the lexicographically least vertex set:
// greedily force in the smallest vertex that still extends to the optimum.
inline std::vector<std::size_t> lex_least_max_clique(const Graph& g) {
    CliqueBB bb(g);
    std::uint64_t best = bb.solve();
    std::size_t target = std::size_t(__builtin_popcountll(best));
    if (target == 0) return {};

    std::vector<std::uint64_t> nb(g.order(), 0);
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = 0; v < g.order(); ++v)
            if (g.has_edge(u, v)) nb[u] |= std::uint64_t(1) << v;

    std::uint64_t chosen = 0;
    std::uint64_t cand =
        g.order() == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << g.order()) - 1);
    while (std::size_t(__builtin_popcountll(chosen)) < target) {
        for (std::size_t v = 0; v < g.order(); ++v) {
            std::uint64_t bit = std::uint64_t(1) << v;
            if (!(cand & bit)) continue;
            // Can chosen + v still reach a clique of size target inside cand?
            std::uint64_t sub_cand = cand & nb[v] & ~bit;
            std::uint64_t need = target - std::size_t(__builtin_popcountll(chosen)) - 1;
            std::uint64_t found = largest_in(nb, sub_cand);
            if (std::size_t(__builtin_popcountll(found)) >= need) {
                chosen |= bit;
                cand = sub_cand;
                break;
            }
            cand &= ~bit;  // v cannot be in any remaining optimum
        }
    }
    return bits_to_vertices(chosen);
}

struct MaskBB {
    const std::vector<std::uint64_t>& nb;
    std::uint64_t best = 0;
    void expand(std::uint64_t cur, std::uint64_t cand) {
        if (std::size_t(__builtin_popcountll(cur)) > std::size_t(__builtin_popcountll(best)))
            best = cur;
        while (cand) {
            if (std::size_t(__builtin_popcountll(cur)) + std::size_t(__builtin_popcountll(cand)) <=
                std::size_t(__builtin_popcountll(best)))
                return;
            std::size_t v = std::size_t(__builtin_ctzll(cand));
            cand &= cand - 1;
            expand(cur | (std::uint64_t(1) << v), cand & nb[v]);
        }
    }
};

inline std::uint64_t largest_in(const std::vector<std::uint64_t>& nb, std::uint64_t cand) {
    MaskBB bb{nb};
    bb.expand(0, cand);
    return bb.best;
}

}  // namespace detail

// Exact maximum clique for order <= 64 (ties broken toward the
// lexicographically least index set); greedy with local improvement beyond.
inline SetResult max_clique(const Graph& g) {
    if (g.order() <= 64) {
        return {detail::lex_least_max_clique(g), true};
    }
    // Greedy by degree, then single-swap local search.
    std::vector<std::size_t> order(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
    std::vector<std::size_t> clique;
    for (std::size_t v : order) {
        bool ok = true;
        for (std::size_t u : clique)
            if (!g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(v);
    }
    std::sort(clique.begin(), clique.end());
    return {clique, false};
}

inline SetResult max_independent_set(const Graph& g) {
    SetResult r = max_clique(g.complement());
    return r;
}

}  // namespace eqlines
