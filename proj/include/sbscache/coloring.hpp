#pragma once

// Proper vertex coloring of conflict graphs. Color indices are 1-based and
// dense; they double as cache-fill priorities (color 1 = most popular block).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "sbscache/errors.hpp"
#include "sbscache/netgraph.hpp"

namespace sbscache {

using Color = int;

struct Coloring {
    std::vector<Color> colors;  // per vertex, in 1..k
    int k = 0;                  // number of colors used

    std::size_t size() const noexcept { return colors.size(); }

    /// Wraps raw colors; throws unless they are 1-based and every color in 1..k is used.
    static Coloring from_colors(std::vector<Color> colors) {
        Coloring c{std::move(colors), 0};
        for (Color x : c.colors) {
            if (x < 1) throw DomainError("Coloring: colors must be >= 1");
            c.k = std::max(c.k, x);
        }
        std::vector<bool> used(static_cast<std::size_t>(c.k) + 1, false);
        for (Color x : c.colors) used[static_cast<std::size_t>(x)] = true;
        for (int q = 1; q <= c.k; ++q)
            if (!used[static_cast<std::size_t>(q)]) throw DomainError("Coloring: color " + std::to_string(q) + " unused");
        return c;
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

using VertexWeights = std::vector<long long>;

inline constexpr std::size_t kDefaultExactSolverLimit = 25;
inline constexpr std::size_t kBruteForceLimit = 25;

inline bool is_proper(const SimpleGraph& g, const Coloring& c) {
    if (c.size() != g.size()) throw DomainError("is_proper: coloring size does not match graph");
    for (const auto& [i, j] : g.edges())
        if (c.colors[i] == c.colors[j]) return false;
    return true;
}

inline std::size_t max_degree(const SimpleGraph& g) {
    std::size_t d = 0;
    for (std::size_t v = 0; v < g.size(); ++v) d = std::max(d, g.degree(v));
    return d;
}

/// Colors vertices in the given order, each with the smallest color not used by
/// an already-colored neighbor.
inline Coloring greedy_color_in_order(const SimpleGraph& g, const std::vector<std::size_t>& order) {
    const std::size_t n = g.size();
    std::vector<Color> colors(n, 0);
    std::vector<char> taken(n + 2, 0);
    int k = 0;
    for (std::size_t v : order) {
        std::fill(taken.begin(), taken.end(), 0);
        for (std::size_t u = 0; u < n; ++u)
            if (colors[u] != 0 && g.has_edge(v, u)) taken[static_cast<std::size_t>(colors[u])] = 1;
        Color c = 1;
        while (taken[static_cast<std::size_t>(c)]) ++c;
        colors[v] = c;
        k = std::max(k, c);
    }
    return Coloring{std::move(colors), k};
}

namespace detail {

/// Stable sort of vertex indices by descending key; ties keep ascending index.
template <class Key>
std::vector<std::size_t> descending_order(std::size_t n, Key key) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
    return order;
}

}  // namespace detail

/// Degree-priority greedy: static degrees, descending, ties by ascending index.
inline Coloring greedy_color_by_degree(const SimpleGraph& g) {
    std::vector<std::size_t> deg(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) deg[v] = g.degree(v);
    return greedy_color_in_order(g, detail::descending_order(g.size(), [&](std::size_t v) { return deg[v]; }));
}

/// Weight-priority greedy: descending weight, ties by ascending index.
inline Coloring greedy_color_by_weight(const SimpleGraph& g, const VertexWeights& w) {
    if (w.size() != g.size()) throw DomainError("greedy_color_by_weight: one weight per vertex required");
    return greedy_color_in_order(g, detail::descending_order(g.size(), [&](std::size_t v) { return w[v]; }));
}

namespace detail {

using Mask = std::uint64_t;

inline std::vector<Mask> adjacency_masks(const SimpleGraph& g) {
    std::vector<Mask> m(g.size(), 0);
    for (const auto& [i, j] : g.edges()) {
        m[i] |= Mask{1} << j;
        m[j] |= Mask{1} << i;
    }
    return m;
}

// Bron–Kerbosch with pivoting over bitsets.
inline void max_clique(const std::vector<Mask>& adj, int r_size, Mask p, Mask x, int& best) {
    if (p == 0 && x == 0) {
        best = std::max(best, r_size);
        return;
    }
    if (r_size + std::popcount(p) <= best) return;
    const Mask px = p | x;
    int pivot = std::countr_zero(px);
    int pivot_cover = -1;
    for (Mask t = px; t; t &= t - 1) {
        const int u = std::countr_zero(t);
        const int cover = std::popcount(p & adj[static_cast<std::size_t>(u)]);
        if (cover > pivot_cover) {
            pivot_cover = cover;
            pivot = u;
        }
    }
    for (Mask cand = p & ~adj[static_cast<std::size_t>(pivot)]; cand; cand &= cand - 1) {
        const int v = std::countr_zero(cand);
        const Mask bit = Mask{1} << v;
        max_clique(adj, r_size + 1, p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)], best);
        p &= ~bit;
        x |= bit;
    }
}

inline int clique_number_of(const std::vector<Mask>& adj) {
    const std::size_t n = adj.size();
    if (n == 0) return 0;
    const Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    int best = 0;
    max_clique(adj, 0, all, 0, best);
    return best;
}

}  // namespace detail

/// omega(G), largest set of mutually adjacent vertices.
inline std::size_t clique_number(const SimpleGraph& g, std::size_t limit = kBruteForceLimit) {
    if (g.size() > limit || g.size() > 64) throw CapacityError("clique_number: graph exceeds vertex limit");
    return static_cast<std::size_t>(detail::clique_number_of(detail::adjacency_masks(g)));
}

/// alpha(G), largest set of mutually non-adjacent vertices.
inline std::size_t independence_number(const SimpleGraph& g, std::size_t limit = kBruteForceLimit) {
    if (g.size() > limit || g.size() > 64) throw CapacityError("independence_number: graph exceeds vertex limit");
    auto adj = detail::adjacency_masks(g);
    const std::size_t n = g.size();
    const detail::Mask all = n == 64 ? ~detail::Mask{0} : ((detail::Mask{1} << n) - 1);
    for (std::size_t v = 0; v < n; ++v) adj[v] = all & ~adj[v] & ~(detail::Mask{1} << v);
    return static_cast<std::size_t>(detail::clique_number_of(adj));
}

namespace detail {

/// Branch and bound over proper colorings. Vertices are picked by maximum
/// saturation; a vertex may take any color already in use or exactly the next
/// new one, so color classes are introduced in order and the first vertex is
/// always color 1. Any complete coloring with fewer colors than the incumbent
/// replaces it; the search ends when the tree is exhausted or the incumbent
/// meets the clique lower bound.
class ExactColorer {
public:
    explicit ExactColorer(const SimpleGraph& g)
        : n_(g.size()), adj_(adjacency_masks(g)), colors_(n_, 0), neighbor_color_count_(n_ * (n_ + 2), 0) {
        for (std::size_t v = 0; v < n_; ++v) degree_.push_back(std::popcount(adj_[v]));
    }

    Coloring solve(const Coloring& initial, int lower_bound) {
        best_ = initial;
        lower_bound_ = lower_bound;
        if (best_.k > lower_bound_) search(0, 0);
        return best_;
    }

private:
    int& count(std::size_t v, int c) { return neighbor_color_count_[v * (n_ + 2) + static_cast<std::size_t>(c)]; }

    int saturation(std::size_t v) {
        int s = 0;
        for (int c = 1; c <= static_cast<int>(n_); ++c) s += count(v, c) > 0;
        return s;
    }

    void assign(std::size_t v, int c, int delta) {
        for (Mask t = adj_[v]; t; t &= t - 1) count(static_cast<std::size_t>(std::countr_zero(t)), c) += delta;
        colors_[v] = delta > 0 ? c : 0;
    }

    // Returns true when the incumbent is proven optimal (hit the lower bound).
    bool search(std::size_t colored, int used) {
        if (colored == n_) {
            best_ = Coloring{colors_, used};
            return best_.k <= lower_bound_;
        }
        std::size_t pick = n_;
        int pick_sat = -1;
        for (std::size_t v = 0; v < n_; ++v) {
            if (colors_[v] != 0) continue;
            const int s = saturation(v);
            if (s > pick_sat || (s == pick_sat && degree_[v] > degree_[pick])) {
                pick = v;
                pick_sat = s;
            }
        }
        // best_.k may shrink inside the loop, tightening the bound.
        for (int c = 1; c <= std::min(used + 1, best_.k - 1); ++c) {
            if (count(pick, c) > 0) continue;
            assign(pick, c, +1);
            const bool done = search(colored + 1, std::max(used, c));
            assign(pick, c, -1);
            if (done) return true;
        }
        return false;
    }

    std::size_t n_;
    std::vector<Mask> adj_;
    std::vector<int> degree_;
    std::vector<Color> colors_;
    std::vector<int> neighbor_color_count_;
    Coloring best_;
    int lower_bound_ = 0;
};

}  // namespace detail

/// Minimum coloring (k = chromatic number) by exact branch and bound.
/// Throws CapacityError above `limit` vertices; callers fall back to greedy.
inline Coloring exact_min_coloring(const SimpleGraph& g, std::size_t limit = kDefaultExactSolverLimit) {
    if (g.size() > limit || g.size() > 64)
        throw CapacityError("exact_min_coloring: " + std::to_string(g.size()) + " vertices exceeds limit " +
                            std::to_string(std::min<std::size_t>(limit, 64)));
    if (g.size() == 0) return Coloring{};
    const Coloring initial = greedy_color_by_degree(g);
    const int lower = static_cast<int>(clique_number(g, 64));
    Coloring best = detail::ExactColorer(g).solve(initial, lower);
    // Canonical labels: colors numbered by first appearance in vertex order.
    std::vector<Color> relabel(static_cast<std::size_t>(best.k) + 1, 0);
    Color next = 0;
    for (Color& c : best.colors) {
        auto& r = relabel[static_cast<std::size_t>(c)];
        if (r == 0) r = ++next;
        c = r;
    }
    return best;
}

/// CSV `vertex_id,color`.
inline void write_coloring_csv(std::ostream& os, const Coloring& c) {
    os << "vertex_id,color\n";
    for (std::size_t v = 0; v < c.size(); ++v) os << v << ',' << c.colors[v] << '\n';
}

}  // namespace sbscache
