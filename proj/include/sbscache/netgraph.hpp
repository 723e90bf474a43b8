#pragma once

// The four network graphs: weighted/conflict SBS graphs, access, placement and
// delivery maps, all in adjacency (or adjacency-list) form over SBS indices.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sbscache/errors.hpp"
#include "sbscache/geometry.hpp"
#include "sbscache/matrix.hpp"
#include "sbscache/popularity.hpp"

namespace sbscache {

/// Complete SBS graph; edge weights are pairwise distances in meters.
struct WeightedGraph {
    Matrix<double> w;

    std::size_t size() const noexcept { return w.size(); }
};

/// Undirected, irreflexive graph stored as a boolean adjacency matrix.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n) : adj_(n, 0) {}

    std::size_t size() const noexcept { return adj_.size(); }

    bool has_edge(std::size_t i, std::size_t j) const { return adj_(i, j) != 0; }

    void add_edge(std::size_t i, std::size_t j) {
        if (i >= size() || j >= size()) throw DomainError("SimpleGraph::add_edge: vertex out of range");
        if (i == j) throw DomainError("SimpleGraph::add_edge: self-loops are not allowed");
        adj_(i, j) = 1;
        adj_(j, i) = 1;
    }

    std::size_t degree(std::size_t v) const {
        std::size_t d = 0;
        for (std::size_t u = 0; u < size(); ++u) d += adj_(v, u);
        return d;
    }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < size(); ++u)
            if (adj_(v, u)) out.push_back(u);
        return out;
    }

    /// Edges (i, j) with i < j in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (adj_(i, j)) out.emplace_back(i, j);
        return out;
    }

    std::size_t edge_count() const { return edges().size(); }

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    Matrix<unsigned char> adj_;
};

using CoverageRanges = std::vector<double>;  // R_i per SBS, meters

/// Per user, the SBS indices whose coverage disk contains the user (sorted).
using AccessMap = std::vector<std::vector<std::size_t>>;

/// Per SBS, the cached file ranks (sorted, distinct, at most memory_capacity).
struct PlacementMap {
    std::vector<std::vector<Rank>> cached;
    std::size_t memory_capacity = 0;

    std::size_t size() const noexcept { return cached.size(); }
    friend bool operator==(const PlacementMap&, const PlacementMap&) = default;
};

/// Per user, the file ranks reachable through some accessible cache (sorted).
using DeliveryMap = std::vector<std::vector<Rank>>;

inline WeightedGraph build_sbs_weighted_graph(const PointSet& sbs) { return WeightedGraph{distance_matrix(sbs)}; }

/// Tr(i,j) = min(R_i, R_j).
inline Matrix<double> individual_thresholds(const CoverageRanges& ranges) {
    const std::size_t n = ranges.size();
    Matrix<double> tr(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tr(i, j) = std::min(ranges[i], ranges[j]);
    return tr;
}

/// Smallest individual threshold over all pairs, i.e. min_i R_i.
inline double universal_threshold(const CoverageRanges& ranges) {
    if (ranges.empty()) throw DomainError("universal_threshold: network has no SBS");
    return *std::min_element(ranges.begin(), ranges.end());
}

inline Matrix<double> uniform_thresholds(std::size_t n, double value) { return Matrix<double>(n, value); }

/// Conflict graph G': edge (i,j) iff w(i,j) <= Tr(i,j). Nearby SBSs conflict;
/// a tie at exactly the threshold counts as a conflict.
inline SimpleGraph threshold_graph(const WeightedGraph& g, const Matrix<double>& thresholds) {
    const std::size_t n = g.size();
    if (thresholds.size() != n) throw DomainError("threshold_graph: threshold matrix size mismatch");
    if (!thresholds.is_symmetric()) throw DomainError("threshold_graph: thresholds must be symmetric");
    SimpleGraph out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (thresholds(i, j) < 0.0) throw DomainError("threshold_graph: negative threshold");
            if (g.w(i, j) <= thresholds(i, j)) out.add_edge(i, j);
        }
    }
    return out;
}

/// Class graph: edge (i,j), i != j, iff j is in class D_i.
inline SimpleGraph build_class_graph(const std::vector<std::vector<std::size_t>>& classes) {
    const std::size_t n = classes.size();
    Matrix<unsigned char> member(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : classes[i]) {
            if (j >= n) throw DomainError("build_class_graph: class member out of range");
            member(i, j) = 1;
        }
    }
    SimpleGraph out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (member(i, j) != member(j, i))
                throw DomainError("build_class_graph: asymmetric classes at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            if (member(i, j)) out.add_edge(i, j);
        }
    }
    return out;
}

/// User u reaches SBS j iff d(u, S_j) <= R_j.
inline AccessMap build_access_map(const PointSet& users, const PointSet& sbs, const CoverageRanges& ranges) {
    if (ranges.size() != sbs.size()) throw DomainError("build_access_map: one range per SBS required");
    AccessMap access(users.size());
    for (std::size_t u = 0; u < users.size(); ++u)
        for (std::size_t j = 0; j < sbs.size(); ++j)
            if (distance(users[u], sbs[j]) <= ranges[j]) access[u].push_back(j);
    return access;
}

/// Union of the placements over each user's accessible SBSs.
inline DeliveryMap build_delivery_map(const PlacementMap& placement, const AccessMap& access) {
    DeliveryMap out(access.size());
    for (std::size_t u = 0; u < access.size(); ++u) {
        auto& files = out[u];
        for (std::size_t j : access[u]) {
            if (j >= placement.size()) throw DomainError("build_delivery_map: SBS index beyond placement map");
            files.insert(files.end(), placement.cached[j].begin(), placement.cached[j].end());
        }
        std::sort(files.begin(), files.end());
        files.erase(std::unique(files.begin(), files.end()), files.end());
    }
    return out;
}

// --- serialization ---------------------------------------------------------

/// One `i j` line per edge (0-based, i < j).
inline void write_edge_list(std::ostream& os, const SimpleGraph& g) {
    for (const auto& [i, j] : g.edges()) os << i << ' ' << j << '\n';
}

inline SimpleGraph read_edge_list(std::istream& is, std::size_t n) {
    SimpleGraph g(n);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t i = 0, j = 0;
        std::string rest;
        if (!(ls >> i >> j) || (ls >> rest)) throw ParseError("edge list line " + std::to_string(lineno) + ": expected `i j`");
        g.add_edge(i, j);
    }
    return g;
}

/// CSV `sbs_id,file_rank`, one row per cached file.
inline void write_placement_csv(std::ostream& os, const PlacementMap& p) {
    os << "sbs_id,file_rank\n";
    for (std::size_t s = 0; s < p.size(); ++s)
        for (Rank r : p.cached[s]) os << s << ',' << r << '\n';
}

inline PlacementMap read_placement_csv(std::istream& is, std::size_t n_sbs, std::size_t memory_capacity) {
    PlacementMap p{std::vector<std::vector<Rank>>(n_sbs), memory_capacity};
    std::string line;
    if (!std::getline(is, line) || line != "sbs_id,file_rank") throw ParseError("placement CSV: missing header");
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t s = 0;
        Rank r = 0;
        char comma = 0;
        std::istringstream ls(line);
        if (!(ls >> s >> comma >> r) || comma != ',' || s >= n_sbs)
            throw ParseError("placement CSV line " + std::to_string(lineno) + ": malformed row");
        p.cached[s].push_back(r);
    }
    for (auto& c : p.cached) std::sort(c.begin(), c.end());
    return p;
}

}  // namespace sbscache
