#pragma once

// Proximity classes and integer weights for SBSs via repeated Matérn
// type I / type II selection.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sbscache/coloring.hpp"
#include "sbscache/errors.hpp"
#include "sbscache/geometry.hpp"
#include "sbscache/netgraph.hpp"
#include "sbscache/random.hpp"

namespace sbscache {

/// How an SBS present in both survivor sets is counted in one iteration.
enum class SurvivorCounting {
    per_set,  // one increment pass per survivor set it appears in (up to two)
    once,     // a single increment pass for membership in the union
};

struct ClassWeights {
    std::vector<std::vector<std::size_t>> classes;  // D_i, sorted, always contains i
    VertexWeights weights;                          // W_i
    std::size_t iterations_used = 0;
};

struct ClassifyOptions {
    double r_class = 80.0;           // meters
    std::size_t max_iterations = 0;  // 0 selects 10 * |S|
    SurvivorCounting counting = SurvivorCounting::per_set;
};

/// D_i = { j : d(S_i, S_j) <= r_class }.
inline std::vector<std::vector<std::size_t>> proximity_classes(const PointSet& sbs, double r_class) {
    const std::size_t n = sbs.size();
    std::vector<std::vector<std::size_t>> classes(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (distance(sbs[i], sbs[j]) <= r_class) classes[i].push_back(j);
    return classes;
}

/// Classification with an injected mark source: `next_marks(n)` must return n
/// pairwise-distinct marks in [0,1) and is called once per iteration.
template <class MarkSource>
ClassWeights classify_and_weigh_with(const PointSet& sbs, const ClassifyOptions& opt, MarkSource&& next_marks) {
    if (!(opt.r_class > 0.0)) throw DomainError("classify_and_weigh: r_class must be > 0");
    const std::size_t n = sbs.size();
    const std::size_t max_iter = opt.max_iterations == 0 ? 10 * std::max<std::size_t>(n, 1) : opt.max_iterations;

    ClassWeights out;
    out.classes = proximity_classes(sbs, opt.r_class);
    out.weights.assign(n, 0);
    if (n == 0) return out;

    const double hard = 2.0 * opt.r_class;
    const IndexSet type_i = matern_type_i(sbs, hard);  // geometry only, fixed across iterations

    auto any_zero = [&] { return std::find(out.weights.begin(), out.weights.end(), 0) != out.weights.end(); };
    auto bump_class_of = [&](std::size_t i) {
        for (std::size_t j : out.classes[i]) ++out.weights[j];
    };

    while (any_zero()) {
        if (out.iterations_used == max_iter) {
            std::vector<std::size_t> zero;
            for (std::size_t i = 0; i < n; ++i)
                if (out.weights[i] == 0) zero.push_back(i);
            std::string list;
            for (std::size_t z : zero) list += (list.empty() ? "" : ",") + std::to_string(z);
            throw ConvergenceError("classify_and_weigh: " + std::to_string(max_iter) +
                                       " iterations exhausted; zero-weight SBSs: " + list,
                                   std::move(zero));
        }
        ++out.iterations_used;

        MarkedPointSet marked{sbs, next_marks(n)};
        const IndexSet type_ii = matern_type_ii(marked, hard);

        if (opt.counting == SurvivorCounting::per_set) {
            for (std::size_t i : type_i) bump_class_of(i);
            for (std::size_t i : type_ii) bump_class_of(i);
        } else {
            IndexSet both;
            std::set_union(type_i.begin(), type_i.end(), type_ii.begin(), type_ii.end(), std::back_inserter(both));
            for (std::size_t i : both) bump_class_of(i);
        }
    }
    return out;
}

/// Fresh uniform marks are drawn every iteration from a stream seeded by `seed`.
inline ClassWeights classify_and_weigh(const PointSet& sbs, const ClassifyOptions& opt, Seed seed) {
    Rng rng(seed);
    return classify_and_weigh_with(sbs, opt, [&rng](std::size_t n) { return draw_marks(n, rng); });
}

/// Adapter to the class-graph builder and the weight-priority coloring.
inline std::pair<std::vector<std::vector<std::size_t>>, VertexWeights> class_graph_input(const ClassWeights& cw) {
    return {cw.classes, cw.weights};
}

/// CSV `sbs_id,weight,class_members`, members joined by ';'.
inline void write_class_weights_csv(std::ostream& os, const ClassWeights& cw) {
    os << "sbs_id,weight,class_members\n";
    for (std::size_t i = 0; i < cw.classes.size(); ++i) {
        os << i << ',' << cw.weights[i] << ',';
        for (std::size_t k = 0; k < cw.classes[i].size(); ++k) os << (k ? ";" : "") << cw.classes[i][k];
        os << '\n';
    }
}

}  // namespace sbscache
