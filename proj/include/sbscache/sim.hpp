#pragma once

// Monte Carlo hit-rate / MBS-load simulation over random SBS networks.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sbscache/classify.hpp"
#include "sbscache/coloring.hpp"
#include "sbscache/errors.hpp"
#include "sbscache/geometry.hpp"
#include "sbscache/netgraph.hpp"
#include "sbscache/placement.hpp"
#include "sbscache/popularity.hpp"
#include "sbscache/random.hpp"

namespace sbscache {

enum class Policy { baseline, threshold_coloring, matern_coloring };
enum class ThresholdMode { individual, universal };
enum class ColoringMode { exact, greedy };

struct ScenarioConfig {
    double cell_radius = 350.0;
    std::size_t n_sbs = 48;
    double sbs_range = 80.0;
    // When both bounds are positive, each SBS draws its range uniformly in [min, max].
    double sbs_range_min = 0.0;
    double sbs_range_max = 0.0;
    std::size_t n_users = 1000;
    std::size_t file_count = 1000;
    std::size_t memory = 50;
    double alpha = 0.6;
    std::size_t n_rounds = 10;
    std::size_t requests_per_round = 1;  // per user
    Policy policy = Policy::baseline;
    ThresholdMode threshold_mode = ThresholdMode::individual;
    ColoringMode coloring_mode = ColoringMode::exact;
    double r_class = 80.0;
    std::size_t replications = 20;
    Seed master_seed = 1;
    std::size_t exact_solver_limit = kDefaultExactSolverLimit;
    std::size_t max_matern_iterations = 0;  // 0: 10 * n_sbs
    SurvivorCounting survivor_counting = SurvivorCounting::per_set;
    double threshold_scale = 1.0;  // multiplies every conflict threshold; 0 gives an edgeless graph

    bool random_ranges() const noexcept { return sbs_range_min > 0.0 && sbs_range_max > 0.0; }

    void validate() const {
        auto fail = [](const std::string& m) { throw DomainError("config: " + m); };
        if (!(cell_radius > 0.0)) fail("cell_radius must be > 0");
        if (file_count < 1) fail("file_count must be >= 1");
        if (memory > file_count) fail("memory must not exceed file_count");
        if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be finite and >= 0");
        if (random_ranges()) {
            if (sbs_range_min > sbs_range_max) fail("sbs_range_min must not exceed sbs_range_max");
        } else if (!(sbs_range > 0.0)) {
            fail("sbs_range must be > 0");
        }
        if (!(r_class > 0.0)) fail("r_class must be > 0");
        if (!(threshold_scale >= 0.0)) fail("threshold_scale must be >= 0");
        if (policy != Policy::baseline && memory < 1) fail("coloring policies need memory >= 1");
    }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct ReplicationResult {
    double hit_rate = 0.0;
    std::size_t colors_used = 0;
    std::size_t hits = 0;
    std::size_t requests = 0;
};

struct SimResult {
    double hit_rate = 0.0;  // mean across replications
    double std_hit_rate = 0.0;  // sample standard deviation
    double mbs_load = 1.0;
    double mean_colors_used = 0.0;
    std::vector<double> per_replication;
    std::vector<std::size_t> colors_used;
    std::size_t replications = 0;
    Seed master_seed = 0;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// One realized network: geometry, ranges and the placement (plus whichever
/// intermediates the policy produced).
struct Network {
    PointSet sbs;
    CoverageRanges ranges;
    std::optional<SimpleGraph> conflict_graph;
    std::optional<ClassWeights> class_weights;
    std::optional<Coloring> coloring;
    PlacementMap placement;
    std::size_t colors_used = 0;
};

namespace stream {
// Each pipeline stage owns a stream so that policies compared on the same
// replication seed see identical SBSs, users and requests.
inline constexpr std::uint64_t sbs_positions = 0;
inline constexpr std::uint64_t ranges = 1;
inline constexpr std::uint64_t marks = 2;
inline constexpr std::uint64_t users = 3;
inline constexpr std::uint64_t requests = 4;
}  // namespace stream

inline Seed replication_seed(Seed master, std::size_t index) { return derive_seed(master, index); }

inline Network build_network(const ScenarioConfig& cfg, Seed rep_seed) {
    cfg.validate();
    const Catalog catalog(cfg.file_count, cfg.alpha);
    Network net;
    net.sbs = sample_binomial_disk(cfg.n_sbs, cfg.cell_radius, derive_seed(rep_seed, stream::sbs_positions));

    net.ranges.assign(cfg.n_sbs, cfg.sbs_range);
    if (cfg.random_ranges()) {
        Rng rng(derive_seed(rep_seed, stream::ranges));
        for (auto& r : net.ranges) r = cfg.sbs_range_min + (cfg.sbs_range_max - cfg.sbs_range_min) * uniform01(rng);
    }

    switch (cfg.policy) {
    case Policy::baseline:
        net.placement = place_most_popular(cfg.n_sbs, catalog, cfg.memory);
        net.colors_used = cfg.n_sbs > 0 ? 1 : 0;
        return net;

    case Policy::threshold_coloring: {
        const auto weighted = build_sbs_weighted_graph(net.sbs);
        Matrix<double> tr = cfg.threshold_mode == ThresholdMode::individual || cfg.n_sbs == 0
                                ? individual_thresholds(net.ranges)
                                : uniform_thresholds(cfg.n_sbs, universal_threshold(net.ranges));
        for (std::size_t i = 0; i < tr.size(); ++i)
            for (std::size_t j = 0; j < tr.size(); ++j) tr(i, j) *= cfg.threshold_scale;
        net.conflict_graph = threshold_graph(weighted, tr);
        const bool exact = cfg.coloring_mode == ColoringMode::exact && cfg.n_sbs <= cfg.exact_solver_limit;
        net.coloring = exact ? exact_min_coloring(*net.conflict_graph, cfg.exact_solver_limit)
                             : greedy_color_by_degree(*net.conflict_graph);
        break;
    }

    case Policy::matern_coloring: {
        ClassifyOptions opt{cfg.r_class, cfg.max_matern_iterations, cfg.survivor_counting};
        net.class_weights = classify_and_weigh(net.sbs, opt, derive_seed(rep_seed, stream::marks));
        const auto [classes, weights] = class_graph_input(*net.class_weights);
        net.conflict_graph = build_class_graph(classes);
        net.coloring = greedy_color_by_weight(*net.conflict_graph, weights);
        break;
    }
    }
    net.placement = place_by_coloring(*net.coloring, catalog, cfg.memory);
    net.colors_used = static_cast<std::size_t>(net.coloring->k);
    return net;
}

/// Rounds of re-dropped users issuing Zipf requests against a fixed network.
/// A request hits iff its rank is in the user's delivery set.
inline ReplicationResult simulate_requests(const ScenarioConfig& cfg, const Network& net, Seed rep_seed) {
    const Catalog catalog(cfg.file_count, cfg.alpha);
    Rng user_rng(derive_seed(rep_seed, stream::users));
    Rng request_rng(derive_seed(rep_seed, stream::requests));
    ReplicationResult out;
    out.colors_used = net.colors_used;
    for (std::size_t round = 0; round < cfg.n_rounds; ++round) {
        const PointSet users = sample_binomial_disk(cfg.n_users, cfg.cell_radius, user_rng);
        const AccessMap access = build_access_map(users, net.sbs, net.ranges);
        const DeliveryMap delivery = build_delivery_map(net.placement, access);
        for (std::size_t u = 0; u < users.size(); ++u) {
            for (std::size_t k = 0; k < cfg.requests_per_round; ++k) {
                const Rank r = sample_request(catalog, request_rng);
                out.hits += std::binary_search(delivery[u].begin(), delivery[u].end(), r) ? 1 : 0;
                ++out.requests;
            }
        }
    }
    out.hit_rate = out.requests == 0 ? 0.0 : static_cast<double>(out.hits) / static_cast<double>(out.requests);
    return out;
}

inline ReplicationResult run_replication(const ScenarioConfig& cfg, Seed rep_seed) {
    try {
        return simulate_requests(cfg, build_network(cfg, rep_seed), rep_seed);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string(e.what()) + " [replication seed " + std::to_string(rep_seed) + "]",
                               e.zero_weight_indices());
    } catch (const CapacityError& e) {
        throw CapacityError(std::string(e.what()) + " [replication seed " + std::to_string(rep_seed) + "]");
    }
}

/// Independent replications with seeds derived from master_seed by index.
/// `jobs` > 1 runs them on worker threads; results are reduced in index order,
/// so the output does not depend on `jobs`.
inline SimResult run_scenario(const ScenarioConfig& cfg, unsigned jobs = 1) {
    if (cfg.replications < 1) throw DomainError("run_scenario: replications must be >= 1");
    cfg.validate();
    const std::size_t reps = cfg.replications;
    std::vector<ReplicationResult> results(reps);
    std::vector<std::exception_ptr> errors(reps);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < reps; i = next++) {
            try {
                results[i] = run_replication(cfg, replication_seed(cfg.master_seed, i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(reps)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SimResult out;
    out.replications = reps;
    out.master_seed = cfg.master_seed;
    double sum = 0.0, colors = 0.0;
    for (const auto& r : results) {
        out.per_replication.push_back(r.hit_rate);
        out.colors_used.push_back(r.colors_used);
        sum += r.hit_rate;
        colors += static_cast<double>(r.colors_used);
    }
    out.hit_rate = sum / static_cast<double>(reps);
    out.mbs_load = 1.0 - out.hit_rate;
    out.mean_colors_used = colors / static_cast<double>(reps);
    if (reps > 1) {
        double ss = 0.0;
        for (double h : out.per_replication) ss += (h - out.hit_rate) * (h - out.hit_rate);
        out.std_hit_rate = std::sqrt(ss / static_cast<double>(reps - 1));
    }
    return out;
}

/// Relative MBS-load reduction of `policy` against `baseline`.
inline double mbs_load_reduction(const SimResult& policy, const SimResult& baseline) {
    const double base_load = 1.0 - baseline.hit_rate;
    if (base_load <= 0.0) throw DomainError("mbs_load_reduction: baseline already perfect (zero MBS load)");
    return (base_load - (1.0 - policy.hit_rate)) / base_load;
}

// --- sweeps ----------------------------------------------------------------

enum class SweepAxis { n_sbs, alpha };

inline std::string to_string(SweepAxis a) { return a == SweepAxis::n_sbs ? "n_sbs" : "alpha"; }

inline SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "n_sbs") return SweepAxis::n_sbs;
    if (s == "alpha") return SweepAxis::alpha;
    throw DomainError("unknown sweep axis `" + s + "` (expected n_sbs or alpha)");
}

/// A named policy variant applied on top of a base config.
struct PolicySpec {
    std::string name;
    Policy policy = Policy::baseline;
    std::optional<ThresholdMode> threshold_mode;

    ScenarioConfig apply(ScenarioConfig cfg) const {
        cfg.policy = policy;
        if (threshold_mode) cfg.threshold_mode = *threshold_mode;
        return cfg;
    }
};

/// Accepts baseline, threshold_coloring, threshold_individual,
/// threshold_universal and matern_coloring.
inline PolicySpec parse_policy_spec(const std::string& s) {
    if (s == "baseline") return {s, Policy::baseline, std::nullopt};
    if (s == "threshold_coloring") return {s, Policy::threshold_coloring, std::nullopt};
    if (s == "threshold_individual") return {s, Policy::threshold_coloring, ThresholdMode::individual};
    if (s == "threshold_universal") return {s, Policy::threshold_coloring, ThresholdMode::universal};
    if (s == "matern_coloring") return {s, Policy::matern_coloring, std::nullopt};
    throw DomainError("unknown policy `" + s + "`");
}

struct SweepRow {
    SweepAxis axis;
    double axis_value;
    std::string policy;
    SimResult result;
};

inline std::vector<SweepRow> sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<double>& values,
                                   const std::vector<PolicySpec>& policies, unsigned jobs = 1) {
    if (values.empty()) throw DomainError("sweep: empty axis value list");
    if (policies.empty()) throw DomainError("sweep: empty policy list");
    std::vector<SweepRow> rows;
    for (double v : values) {
        ScenarioConfig cfg = base;
        if (axis == SweepAxis::n_sbs) {
            if (v < 0.0 || v != std::floor(v)) throw DomainError("sweep: n_sbs values must be non-negative integers");
            cfg.n_sbs = static_cast<std::size_t>(v);
        } else {
            cfg.alpha = v;
        }
        for (const auto& p : policies) rows.push_back({axis, v, p.name, run_scenario(p.apply(cfg), jobs)});
    }
    return rows;
}

inline std::string format_fixed(double v, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

inline std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline constexpr const char* kSweepCsvHeader =
    "axis_name,axis_value,policy,mean_hit_rate,std_hit_rate,mean_mbs_load,mean_colors_used,replications,master_seed";

inline void write_sweep_row(std::ostream& os, const std::string& axis_name, double axis_value, const std::string& policy,
                            const SimResult& r) {
    os << axis_name << ',' << format_number(axis_value) << ',' << policy << ',' << format_fixed(r.hit_rate) << ','
       << format_fixed(r.std_hit_rate) << ',' << format_fixed(r.mbs_load) << ',' << format_fixed(r.mean_colors_used, 3)
       << ',' << r.replications << ',' << r.master_seed << '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const auto& row : rows) write_sweep_row(os, to_string(row.axis), row.axis_value, row.policy, row.result);
}

}  // namespace sbscache
