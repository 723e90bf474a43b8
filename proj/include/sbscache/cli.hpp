#pragma once

// `run`, `sweep` and `inspect` subcommands. Kept in a header so tests can
// drive the exact command surface with captured streams.

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sbscache/classify.hpp"
#include "sbscache/coloring.hpp"
#include "sbscache/config.hpp"
#include "sbscache/errors.hpp"
#include "sbscache/geometry.hpp"
#include "sbscache/netgraph.hpp"
#include "sbscache/sim.hpp"

namespace sbscache::cli {

inline constexpr const char* kRunCsvHeader =
    "policy,mean_hit_rate,std_hit_rate,mean_mbs_load,mean_colors_used,replications,master_seed";

/// Preset base config, axis and policies for one named sweep.
struct Recipe {
    std::map<std::string, std::string> settings;
    SweepAxis axis;
    std::vector<double> values;
    std::vector<std::string> policies;
};

inline Recipe recipe(const std::string& name) {
    const std::vector<std::string> three{"baseline", "threshold_coloring", "matern_coloring"};
    if (name == "fig3") return {{{"alpha", "0.6"}}, SweepAxis::n_sbs, {16, 32, 48, 64}, three};
    if (name == "fig4") return {{{"n_sbs", "48"}}, SweepAxis::alpha, {0.2, 0.4, 0.6, 0.8, 1.0, 1.2}, three};
    if (name == "fig5")
        return {{{"alpha", "0.6"}, {"sbs_range_min", "50"}, {"sbs_range_max", "100"}},
                SweepAxis::n_sbs,
                {16, 32, 48, 64},
                {"baseline", "threshold_individual", "threshold_universal"}};
    throw DomainError("unknown recipe `" + name + "` (expected fig3, fig4 or fig5)");
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        const auto t = sbscache::detail::trim(item);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file `" + path + "`");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Registers one `--key value` override option per config key.
inline void add_overrides(CLI::App* cmd, std::map<std::string, std::string>& store) {
    for (const auto& key : config_keys()) cmd->add_option("--" + key, store[key], "override config key " + key);
}

inline std::vector<std::pair<std::string, std::string>> collect_overrides(CLI::App* cmd,
                                                                          const std::map<std::string, std::string>& store) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& key : config_keys())
        if (cmd->count("--" + key) > 0) out.emplace_back(key, store.at(key));
    return out;
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns the exit
/// status: 0 success, 1 runtime failure, 2 usage or configuration error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coloring-based cache placement for small-cell networks", "sbscache"};
    app.require_subcommand(1);

    unsigned jobs = 1;
    std::string config_path;
    std::map<std::string, std::string> run_over, sweep_over, inspect_over;

    auto* run = app.add_subcommand("run", "Run one scenario and print a single-row CSV");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--jobs", jobs, "worker threads for replications");
    detail::add_overrides(run, run_over);

    std::string axis_name, values_list, policies_list, out_path, recipe_name;
    auto* sw = app.add_subcommand("sweep", "Sweep an axis over several policies and write a CSV table");
    sw->add_option("config", config_path, "config file (optional with --recipe)");
    sw->add_option("--axis", axis_name, "n_sbs or alpha");
    sw->add_option("--values", values_list, "comma-separated axis values");
    sw->add_option("--policies", policies_list, "comma-separated policy names");
    sw->add_option("--out", out_path, "output CSV path (default: stdout)");
    sw->add_option("--recipe", recipe_name, "fig3, fig4 or fig5 preset");
    sw->add_option("--jobs", jobs, "worker threads for replications");
    detail::add_overrides(sw, sweep_over);

    std::string emit;
    std::size_t replication = 0;
    auto* insp = app.add_subcommand("inspect", "Emit an intermediate artifact of one replication");
    insp->add_option("config", config_path, "config file")->required();
    insp->add_option("--emit", emit, "graph, coloring, placement, classes or points")
        ->required()
        ->check(CLI::IsMember({"graph", "coloring", "placement", "classes", "points"}));
    insp->add_option("--replication", replication, "replication index (default 0)");
    insp->add_option("--out", out_path, "output path (default: stdout)");
    detail::add_overrides(insp, inspect_over);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    auto write_to = [&](const std::string& text) -> bool {
        if (out_path.empty()) {
            out << text;
            return true;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write `" << out_path << "`\n";
            return false;
        }
        f << text;
        return static_cast<bool>(f);
    };

    try {
        if (*run) {
            const ScenarioConfig cfg = parse_config(detail::read_file(config_path), detail::collect_overrides(run, run_over));
            const SimResult r = run_scenario(cfg, jobs);
            std::ostringstream os;
            os << kRunCsvHeader << '\n'
               << to_string(cfg.policy) << ',' << format_fixed(r.hit_rate) << ',' << format_fixed(r.std_hit_rate) << ','
               << format_fixed(r.mbs_load) << ',' << format_fixed(r.mean_colors_used, 3) << ',' << r.replications << ','
               << r.master_seed << '\n';
            out << os.str();
            return 0;
        }

        if (*sw) {
            std::vector<std::pair<std::string, std::string>> settings;
            SweepAxis axis = SweepAxis::n_sbs;
            std::vector<double> values;
            std::vector<std::string> policy_names;
            if (!recipe_name.empty()) {
                const Recipe rec = recipe(recipe_name);
                settings.assign(rec.settings.begin(), rec.settings.end());
                axis = rec.axis;
                values = rec.values;
                policy_names = rec.policies;
            }
            for (auto& kv : detail::collect_overrides(sw, sweep_over)) settings.push_back(std::move(kv));

            std::string text = config_path.empty() ? std::string("n_sbs = 48\n") : detail::read_file(config_path);
            const ScenarioConfig base = parse_config(text, settings);

            if (!axis_name.empty()) axis = parse_sweep_axis(axis_name);
            if (!values_list.empty()) {
                values.clear();
                for (const auto& v : detail::split_list(values_list)) {
                    auto d = sbscache::detail::parse_number<double>(v);
                    if (!d) throw ParseError("--values: `" + v + "` is not a number");
                    values.push_back(*d);
                }
            }
            if (!policies_list.empty()) policy_names = detail::split_list(policies_list);
            if (values.empty()) throw ParseError("sweep: no axis values (use --values or --recipe)");
            if (policy_names.empty()) throw ParseError("sweep: no policies (use --policies or --recipe)");

            std::vector<PolicySpec> policies;
            for (const auto& p : policy_names) policies.push_back(parse_policy_spec(p));

            std::ostringstream os;
            write_sweep_csv(os, sweep(base, axis, values, policies, jobs));
            return write_to(os.str()) ? 0 : 1;
        }

        if (*insp) {
            const ScenarioConfig cfg =
                parse_config(detail::read_file(config_path), detail::collect_overrides(insp, inspect_over));
            const Network net = build_network(cfg, replication_seed(cfg.master_seed, replication));
            std::ostringstream os;
            if (emit == "graph") {
                if (!net.conflict_graph) throw DomainError("inspect graph: policy baseline builds no conflict graph");
                write_edge_list(os, *net.conflict_graph);
            } else if (emit == "coloring") {
                if (!net.coloring) throw DomainError("inspect coloring: policy baseline colors nothing");
                write_coloring_csv(os, *net.coloring);
            } else if (emit == "placement") {
                write_placement_csv(os, net.placement);
            } else if (emit == "classes") {
                if (!net.class_weights) throw DomainError("inspect classes: only policy matern_coloring classifies SBSs");
                write_class_weights_csv(os, *net.class_weights);
            } else {
                write_points_csv(os, net.sbs);
            }
            return write_to(os.str()) ? 0 : 1;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace sbscache::cli
