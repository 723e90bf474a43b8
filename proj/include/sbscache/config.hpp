#pragma once

// Flat `key = value` scenario configuration with `#` comments.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sbscache/errors.hpp"
#include "sbscache/sim.hpp"

namespace sbscache {

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "cell_radius",   "n_sbs",          "sbs_range",          "sbs_range_min",  "sbs_range_max",
        "n_users",       "file_count",     "memory",             "alpha",          "n_rounds",
        "requests_per_round", "policy",    "threshold_mode",     "coloring_mode",  "r_class",
        "replications",  "master_seed",    "exact_solver_limit", "max_matern_iterations",
        "survivor_counting", "threshold_scale"};
    return keys;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace detail

inline std::string to_string(Policy p) {
    switch (p) {
    case Policy::baseline: return "baseline";
    case Policy::threshold_coloring: return "threshold_coloring";
    case Policy::matern_coloring: return "matern_coloring";
    }
    return {};
}
inline std::string to_string(ThresholdMode m) { return m == ThresholdMode::individual ? "individual" : "universal"; }
inline std::string to_string(ColoringMode m) { return m == ColoringMode::exact ? "exact" : "greedy"; }
inline std::string to_string(SurvivorCounting c) { return c == SurvivorCounting::per_set ? "per_set" : "once"; }

/// Applies one setting; `where` prefixes error messages (e.g. "line 4").
inline void apply_setting(ScenarioConfig& cfg, const std::string& key, std::string_view raw, const std::string& where) {
    const std::string_view value = detail::trim(raw);
    auto bad = [&](const char* expected) -> ParseError {
        return ParseError(where + ": invalid value `" + std::string(value) + "` for `" + key + "` (expected " +
                          expected + ")");
    };
    auto count = [&](std::size_t& dst) {
        auto v = detail::parse_number<std::size_t>(value);
        if (!v) throw bad("a non-negative integer");
        dst = *v;
    };
    auto real = [&](double& dst) {
        auto v = detail::parse_number<double>(value);
        if (!v || !std::isfinite(*v)) throw bad("a finite number");
        dst = *v;
    };

    if (key == "cell_radius") real(cfg.cell_radius);
    else if (key == "n_sbs") count(cfg.n_sbs);
    else if (key == "sbs_range") real(cfg.sbs_range);
    else if (key == "sbs_range_min") real(cfg.sbs_range_min);
    else if (key == "sbs_range_max") real(cfg.sbs_range_max);
    else if (key == "n_users") count(cfg.n_users);
    else if (key == "file_count") count(cfg.file_count);
    else if (key == "memory") count(cfg.memory);
    else if (key == "alpha") real(cfg.alpha);
    else if (key == "n_rounds") count(cfg.n_rounds);
    else if (key == "requests_per_round") count(cfg.requests_per_round);
    else if (key == "r_class") real(cfg.r_class);
    else if (key == "replications") count(cfg.replications);
    else if (key == "exact_solver_limit") count(cfg.exact_solver_limit);
    else if (key == "max_matern_iterations") count(cfg.max_matern_iterations);
    else if (key == "threshold_scale") real(cfg.threshold_scale);
    else if (key == "master_seed") {
        auto v = detail::parse_number<Seed>(value);
        if (!v) throw bad("an unsigned 64-bit integer");
        cfg.master_seed = *v;
    } else if (key == "policy") {
        if (value == "baseline") cfg.policy = Policy::baseline;
        else if (value == "threshold_coloring") cfg.policy = Policy::threshold_coloring;
        else if (value == "matern_coloring") cfg.policy = Policy::matern_coloring;
        else throw bad("baseline, threshold_coloring or matern_coloring");
    } else if (key == "threshold_mode") {
        if (value == "individual") cfg.threshold_mode = ThresholdMode::individual;
        else if (value == "universal") cfg.threshold_mode = ThresholdMode::universal;
        else throw bad("individual or universal");
    } else if (key == "coloring_mode") {
        if (value == "exact") cfg.coloring_mode = ColoringMode::exact;
        else if (value == "greedy") cfg.coloring_mode = ColoringMode::greedy;
        else throw bad("exact or greedy");
    } else if (key == "survivor_counting") {
        if (value == "per_set") cfg.survivor_counting = SurvivorCounting::per_set;
        else if (value == "once") cfg.survivor_counting = SurvivorCounting::once;
        else throw bad("per_set or once");
    } else {
        throw ParseError(where + ": unknown key `" + key + "`");
    }
}

/// Parses config text. `n_sbs` is required; every other key has a default.
/// Overrides are applied after the file, in order, and win over it.
inline ScenarioConfig parse_config(std::istream& is,
                                   const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
    ScenarioConfig cfg;
    std::map<std::string, std::size_t> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = detail::trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = "line " + std::to_string(lineno);
        if (eq == std::string_view::npos) throw ParseError(where + ": expected `key = value`");
        const std::string key(detail::trim(body.substr(0, eq)));
        if (key.empty()) throw ParseError(where + ": missing key");
        if (auto it = seen.find(key); it != seen.end())
            throw ParseError(where + ": duplicate key `" + key + "` (first set on line " + std::to_string(it->second) + ")");
        apply_setting(cfg, key, body.substr(eq + 1), where);
        seen[key] = lineno;
    }
    for (const auto& [key, value] : overrides) {
        apply_setting(cfg, key, value, "--" + key);
        seen.emplace(key, 0);
    }
    if (!seen.contains("n_sbs")) throw ParseError("missing required key `n_sbs`");
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

inline ScenarioConfig parse_config(const std::string& text,
                                   const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
    std::istringstream is(text);
    return parse_config(is, overrides);
}

/// Writes every key; parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const ScenarioConfig& c) {
    std::ostringstream os;
    auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
    kv("cell_radius", detail::shortest(c.cell_radius));
    kv("n_sbs", std::to_string(c.n_sbs));
    kv("sbs_range", detail::shortest(c.sbs_range));
    kv("sbs_range_min", detail::shortest(c.sbs_range_min));
    kv("sbs_range_max", detail::shortest(c.sbs_range_max));
    kv("n_users", std::to_string(c.n_users));
    kv("file_count", std::to_string(c.file_count));
    kv("memory", std::to_string(c.memory));
    kv("alpha", detail::shortest(c.alpha));
    kv("n_rounds", std::to_string(c.n_rounds));
    kv("requests_per_round", std::to_string(c.requests_per_round));
    kv("policy", to_string(c.policy));
    kv("threshold_mode", to_string(c.threshold_mode));
    kv("coloring_mode", to_string(c.coloring_mode));
    kv("r_class", detail::shortest(c.r_class));
    kv("replications", std::to_string(c.replications));
    kv("master_seed", std::to_string(c.master_seed));
    kv("exact_solver_limit", std::to_string(c.exact_solver_limit));
    kv("max_matern_iterations", std::to_string(c.max_matern_iterations));
    kv("survivor_counting", to_string(c.survivor_counting));
    kv("threshold_scale", detail::shortest(c.threshold_scale));
    return os.str();
}

}  // namespace sbscache
