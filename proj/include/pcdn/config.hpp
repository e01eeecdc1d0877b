#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pcdn/baselines.hpp"
#include "pcdn/mmec.hpp"
#include "pcdn/scengen.hpp"

// Flat "key = value" configuration shared by the CLI and the generator.
// '#' starts a comment; blank lines are ignored; keys are case-sensitive and
// accept '-' or '_' interchangeably.

namespace pcdn {

class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

struct SolveConfig {
    GenConfig gen;
    std::string algo = "mmec";
    SaoParams sao;
    MmecOptions mmec;
};

inline std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

inline std::string canonical_key(std::string key) {
    for (auto& c : key)
        if (c == '-') c = '_';
    return key;
}

inline std::vector<std::pair<std::string, std::string>> parse_config(std::istream& is) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    for (int lineno = 1; std::getline(is, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        out.emplace_back(canonical_key(key), value);
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
        auto x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
    }
}

inline std::uint32_t parse_u32(const std::string& key, const std::string& v) {
    auto x = parse_u64(key, v);
    if (x > UINT32_MAX) throw ConfigError(key + ": value out of range");
    return static_cast<std::uint32_t>(x);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

inline Placement parse_placement(const std::string& v) {
    if (v == "cyclic") return Placement::Cyclic;
    if (v == "popularity") return Placement::Popularity;
    if (v == "random") return Placement::Random;
    throw ConfigError("placement: expected cyclic, popularity or random, got '" + v + "'");
}

inline Allocation parse_allocation(const std::string& key, const std::string& v) {
    if (v == "uniform") return Allocation::Uniform;
    if (v == "random") return Allocation::RandomComposition;
    throw ConfigError(key + ": expected uniform or random, got '" + v + "'");
}

inline const char* to_string(Placement p) {
    switch (p) {
        case Placement::Cyclic: return "cyclic";
        case Placement::Popularity: return "popularity";
        case Placement::Random: return "random";
    }
    return "?";
}

inline const char* to_string(Allocation a) { return a == Allocation::Uniform ? "uniform" : "random"; }

inline void apply_setting(SolveConfig& c, const std::string& raw_key, const std::string& v) {
    const auto key = canonical_key(raw_key);
    auto& g = c.gen;
    if (key == "users") g.num_users = parse_u32(key, v);
    else if (key == "peers") g.num_peers = parse_u32(key, v);
    else if (key == "videos") g.num_videos = parse_u32(key, v);
    else if (key == "slots") g.num_slots = parse_u32(key, v);
    else if (key == "storage") g.storage_per_peer = parse_u32(key, v);
    else if (key == "capacity") g.capacity_per_peer = parse_u32(key, v);
    else if (key == "total_storage") g.total_storage = parse_u32(key, v);
    else if (key == "total_capacity") g.total_capacity = parse_u32(key, v);
    else if (key == "alpha") g.alpha = parse_double(key, v);
    else if (key == "peer_cost" || key == "cdn_cost") {
        Rational r;
        try {
            r = Rational::parse(v);
        } catch (const std::exception&) {
            throw ConfigError(key + ": expected a rational number, got '" + v + "'");
        }
        (key == "peer_cost" ? g.peer_cost : g.cdn_cost) = r;
    } else if (key == "placement") g.placement = parse_placement(v);
    else if (key == "storage_alloc") g.storage_alloc = parse_allocation(key, v);
    else if (key == "capacity_alloc") g.capacity_alloc = parse_allocation(key, v);
    else if (key == "seed") g.seed = parse_u64(key, v);
    else if (key == "algo") c.algo = v;
    else if (key == "t_init") c.sao.t_init = parse_double(key, v);
    else if (key == "gamma") c.sao.gamma = parse_double(key, v);
    else if (key == "iters") c.sao.max_iters = parse_u32(key, v);
    else if (key == "inner") c.sao.inner_moves = parse_u32(key, v);
    else if (key == "path_finder") {
        if (v == "bellman-ford") c.mmec.path_finder = PathFinder::BellmanFord;
        else if (v == "potentials") c.mmec.path_finder = PathFinder::Potentials;
        else throw ConfigError("path_finder: expected bellman-ford or potentials, got '" + v + "'");
    } else if (key == "aggregate") {
        if (v == "true" || v == "1") c.mmec.aggregate = true;
        else if (v == "false" || v == "0") c.mmec.aggregate = false;
        else throw ConfigError("aggregate: expected true or false, got '" + v + "'");
    } else throw ConfigError("unknown config key '" + raw_key + "'");
}

inline void check_config(const SolveConfig& c) {
    const auto& g = c.gen;
    if (g.num_users < 1) throw ConfigError("users must be at least 1");
    if (g.num_videos < 1) throw ConfigError("videos must be at least 1");
    if (g.num_slots < 1) throw ConfigError("slots must be at least 1");
    if (g.num_slots > g.num_videos) throw ConfigError("slots cannot exceed videos");
    if (g.alpha < 0) throw ConfigError("alpha must be nonnegative");
    if (g.peer_cost < Rational(0) || g.cdn_cost < Rational(0)) throw ConfigError("costs must be nonnegative");
    if (g.total_capacity == 0 && g.num_peers > 0 && g.capacity_per_peer < 1) throw ConfigError("capacity must be at least 1");
    if (g.total_capacity != 0 && g.total_capacity < g.num_peers) throw ConfigError("total capacity below one per peer");
    if (c.algo != "mmec" && c.algo != "rors" && c.algo != "roos" && c.algo != "sao")
        throw ConfigError("algo: expected mmec, rors, roos or sao, got '" + c.algo + "'");
    if (!(c.sao.t_init > 0)) throw ConfigError("t_init must be positive");
    if (!(c.sao.gamma > 0 && c.sao.gamma < 1)) throw ConfigError("gamma must lie in (0, 1)");
    if (c.sao.inner_moves < 1) throw ConfigError("inner must be at least 1");
}

inline void write_config(std::ostream& os, const GenConfig& g) {
    os << "users = " << g.num_users << '\n'
       << "peers = " << g.num_peers << '\n'
       << "videos = " << g.num_videos << '\n'
       << "slots = " << g.num_slots << '\n'
       << "storage = " << g.storage_per_peer << '\n'
       << "capacity = " << g.capacity_per_peer << '\n'
       << "total_storage = " << g.total_storage << '\n'
       << "total_capacity = " << g.total_capacity << '\n';
    std::ostringstream alpha;
    alpha.precision(17);
    alpha << g.alpha;
    os << "alpha = " << alpha.str() << '\n'
       << "peer_cost = " << g.peer_cost << '\n'
       << "cdn_cost = " << g.cdn_cost << '\n'
       << "placement = " << to_string(g.placement) << '\n'
       << "storage_alloc = " << to_string(g.storage_alloc) << '\n'
       << "capacity_alloc = " << to_string(g.capacity_alloc) << '\n'
       << "seed = " << g.seed << '\n';
}

}  // namespace pcdn
