#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pcdn/baselines.hpp"
#include "pcdn/config.hpp"
#include "pcdn/mmec.hpp"
#include "pcdn/scengen.hpp"

namespace pcdn {

inline const std::vector<std::string>& all_algorithms() {
    static const std::vector<std::string> algos{"mmec", "rors", "roos", "sao"};
    return algos;
}

struct AlgoRun {
    Schedule schedule;
    CostBreakdown cost;
    double runtime_ms = 0;
    std::optional<std::int64_t> augmentations;
};

/// Runs one algorithm by name; the seed drives every stochastic choice.
inline AlgoRun run_algorithm(const std::string& algo, const Scenario& s, std::uint64_t seed, const MmecOptions& mmec = {},
                             const SaoParams& sao_params = {}) {
    auto start = std::chrono::steady_clock::now();
    AlgoRun r;
    if (algo == "mmec") {
        auto m = run_mmec(s, mmec);
        r.schedule = std::move(m.schedule);
        r.augmentations = m.diagnostics.augmentations;
    } else if (algo == "rors") {
        r.schedule = rors(s, seed);
    } else if (algo == "roos") {
        r.schedule = roos(s, seed);
    } else if (algo == "sao") {
        r.schedule = sao(s, seed, sao_params);
    } else {
        throw InvalidInput("unknown algorithm '" + algo + "'");
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.cost = evaluate_cost(s, r.schedule);
    return r;
}

struct SweepPoint {
    std::string label;
    GenConfig config;
};

struct SweepSpec {
    std::string parameter;
    std::vector<SweepPoint> points;
    std::uint32_t trials = 20;
    std::vector<std::string> algorithms = all_algorithms();
    std::uint64_t master_seed = 1;
    MmecOptions mmec{PathFinder::Potentials, true};
    SaoParams sao;
    unsigned jobs = 1;
    bool timing = false;
};

struct SweepRow {
    std::string parameter;
    std::string value;
    std::uint64_t trial_seed = 0;
    std::string algorithm;
    Rational total_cost;
    Rational peer_cost;
    Rational cdn_cost;
    std::optional<double> runtime_ms;
    std::optional<std::int64_t> augmentations;
};

/// Trial seeds depend on the master seed and trial index only, so every swept
/// value of a trial sees the same random stream.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint32_t trial) { return mix64(master, trial); }

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"users",   "peers",    "videos",         "slots",           "storage",
                                                "capacity", "alpha",    "hetero-storage", "hetero-capacity", "placement"};
    return names;
}

/// Sweep over one parameter with every other setting at `base`.
inline SweepSpec make_preset(const std::string& name, const GenConfig& base = {}) {
    SweepSpec spec;
    spec.parameter = name;
    auto range = [&](std::uint32_t lo, std::uint32_t hi, std::uint32_t step, auto apply) {
        for (std::uint32_t x = lo; x <= hi; x += step) {
            GenConfig c = base;
            apply(c, x);
            spec.points.push_back({std::to_string(x), c});
        }
    };
    if (name == "users") range(50, 140, 10, [](GenConfig& c, std::uint32_t x) { c.num_users = x; });
    else if (name == "peers") {
        // total storage and capacity stay at the default network's totals
        const std::uint32_t storage = base.num_peers * base.storage_per_peer;
        const std::uint32_t capacity = base.num_peers * base.capacity_per_peer;
        range(10, 100, 10, [&](GenConfig& c, std::uint32_t x) {
            c.num_peers = x;
            c.total_storage = storage;
            c.total_capacity = capacity;
        });
    } else if (name == "videos") range(100, 500, 50, [](GenConfig& c, std::uint32_t x) { c.num_videos = x; });
    else if (name == "slots") range(6, 20, 2, [](GenConfig& c, std::uint32_t x) { c.num_slots = x; });
    else if (name == "storage") range(2, 10, 1, [](GenConfig& c, std::uint32_t x) { c.storage_per_peer = x; });
    else if (name == "capacity") range(1, 5, 1, [](GenConfig& c, std::uint32_t x) { c.capacity_per_peer = x; });
    else if (name == "alpha") {
        for (std::uint32_t k = 1; k <= 10; ++k) {
            GenConfig c = base;
            c.alpha = k / 10.0;
            std::ostringstream label;
            label << k / 10 << '.' << k % 10;
            spec.points.push_back({label.str(), c});
        }
    } else if (name == "hetero-storage" || name == "hetero-capacity") {
        for (auto mode : {Allocation::Uniform, Allocation::RandomComposition}) {
            GenConfig c = base;
            (name == "hetero-storage" ? c.storage_alloc : c.capacity_alloc) = mode;
            spec.points.push_back({to_string(mode), c});
        }
    } else if (name == "placement") {
        for (auto p : {Placement::Cyclic, Placement::Popularity, Placement::Random}) {
            GenConfig c = base;
            c.placement = p;
            spec.points.push_back({to_string(p), c});
        }
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return spec;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const std::size_t tasks = spec.points.size() * spec.trials;
    std::vector<std::vector<SweepRow>> results(tasks);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        for (std::size_t task; (task = next.fetch_add(1)) < tasks;) {
            try {
                const auto& point = spec.points[task / spec.trials];
                const auto trial = static_cast<std::uint32_t>(task % spec.trials);
                const std::uint64_t seed = trial_seed(spec.master_seed, trial);
                GenConfig cfg = point.config;
                cfg.seed = seed;
                const Scenario s = generate_scenario(cfg);
                for (const auto& algo : spec.algorithms) {
                    auto run = run_algorithm(algo, s, seed, spec.mmec, spec.sao);
                    SweepRow row{spec.parameter, point.label, seed, algo, run.cost.total, run.cost.peer_total,
                                 run.cost.cdn_total, std::nullopt, std::nullopt};
                    if (spec.timing) row.runtime_ms = run.runtime_ms;
                    row.augmentations = run.augmentations;
                    results[task].push_back(std::move(row));
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1U, std::min<unsigned>(spec.jobs, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    std::vector<SweepRow> rows;
    for (auto& r : results)
        for (auto& row : r) rows.push_back(std::move(row));
    return rows;
}

inline std::string format_number(const Rational& r) {
    if (r.is_integer()) return std::to_string(r.num());
    std::ostringstream os;
    os << std::setprecision(12) << r.to_double();
    return os.str();
}

inline const char* kCsvHeader = "parameter,value,trial_seed,algorithm,total_cost,peer_cost,cdn_cost,runtime_ms,augmentations";

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.parameter << ',' << r.value << ',' << r.trial_seed << ',' << r.algorithm << ',' << format_number(r.total_cost)
           << ',' << format_number(r.peer_cost) << ',' << format_number(r.cdn_cost) << ',';
        if (r.runtime_ms) os << std::fixed << std::setprecision(3) << *r.runtime_ms << std::defaultfloat;
        os << ',';
        if (r.augmentations) os << *r.augmentations;
        os << '\n';
    }
}

}  // namespace pcdn
