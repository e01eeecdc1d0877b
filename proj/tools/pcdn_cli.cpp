// Command-line harness: single solves, parameter sweeps and oracle verification.
//
// Exit codes: 0 ok, 1 configuration or usage error, 2 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pcdn/config.hpp"
#include "pcdn/flow.hpp"
#include "pcdn/scenario_io.hpp"
#include "pcdn/sweep.hpp"
#include "pcdn/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInternal = 2;

// Inline flags that map one-to-one onto config keys.
const std::vector<std::string> kSolveKeys{"users",     "peers",    "videos",        "slots",          "storage",
                                          "capacity",  "alpha",    "peer-cost",     "cdn-cost",       "placement",
                                          "storage-alloc", "capacity-alloc", "total-storage", "total-capacity",
                                          "seed",      "algo",     "t-init",        "gamma",          "iters",
                                          "inner",     "path-finder"};

void print_breakdown(std::ostream& os, const std::string& algo, const pcdn::Scenario& s, const pcdn::CostBreakdown& c,
                     double runtime_ms) {
    std::uint32_t cdn_downloads = 0;
    if (s.cdn().unit_cost != pcdn::Rational(0)) {
        auto count = c.cdn_total / s.cdn().unit_cost;
        cdn_downloads = static_cast<std::uint32_t>(count.num());
    }
    os << "algo=" << algo << " total=" << pcdn::format_number(c.total) << " peer=" << pcdn::format_number(c.peer_total)
       << " cdn=" << pcdn::format_number(c.cdn_total) << " cdn_downloads=" << cdn_downloads
       << " downloads=" << std::uint64_t(s.num_users) * s.num_slots << " runtime_ms=" << runtime_ms << '\n';
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const pcdn::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const pcdn::InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint playback ordering and delivery-node scheduling for peer-assisted CDNs"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Generate (or load) one scenario and solve it");
    std::string config_path, scenario_path, dump_schedule, dump_scenario, dump_network;
    bool aggregate = false;
    std::map<std::string, std::string> inline_values;
    solve->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    solve->add_option("--scenario", scenario_path, "Load a scenario in text format instead of generating one")
        ->check(CLI::ExistingFile);
    for (const auto& key : kSolveKeys) solve->add_option("--" + key, inline_values[key]);
    solve->add_flag("--aggregate", aggregate, "Merge replicas of a node during the flow phase (mmec)");
    solve->add_option("--dump-schedule", dump_schedule, "Write the schedule to PATH");
    solve->add_option("--dump-scenario", dump_scenario, "Write the scenario to PATH");
    solve->add_option("--dump-network", dump_network, "Write the flow network to PATH in DIMACS format");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a controlled-variable parameter sweep and write CSV");
    std::string preset, out_path, algos_list = "mmec,rors,roos,sao", sweep_config, sweep_finder = "potentials";
    std::uint32_t trials = 20;
    std::uint64_t master_seed = 1;
    unsigned jobs = 1;
    bool timing = false, literal_network = false;
    sweep->add_option("--preset", preset, "Swept parameter")->required()->check(CLI::IsMember(pcdn::preset_names()));
    sweep->add_option("--trials", trials, "Trials per swept value");
    sweep->add_option("--seed", master_seed, "Master seed");
    sweep->add_option("--algos", algos_list, "Comma-separated algorithms");
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--config", sweep_config, "Base configuration (defaults otherwise)")->check(CLI::ExistingFile);
    sweep->add_option("--jobs", jobs, "Worker threads");
    sweep->add_option("--path-finder", sweep_finder, "mmec path finder")->check(CLI::IsMember({"bellman-ford", "potentials"}));
    sweep->add_flag("--literal-network", literal_network, "Solve mmec on the split network without aggregation");
    sweep->add_flag("--timing", timing, "Fill the runtime_ms column (output is then not reproducible)");

    // verify
    auto* verify = app.add_subcommand("verify", "Check mmec against the exhaustive oracle on random tiny instances");
    std::uint32_t instances = 100;
    std::uint64_t verify_seed = 1;
    bool inject_fault = false;
    verify->add_option("--instances", instances, "Number of random instances");
    verify->add_option("--seed", verify_seed, "Seed");
    verify->add_flag("--inject-fault", inject_fault, "Negative control: perturb the solver's cost");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*solve) {
        return guarded([&] {
            pcdn::SolveConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                for (const auto& [k, v] : pcdn::parse_config(in)) pcdn::apply_setting(cfg, k, v);
            }
            for (const auto& key : kSolveKeys)
                if (solve->count("--" + key)) pcdn::apply_setting(cfg, key, inline_values[key]);
            if (aggregate) cfg.mmec.aggregate = true;
            pcdn::check_config(cfg);

            pcdn::Scenario s;
            if (!scenario_path.empty()) {
                std::ifstream in(scenario_path);
                s = pcdn::read_scenario(in);
            } else {
                s = pcdn::generate_scenario(cfg.gen);
            }
            auto violations = pcdn::validate_scenario(s);
            if (!violations.empty()) throw pcdn::InvalidInput("invalid scenario: " + violations.front());
            if (!dump_scenario.empty()) {
                std::ofstream out(dump_scenario);
                pcdn::write_scenario(out, s);
            }
            if (!dump_network.empty()) {
                std::ofstream out(dump_network);
                pcdn::write_dimacs(out, pcdn::build_network(s, cfg.mmec.aggregate));
            }
            auto run = pcdn::run_algorithm(cfg.algo, s, cfg.gen.seed, cfg.mmec, cfg.sao);
            print_breakdown(std::cout, cfg.algo, s, run.cost, run.runtime_ms);
            if (!dump_schedule.empty()) {
                std::ofstream out(dump_schedule);
                if (!out) throw pcdn::InvalidInput("cannot write " + dump_schedule);
                pcdn::write_schedule(out, run.schedule);
            }
            return kExitOk;
        });
    }

    if (*sweep) {
        return guarded([&] {
            pcdn::SolveConfig base;
            if (!sweep_config.empty()) {
                std::ifstream in(sweep_config);
                for (const auto& [k, v] : pcdn::parse_config(in)) pcdn::apply_setting(base, k, v);
                pcdn::check_config(base);
            }
            auto spec = pcdn::make_preset(preset, base.gen);
            spec.trials = trials;
            spec.master_seed = master_seed;
            spec.jobs = jobs;
            spec.timing = timing;
            spec.sao = base.sao;
            spec.mmec.path_finder = sweep_finder == "potentials" ? pcdn::PathFinder::Potentials : pcdn::PathFinder::BellmanFord;
            spec.mmec.aggregate = !literal_network;
            spec.algorithms.clear();
            std::stringstream ss(algos_list);
            for (std::string a; std::getline(ss, a, ',');) {
                if (std::find(pcdn::all_algorithms().begin(), pcdn::all_algorithms().end(), a) == pcdn::all_algorithms().end())
                    throw pcdn::ConfigError("unknown algorithm '" + a + "'");
                spec.algorithms.push_back(a);
            }
            std::ofstream out(out_path);
            if (!out) throw pcdn::ConfigError("cannot write " + out_path);
            pcdn::write_csv(out, pcdn::run_sweep(spec));
            if (!out) throw pcdn::ConfigError("failed writing " + out_path);
            return kExitOk;
        });
    }

    if (*verify) {
        return guarded([&] {
            pcdn::CostSolver solver = pcdn::mmec_cost;
            if (inject_fault) solver = [](const pcdn::Scenario& s) { return pcdn::mmec_cost(s) + pcdn::Rational(1); };
            auto rep = pcdn::run_verification(instances, verify_seed, solver);
            for (const auto& f : rep.failures) std::cerr << "mismatch: " << f << '\n';
            std::cout << "verify: " << rep.passed << " passed, " << rep.failed << " failed of " << instances << '\n';
            return rep.failed == 0 ? kExitOk : kExitInternal;
        });
    }
    return kExitConfig;
}
