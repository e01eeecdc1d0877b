#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcdn/mmec.hpp"
#include "pcdn/oracle.hpp"
#include "pcdn/rng.hpp"

namespace pcdn {

struct TinyLimits {
    std::uint32_t max_users = 3;
    std::uint32_t max_slots = 3;
    std::uint32_t max_videos = 5;
    std::uint32_t max_peers = 3;
    std::uint32_t max_capacity = 2;
};

/// Random instance small enough for the exhaustive oracle. Peer storage is an
/// arbitrary subset (possibly empty), so some videos end up CDN-only; peer
/// costs are drawn from {1/2, 1, 2, 3} and the CDN costs 5.
inline Scenario random_tiny_scenario(Rng& rng, const TinyLimits& lim = {}) {
    Scenario s;
    s.num_users = 1 + static_cast<std::uint32_t>(rng.below(lim.max_users));
    s.num_slots = 1 + static_cast<std::uint32_t>(rng.below(lim.max_slots));
    s.num_videos = s.num_slots + static_cast<std::uint32_t>(rng.below(lim.max_videos - s.num_slots + 1));
    const auto peers = static_cast<std::uint32_t>(rng.below(lim.max_peers + 1));
    static const Rational kPeerCosts[] = {Rational(1, 2), Rational(1), Rational(2), Rational(3)};
    for (std::uint32_t p = 0; p < peers; ++p) {
        std::vector<VideoId> stored;
        for (VideoId v = 0; v < s.num_videos; ++v)
            if (rng.below(2)) stored.push_back(v);
        Rational cost = rng.below(2) ? Rational(1) : kPeerCosts[rng.below(4)];
        s.nodes.emplace_back(std::move(stored), cost, 1 + static_cast<std::uint32_t>(rng.below(lim.max_capacity)));
    }
    std::vector<VideoId> all(s.num_videos);
    for (VideoId v = 0; v < s.num_videos; ++v) all[v] = v;
    s.nodes.emplace_back(all, Rational(5), s.num_users);
    for (UserId u = 0; u < s.num_users; ++u) {
        auto lib = all;
        std::shuffle(lib.begin(), lib.end(), rng);
        lib.resize(s.num_slots);
        s.recommendations.push_back(std::move(lib));
    }
    return s;
}

struct VerifyReport {
    std::uint32_t passed = 0;
    std::uint32_t failed = 0;
    std::vector<std::string> failures;  // first few mismatches
};

using CostSolver = std::function<Rational(const Scenario&)>;

inline Rational mmec_cost(const Scenario& s) { return run_mmec(s).cost.total; }

/// Compares `solver` with the exhaustive optimum on `instances` random tiny scenarios.
inline VerifyReport run_verification(std::uint32_t instances, std::uint64_t seed, const CostSolver& solver = mmec_cost) {
    VerifyReport rep;
    Rng root(seed);
    for (std::uint32_t i = 0; i < instances; ++i) {
        Rng rng = root.split(i);
        Scenario s = random_tiny_scenario(rng);
        Rational expected = oracle::exhaustive_optimal(s).cost;
        Rational got = solver(s);
        if (got == expected) {
            ++rep.passed;
        } else {
            ++rep.failed;
            if (rep.failures.size() < 10)
                rep.failures.push_back("instance " + std::to_string(i) + ": solver " + got.str() + ", oracle " + expected.str());
        }
    }
    return rep;
}

}  // namespace pcdn
