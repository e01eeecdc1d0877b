#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "pcdn/model.hpp"
#include "pcdn/rng.hpp"

namespace pcdn {

enum class Placement { Cyclic, Popularity, Random };
enum class Allocation { Uniform, RandomComposition };

/// Instance generator settings. Defaults are the controlled-experiment baseline.
struct GenConfig {
    std::uint32_t num_users = 100;
    std::uint32_t num_videos = 300;
    std::uint32_t num_peers = 50;
    std::uint32_t num_slots = 10;
    std::uint32_t storage_per_peer = 6;
    std::uint32_t capacity_per_peer = 2;
    double alpha = 0.6;
    Rational peer_cost = 1;
    Rational cdn_cost = 5;
    Placement placement = Placement::Cyclic;
    Allocation storage_alloc = Allocation::Uniform;
    Allocation capacity_alloc = Allocation::Uniform;
    // Network-wide totals; 0 means num_peers * per-peer value. A nonzero total
    // under Uniform allocation is split as evenly as possible.
    std::uint32_t total_storage = 0;
    std::uint32_t total_capacity = 0;
    std::uint64_t seed = 1;
};

/// Zipf probabilities for ranks 1..V; index 0 is rank 1.
inline std::vector<double> zipf_weights(std::uint32_t num_videos, double alpha) {
    std::vector<double> w(num_videos);
    for (std::uint32_t k = 0; k < num_videos; ++k) w[k] = std::pow(double(k + 1), -alpha);
    // sum smallest-first to keep the normalization tight
    double sum = 0;
    for (std::uint32_t k = num_videos; k-- > 0;) sum += w[k];
    for (auto& x : w) x /= sum;
    return w;
}

/// `count` distinct indices drawn with probability proportional to `weights`,
/// without replacement. Equivalent in distribution to drawing with
/// replacement and rejecting repeats.
inline std::vector<VideoId> sample_distinct(const std::vector<double>& weights, std::uint32_t count, Rng& rng) {
    if (count > weights.size()) throw InvalidInput("cannot sample more distinct videos than exist");
    std::vector<double> w = weights;  // zeroed once taken
    std::vector<char> taken(w.size(), 0);
    std::vector<VideoId> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        double total = 0;
        for (double x : w) total += x;
        VideoId pick = kUnassigned;
        if (total > 0) {
            double r = rng.uniform01() * total;
            double acc = 0;
            for (VideoId k = 0; k < w.size(); ++k) {
                if (w[k] <= 0) continue;
                acc += w[k];
                pick = k;
                if (r < acc) break;
            }
        } else {
            // every remaining weight underflowed; fall back to uniform over the rest
            std::vector<VideoId> rest;
            for (VideoId k = 0; k < w.size(); ++k)
                if (!taken[k]) rest.push_back(k);
            pick = rest[rng.below(rest.size())];
        }
        out.push_back(pick);
        taken[pick] = 1;
        w[pick] = 0;
    }
    return out;
}

inline std::vector<std::vector<VideoId>> gen_recommendations(std::uint32_t num_users, std::uint32_t num_slots,
                                                             const std::vector<double>& weights, Rng& rng) {
    std::vector<std::vector<VideoId>> out(num_users);
    for (auto& r : out) r = sample_distinct(weights, num_slots, rng);
    return out;
}

/// Videos in popularity order are dealt round-robin to peers until each peer
/// holds its quota. When the library runs out the deal wraps to the top,
/// skipping videos the receiving peer already holds.
inline std::vector<std::vector<VideoId>> place_cyclic(std::uint32_t num_videos, const std::vector<std::uint32_t>& storage) {
    const auto P = static_cast<std::uint32_t>(storage.size());
    std::vector<std::vector<VideoId>> out(P);
    if (num_videos == 0) return out;
    std::vector<std::uint32_t> remaining(P);
    std::vector<std::vector<char>> held(P, std::vector<char>(num_videos, 0));
    std::uint64_t left = 0;
    for (std::uint32_t p = 0; p < P; ++p) {
        remaining[p] = std::min(storage[p], num_videos);
        left += remaining[p];
    }
    VideoId cursor = 0;
    while (left > 0) {
        for (std::uint32_t p = 0; p < P; ++p) {
            if (remaining[p] == 0) continue;
            VideoId v = cursor;
            while (held[p][v]) v = (v + 1) % num_videos;
            held[p][v] = 1;
            out[p].push_back(v);
            cursor = (v + 1) % num_videos;
            --remaining[p];
            --left;
        }
    }
    return out;
}

/// Each peer independently draws its quota of distinct videos by Zipf weight.
inline std::vector<std::vector<VideoId>> place_popularity(const std::vector<std::uint32_t>& storage,
                                                          const std::vector<double>& weights, Rng& rng) {
    std::vector<std::vector<VideoId>> out;
    for (auto s : storage) out.push_back(sample_distinct(weights, std::min<std::uint32_t>(s, weights.size()), rng));
    return out;
}

/// Each peer independently draws its quota of distinct videos uniformly.
inline std::vector<std::vector<VideoId>> place_random(std::uint32_t num_videos, const std::vector<std::uint32_t>& storage,
                                                      Rng& rng) {
    std::vector<VideoId> all(num_videos);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<VideoId>> out;
    for (auto s : storage) {
        std::vector<VideoId> pick;
        std::sample(all.begin(), all.end(), std::back_inserter(pick), std::min(s, num_videos), rng);
        out.push_back(std::move(pick));
    }
    return out;
}

/// Uniformly random composition of `total` into `parts` integers, each at
/// least `min_per_part` (stars and bars over sorted distinct cut points).
inline std::vector<std::uint32_t> random_composition(std::uint32_t total, std::uint32_t parts, std::uint32_t min_per_part,
                                                     Rng& rng) {
    if (parts == 0) {
        if (total != 0) throw InvalidInput("nonzero total over zero parts");
        return {};
    }
    if (std::uint64_t(parts) * min_per_part > total) throw InvalidInput("total smaller than parts * minimum");
    const std::uint32_t free = total - parts * min_per_part;
    const std::uint32_t slots = free + parts - 1;
    std::vector<std::uint32_t> positions(slots);
    std::iota(positions.begin(), positions.end(), 0);
    std::vector<std::uint32_t> cuts;
    std::sample(positions.begin(), positions.end(), std::back_inserter(cuts), parts - 1, rng);
    std::vector<std::uint32_t> out;
    std::uint32_t prev = 0;
    for (std::uint32_t i = 0; i <= cuts.size(); ++i) {
        std::uint32_t end = i < cuts.size() ? cuts[i] : slots;
        std::uint32_t stars = end - prev;
        out.push_back(min_per_part + stars);
        prev = end + 1;
    }
    return out;
}

inline std::vector<std::uint32_t> even_split(std::uint32_t total, std::uint32_t parts) {
    std::vector<std::uint32_t> out(parts, parts ? total / parts : 0);
    for (std::uint32_t i = 0; parts && i < total % parts; ++i) ++out[i];
    return out;
}

inline std::vector<std::uint32_t> allocate(Allocation mode, std::uint32_t per_peer, std::uint32_t total_override,
                                           std::uint32_t peers, std::uint32_t upper, Rng& rng) {
    const std::uint32_t total = total_override ? total_override : per_peer * peers;
    if (mode == Allocation::Uniform) return total_override ? even_split(total, peers) : std::vector<std::uint32_t>(peers, per_peer);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        auto parts = random_composition(total, peers, 1, rng);
        if (std::all_of(parts.begin(), parts.end(), [&](auto x) { return x <= upper; })) return parts;
    }
    throw InvalidInput("could not draw an allocation within the per-peer upper bound");
}

inline Scenario generate_scenario(const GenConfig& cfg) {
    if (cfg.num_slots > cfg.num_videos) throw InvalidInput("slots exceed library size");
    if (cfg.alpha < 0) throw InvalidInput("alpha must be nonnegative");
    Rng root(cfg.seed);
    Rng demand_rng = root.split("demand");
    Rng place_rng = root.split("placement");
    Rng storage_rng = root.split("storage-alloc");
    Rng capacity_rng = root.split("capacity-alloc");

    auto weights = zipf_weights(cfg.num_videos, cfg.alpha);
    Scenario s;
    s.num_users = cfg.num_users;
    s.num_videos = cfg.num_videos;
    s.num_slots = cfg.num_slots;
    s.recommendations = gen_recommendations(cfg.num_users, cfg.num_slots, weights, demand_rng);

    auto storage = allocate(cfg.storage_alloc, cfg.storage_per_peer, cfg.total_storage, cfg.num_peers, cfg.num_videos, storage_rng);
    auto capacity = allocate(cfg.capacity_alloc, cfg.capacity_per_peer, cfg.total_capacity, cfg.num_peers, UINT32_MAX, capacity_rng);

    std::vector<std::vector<VideoId>> stored;
    switch (cfg.placement) {
        case Placement::Cyclic: stored = place_cyclic(cfg.num_videos, storage); break;
        case Placement::Popularity: stored = place_popularity(storage, weights, place_rng); break;
        case Placement::Random: stored = place_random(cfg.num_videos, storage, place_rng); break;
    }
    for (std::uint32_t p = 0; p < cfg.num_peers; ++p) {
        if (capacity[p] == 0) throw InvalidInput("peer capacity must be at least 1");
        s.nodes.emplace_back(stored[p], cfg.peer_cost, capacity[p]);
    }
    std::vector<VideoId> all(cfg.num_videos);
    std::iota(all.begin(), all.end(), 0);
    s.nodes.emplace_back(std::move(all), cfg.cdn_cost, cfg.num_users);
    return s;
}

}  // namespace pcdn
