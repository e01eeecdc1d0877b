#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pcdn/errors.hpp"
#include "pcdn/rational.hpp"

namespace pcdn {

using UserId = std::uint32_t;
using VideoId = std::uint32_t;
using NodeId = std::uint32_t;
using SlotIndex = std::uint32_t;

inline constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

struct NodeSpec {
    std::vector<VideoId> storage;  // sorted, distinct
    Rational unit_cost = 1;        // per video per slot
    std::uint32_t capacity = 1;    // concurrent users per slot

    NodeSpec() = default;
    NodeSpec(std::vector<VideoId> videos, Rational cost, std::uint32_t cap)
        : storage(std::move(videos)), unit_cost(cost), capacity(cap) {
        std::sort(storage.begin(), storage.end());
        storage.erase(std::unique(storage.begin(), storage.end()), storage.end());
    }

    bool stores(VideoId v) const { return std::binary_search(storage.begin(), storage.end(), v); }
};

/// A complete problem instance. Nodes 0..N-1 are peers; the last node is the CDN.
struct Scenario {
    std::uint32_t num_users = 0;
    std::uint32_t num_videos = 0;
    std::uint32_t num_slots = 0;
    std::vector<std::vector<VideoId>> recommendations;  // one set per user, size num_slots
    std::vector<NodeSpec> nodes;

    std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(nodes.size()); }
    std::uint32_t num_peers() const { return nodes.empty() ? 0 : num_nodes() - 1; }
    NodeId cdn_id() const { return num_nodes() - 1; }
    const NodeSpec& cdn() const { return nodes.back(); }
    bool is_cdn(NodeId n) const { return n == cdn_id(); }

    /// Nodes (peers and CDN) caching each video, in node order.
    std::vector<std::vector<NodeId>> holders() const {
        std::vector<std::vector<NodeId>> out(num_videos);
        for (NodeId n = 0; n < num_nodes(); ++n)
            for (VideoId v : nodes[n].storage)
                if (v < num_videos) out[v].push_back(n);
        return out;
    }

    Rational min_unit_cost() const {
        Rational best = cdn().unit_cost;
        for (const auto& n : nodes) best = std::min(best, n.unit_cost);
        return best;
    }
};

struct Assignment {
    VideoId video = kUnassigned;
    NodeId node = kUnassigned;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Dense decision matrix: for every (user, slot) the video watched and the node serving it.
class Schedule {
public:
    Schedule() = default;
    Schedule(std::uint32_t users, std::uint32_t slots) : users_(users), slots_(slots), cells_(std::size_t(users) * slots) {}

    std::uint32_t num_users() const { return users_; }
    std::uint32_t num_slots() const { return slots_; }

    Assignment& at(UserId u, SlotIndex t) { return cells_[std::size_t(u) * slots_ + t]; }
    const Assignment& at(UserId u, SlotIndex t) const { return cells_[std::size_t(u) * slots_ + t]; }

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::uint32_t users_ = 0;
    std::uint32_t slots_ = 0;
    std::vector<Assignment> cells_;
};

struct CostBreakdown {
    Rational total;
    std::vector<Rational> per_node;
    Rational peer_total;
    Rational cdn_total;
};

/// Checks the instance invariants. Violations are returned in order of
/// invariant, then index; an empty list means the scenario is valid.
inline std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> out;
    if (s.nodes.empty()) {
        out.emplace_back("no-cdn");
        return out;
    }
    // |R_u| = T
    if (s.recommendations.size() != s.num_users)
        out.push_back("user-count:" + std::to_string(s.recommendations.size()));
    for (UserId u = 0; u < s.recommendations.size(); ++u)
        if (s.recommendations[u].size() != s.num_slots) out.push_back("recset-size:user " + std::to_string(u));
    for (UserId u = 0; u < s.recommendations.size(); ++u) {
        auto r = s.recommendations[u];
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end()) out.push_back("recset-duplicate:user " + std::to_string(u));
    }
    // S_N = V
    for (VideoId v = 0; v < s.num_videos; ++v)
        if (!s.cdn().stores(v)) out.push_back("cdn-missing-video:" + std::to_string(v));
    // d_N = U
    if (s.cdn().capacity != s.num_users) out.push_back("cdn-capacity:" + std::to_string(s.cdn().capacity));
    // ids in range
    for (UserId u = 0; u < s.recommendations.size(); ++u)
        for (VideoId v : s.recommendations[u])
            if (v >= s.num_videos) out.push_back("recommended-range:user " + std::to_string(u) + ",video " + std::to_string(v));
    for (NodeId n = 0; n < s.num_nodes(); ++n)
        for (VideoId v : s.nodes[n].storage)
            if (v >= s.num_videos) out.push_back("stored-range:node " + std::to_string(n) + ",video " + std::to_string(v));
    // NodeSpec invariants
    for (NodeId n = 0; n < s.num_nodes(); ++n) {
        if (s.nodes[n].capacity < 1) out.push_back("node-capacity:node " + std::to_string(n));
        if (s.nodes[n].unit_cost < Rational(0)) out.push_back("node-cost:node " + std::to_string(n));
    }
    return out;
}

inline void require_valid(const Scenario& s) {
    auto violations = validate_scenario(s);
    if (!violations.empty()) throw InvalidInput("invalid scenario: " + violations.front());
}

/// Checks a schedule against the five constraint families: recommended-only,
/// one download per (user, slot), each recommended video exactly once, storage
/// availability and per-slot node capacity.
inline std::vector<std::string> validate_schedule(const Scenario& s, const Schedule& x) {
    std::vector<std::string> out;
    if (x.num_users() != s.num_users || x.num_slots() != s.num_slots) {
        out.emplace_back("shape");
        return out;
    }
    const auto U = s.num_users;
    const auto T = s.num_slots;
    const auto N = s.num_nodes();

    // only recommended videos
    for (UserId u = 0; u < U; ++u)
        for (SlotIndex t = 0; t < T; ++t) {
            VideoId v = x.at(u, t).video;
            if (v == kUnassigned) continue;
            const auto& r = s.recommendations[u];
            if (std::find(r.begin(), r.end(), v) == r.end())
                out.push_back("recommended:user " + std::to_string(u) + ",video " + std::to_string(v));
        }
    // exactly one (video, node) per (u, t)
    for (UserId u = 0; u < U; ++u)
        for (SlotIndex t = 0; t < T; ++t) {
            const auto& a = x.at(u, t);
            if (a.video == kUnassigned || a.node == kUnassigned || a.node >= N)
                out.push_back("slot:user " + std::to_string(u) + ",slot " + std::to_string(t));
        }
    // each recommended video exactly once
    for (UserId u = 0; u < U; ++u)
        for (VideoId v : s.recommendations[u]) {
            std::uint32_t count = 0;
            for (SlotIndex t = 0; t < T; ++t) count += x.at(u, t).video == v;
            if (count != 1) out.push_back("once:user " + std::to_string(u) + ",video " + std::to_string(v));
        }
    // serving node caches the video
    for (UserId u = 0; u < U; ++u)
        for (SlotIndex t = 0; t < T; ++t) {
            const auto& a = x.at(u, t);
            if (a.video == kUnassigned || a.node >= N) continue;
            if (!s.nodes[a.node].stores(a.video))
                out.push_back("storage:user " + std::to_string(u) + ",slot " + std::to_string(t) + ",node " +
                              std::to_string(a.node));
        }
    // per-slot concurrency
    for (NodeId n = 0; n < N; ++n)
        for (SlotIndex t = 0; t < T; ++t) {
            std::uint32_t load = 0;
            for (UserId u = 0; u < U; ++u) load += x.at(u, t).node == n;
            if (load > s.nodes[n].capacity)
                out.push_back("capacity:node " + std::to_string(n) + ",slot " + std::to_string(t));
        }
    return out;
}

/// Cost of a feasible schedule; throws InvalidInput for an infeasible one.
inline CostBreakdown evaluate_cost(const Scenario& s, const Schedule& x) {
    auto violations = validate_schedule(s, x);
    if (!violations.empty()) throw InvalidInput("infeasible schedule: " + violations.front());
    CostBreakdown c;
    c.per_node.assign(s.num_nodes(), Rational(0));
    for (UserId u = 0; u < s.num_users; ++u)
        for (SlotIndex t = 0; t < s.num_slots; ++t) {
            NodeId n = x.at(u, t).node;
            c.per_node[n] += s.nodes[n].unit_cost;
        }
    for (NodeId n = 0; n < s.num_nodes(); ++n) {
        c.total += c.per_node[n];
        (s.is_cdn(n) ? c.cdn_total : c.peer_total) += c.per_node[n];
    }
    return c;
}

/// Cost without validation. For solvers that already guarantee feasibility.
inline Rational schedule_cost_unchecked(const Scenario& s, const Schedule& x) {
    Rational total;
    for (UserId u = 0; u < x.num_users(); ++u)
        for (SlotIndex t = 0; t < x.num_slots(); ++t) total += s.nodes[x.at(u, t).node].unit_cost;
    return total;
}

}  // namespace pcdn
