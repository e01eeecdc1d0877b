#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pcdn/min_cost_flow.hpp"
#include "pcdn/model.hpp"
#include "pcdn/rng.hpp"

namespace pcdn {

/// Playback orders, [user][slot] -> video.
using PlaybackOrders = std::vector<std::vector<VideoId>>;

/// Uniform random permutation of every recommendation set. RORS, ROOS and SAO
/// all draw their orders here, so runs sharing a seed share orders.
inline PlaybackOrders random_orders(const Scenario& s, std::uint64_t seed) {
    Rng rng = Rng(seed).split("order");
    PlaybackOrders orders = s.recommendations;
    for (auto& o : orders) std::shuffle(o.begin(), o.end(), rng);
    return orders;
}

/// Slot by slot, users in random order; each request goes to a uniformly
/// random peer that caches the video and still has room, else to the CDN.
inline Schedule assign_random(const Scenario& s, const PlaybackOrders& orders, Rng& rng) {
    Schedule x(s.num_users, s.num_slots);
    auto holders = s.holders();
    std::vector<std::uint32_t> load(s.num_nodes());
    std::vector<UserId> users(s.num_users);
    std::vector<NodeId> candidates;
    for (SlotIndex t = 0; t < s.num_slots; ++t) {
        std::fill(load.begin(), load.end(), 0);
        std::iota(users.begin(), users.end(), 0);
        std::shuffle(users.begin(), users.end(), rng);
        for (UserId u : users) {
            VideoId v = orders[u][t];
            candidates.clear();
            for (NodeId n : holders[v])
                if (!s.is_cdn(n) && load[n] < s.nodes[n].capacity) candidates.push_back(n);
            NodeId pick = candidates.empty() ? s.cdn_id() : candidates[rng.below(candidates.size())];
            ++load[pick];
            x.at(u, t) = {v, pick};
        }
    }
    return x;
}

/// Cheapest node with room that caches `v`, lowest id on ties. The CDN always
/// qualifies in a valid scenario.
inline NodeId cheapest_available(const Scenario& s, const std::vector<NodeId>& holders_of_v,
                                 const std::uint32_t* slot_load) {
    NodeId best = kUnassigned;
    for (NodeId n : holders_of_v) {
        if (slot_load[n] >= s.nodes[n].capacity) continue;
        if (best == kUnassigned || s.nodes[n].unit_cost < s.nodes[best].unit_cost) best = n;
    }
    return best;
}

/// Greedy assignment for fixed orders: users in index order, each request to
/// the cheapest available node.
inline Schedule assign_greedy(const Scenario& s, const PlaybackOrders& orders) {
    Schedule x(s.num_users, s.num_slots);
    auto holders = s.holders();
    std::vector<std::uint32_t> load(s.num_nodes());
    for (SlotIndex t = 0; t < s.num_slots; ++t) {
        std::fill(load.begin(), load.end(), 0);
        for (UserId u = 0; u < s.num_users; ++u) {
            VideoId v = orders[u][t];
            NodeId n = cheapest_available(s, holders[v], load.data());
            ++load[n];
            x.at(u, t) = {v, n};
        }
    }
    return x;
}

/// Cost-optimal node assignment for fixed orders. Slots do not interact once
/// orders are fixed, so each slot is an independent min-cost assignment of
/// requests to nodes with capacity d_n.
inline Schedule assign_optimal(const Scenario& s, const PlaybackOrders& orders) {
    Schedule x(s.num_users, s.num_slots);
    auto holders = s.holders();
    std::int64_t scale = 1;
    for (const auto& n : s.nodes) scale = std::lcm(scale, n.unit_cost.den());
    std::vector<std::int64_t> cost(s.num_nodes());
    for (NodeId n = 0; n < s.num_nodes(); ++n) cost[n] = s.nodes[n].unit_cost.num() * (scale / s.nodes[n].unit_cost.den());

    const std::uint32_t U = s.num_users, N = s.num_nodes();
    const std::uint32_t source = 0, sink = 1 + U + N;
    for (SlotIndex t = 0; t < s.num_slots; ++t) {
        MinCostFlow mcf(2 + U + N);
        std::vector<std::vector<std::pair<MinCostFlow::ArcId, NodeId>>> request_arcs(U);
        for (UserId u = 0; u < U; ++u) {
            mcf.add_arc(source, 1 + u, 1, 0);
            for (NodeId n : holders[orders[u][t]]) request_arcs[u].emplace_back(mcf.add_arc(1 + u, 1 + U + n, 1, cost[n]), n);
        }
        for (NodeId n = 0; n < N; ++n) mcf.add_arc(1 + U + n, sink, s.nodes[n].capacity, 0);
        auto r = mcf.solve(source, sink, U, PathFinder::Potentials);
        if (r.flow < U) throw InternalError("roos", "slot " + std::to_string(t) + " assignment infeasible");
        for (UserId u = 0; u < U; ++u)
            for (auto [arc, n] : request_arcs[u])
                if (mcf.flow(arc) == 1) x.at(u, t) = {orders[u][t], n};
    }
    return x;
}

/// RORS: random order, random feasible node.
inline Schedule rors(const Scenario& s, std::uint64_t seed) {
    require_valid(s);
    Rng rng = Rng(seed).split("rors-assign");
    return assign_random(s, random_orders(s, seed), rng);
}

/// ROOS: random order, optimal node assignment for that order.
inline Schedule roos(const Scenario& s, std::uint64_t seed) {
    require_valid(s);
    return assign_optimal(s, random_orders(s, seed));
}

struct SaoParams {
    double t_init = 1000.0;
    double gamma = 0.95;
    std::uint32_t max_iters = 1000;
    std::uint32_t inner_moves = 20;
};

struct SaoResult {
    Schedule schedule;
    std::vector<Rational> best_trace;  // best cost after each temperature step
    std::uint64_t accepted = 0;
};

/// Simulated annealing over (order, assignment), starting from random orders
/// with greedy cheapest-node assignment.
///
/// A move picks a user and two slots, swaps the videos there and re-places the
/// two requests greedily. Infeasible states are never visited since the CDN
/// always has room.
inline SaoResult sao_detailed(const Scenario& s, std::uint64_t seed, const SaoParams& p = {}) {
    require_valid(s);
    const std::uint32_t U = s.num_users, T = s.num_slots, N = s.num_nodes();
    Schedule x = assign_greedy(s, random_orders(s, seed));
    auto holders = s.holders();
    std::vector<std::uint32_t> load(std::size_t(T) * N, 0);  // [slot][node]
    for (UserId u = 0; u < U; ++u)
        for (SlotIndex t = 0; t < T; ++t) ++load[std::size_t(t) * N + x.at(u, t).node];

    Rational current = schedule_cost_unchecked(s, x);
    Rational best_cost = current;
    Schedule best = x;

    SaoResult out;
    Rng rng = Rng(seed).split("sao");
    double temperature = p.t_init;
    for (std::uint32_t iter = 0; iter < p.max_iters; ++iter) {
        for (std::uint32_t k = 0; k < p.inner_moves && T >= 2 && U >= 1; ++k) {
            UserId u = static_cast<UserId>(rng.below(U));
            SlotIndex t1 = static_cast<SlotIndex>(rng.below(T));
            SlotIndex t2 = static_cast<SlotIndex>(rng.below(T - 1));
            if (t2 >= t1) ++t2;

            Assignment old1 = x.at(u, t1), old2 = x.at(u, t2);
            std::uint32_t* load1 = &load[std::size_t(t1) * N];
            std::uint32_t* load2 = &load[std::size_t(t2) * N];
            --load1[old1.node];
            --load2[old2.node];
            NodeId n1 = cheapest_available(s, holders[old2.video], load1);
            ++load1[n1];
            NodeId n2 = cheapest_available(s, holders[old1.video], load2);
            ++load2[n2];

            Rational delta = s.nodes[n1].unit_cost + s.nodes[n2].unit_cost - s.nodes[old1.node].unit_cost -
                             s.nodes[old2.node].unit_cost;
            bool accept = delta <= Rational(0) || rng.uniform01() < std::exp(-delta.to_double() / temperature);
            if (accept) {
                x.at(u, t1) = {old2.video, n1};
                x.at(u, t2) = {old1.video, n2};
                current += delta;
                ++out.accepted;
                if (current < best_cost) {
                    best_cost = current;
                    best = x;
                }
            } else {
                --load1[n1];
                --load2[n2];
                ++load1[old1.node];
                ++load2[old2.node];
            }
        }
        temperature *= p.gamma;
        out.best_trace.push_back(best_cost);
    }
    out.schedule = std::move(best);
    return out;
}

inline Schedule sao(const Scenario& s, std::uint64_t seed, const SaoParams& p = {}) {
    return sao_detailed(s, seed, p).schedule;
}

}  // namespace pcdn
