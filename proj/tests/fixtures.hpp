#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pcdn/coloring.hpp"
#include "pcdn/model.hpp"
#include "pcdn/rng.hpp"

namespace pcdn::fixtures {

// Two users both recommended {v1, v2, v3} (ids 0, 1, 2). Peer n1 caches
// {v1, v2}, peer n2 caches {v2, v3}, each serving one user per slot; the CDN
// (node 2) costs 5.
inline Scenario two_user_example() {
    Scenario s;
    s.num_users = 2;
    s.num_videos = 3;
    s.num_slots = 3;
    s.recommendations = {{0, 1, 2}, {0, 1, 2}};
    s.nodes.emplace_back(std::vector<VideoId>{0, 1}, Rational(1), 1);
    s.nodes.emplace_back(std::vector<VideoId>{1, 2}, Rational(1), 1);
    s.nodes.emplace_back(std::vector<VideoId>{0, 1, 2}, Rational(5), 2);
    return s;
}

inline Schedule make_schedule(const std::vector<std::vector<std::pair<VideoId, NodeId>>>& rows) {
    Schedule x(static_cast<std::uint32_t>(rows.size()), rows.empty() ? 0 : static_cast<std::uint32_t>(rows[0].size()));
    for (UserId u = 0; u < rows.size(); ++u)
        for (SlotIndex t = 0; t < rows[u].size(); ++t) x.at(u, t) = {rows[u][t].first, rows[u][t].second};
    return x;
}

/// Feasibility by materializing x[u][v][n][t] and checking each constraint
/// family literally. Deliberately naive.
inline bool naive_feasible(const Scenario& s, const Schedule& sched) {
    const std::size_t U = s.num_users, V = s.num_videos, N = s.num_nodes(), T = s.num_slots;
    std::vector<int> x(U * V * N * T, 0);
    auto X = [&](std::size_t u, std::size_t v, std::size_t n, std::size_t t) -> int& { return x[((u * V + v) * N + n) * T + t]; };
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t t = 0; t < T; ++t) {
            auto a = sched.at(u, t);
            if (a.video >= V || a.node >= N) return false;
            X(u, a.video, a.node, t) += 1;
        }
    auto in = [](const std::vector<VideoId>& set, std::size_t v) { return std::find(set.begin(), set.end(), v) != set.end(); };
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t v = 0; v < V; ++v)
            for (std::size_t n = 0; n < N; ++n)
                for (std::size_t t = 0; t < T; ++t) {
                    if (X(u, v, n, t) > 1) return false;
                    if (X(u, v, n, t) > (in(s.recommendations[u], v) ? 1 : 0)) return false;
                    if (X(u, v, n, t) > (in(s.nodes[n].storage, v) ? 1 : 0)) return false;
                }
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t t = 0; t < T; ++t) {
            int sum = 0;
            for (std::size_t v = 0; v < V; ++v)
                for (std::size_t n = 0; n < N; ++n) sum += X(u, v, n, t);
            if (sum != 1) return false;
        }
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t v = 0; v < V; ++v) {
            int sum = 0;
            for (std::size_t n = 0; n < N; ++n)
                for (std::size_t t = 0; t < T; ++t) sum += X(u, v, n, t);
            if (sum != (in(s.recommendations[u], v) ? 1 : 0)) return false;
        }
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t t = 0; t < T; ++t) {
            int sum = 0;
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t v = 0; v < V; ++v) sum += X(u, v, n, t);
            if (sum > static_cast<int>(s.nodes[n].capacity)) return false;
        }
    return true;
}

/// Pairwise properness check, independent of the colorer's bookkeeping.
inline bool is_proper_coloring(const BipartiteMultigraph& g, const EdgeColoring& c, std::uint32_t colors) {
    if (c.color.size() != g.edges.size()) return false;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (c.color[i] >= colors) return false;
        for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
            bool adjacent = g.edges[i].user == g.edges[j].user || g.edges[i].right == g.edges[j].right;
            if (adjacent && c.color[i] == c.color[j]) return false;
        }
    }
    return true;
}

/// Random bipartite multigraph with every degree at most `colors`: repeatedly
/// add an edge between random endpoints that both still have spare degree.
inline BipartiteMultigraph random_bounded_multigraph(Rng& rng, std::uint32_t left, std::uint32_t right, std::uint32_t colors,
                                                     std::uint32_t attempts) {
    BipartiteMultigraph g;
    g.num_left = left;
    g.num_right = right;
    std::vector<std::uint32_t> dl(left, 0), dr(right, 0);
    for (std::uint32_t i = 0; i < attempts; ++i) {
        auto u = static_cast<std::uint32_t>(rng.below(left));
        auto w = static_cast<std::uint32_t>(rng.below(right));
        if (dl[u] >= colors || dr[w] >= colors) continue;
        ++dl[u];
        ++dr[w];
        g.edges.push_back({u, w, i});
    }
    return g;
}

/// Uniformly random orders with a random feasible assignment, CDN fallback.
inline Schedule random_feasible_schedule(const Scenario& s, Rng& rng) {
    Schedule x(s.num_users, s.num_slots);
    std::vector<std::vector<VideoId>> orders = s.recommendations;
    for (auto& o : orders) std::shuffle(o.begin(), o.end(), rng);
    for (SlotIndex t = 0; t < s.num_slots; ++t) {
        std::vector<std::uint32_t> load(s.num_nodes(), 0);
        for (UserId u = 0; u < s.num_users; ++u) {
            std::vector<NodeId> options;
            for (NodeId n = 0; n < s.num_nodes(); ++n)
                if (s.nodes[n].stores(orders[u][t]) && load[n] < s.nodes[n].capacity) options.push_back(n);
            NodeId n = options[rng.below(options.size())];
            ++load[n];
            x.at(u, t) = {orders[u][t], n};
        }
    }
    return x;
}

}  // namespace pcdn::fixtures
