#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "pcdn/errors.hpp"

namespace pcdn {

enum class PathFinder {
    BellmanFord,  // queue-based Bellman-Ford over raw residual costs
    Potentials,   // Dijkstra over reduced costs with Johnson potentials
};

/// Residual graph for successive-shortest-path min-cost flow with integer costs.
///
/// Arcs are stored in pairs: arc 2k is the forward arc added by add_arc, arc
/// 2k+1 its residual reverse. Each augmentation pushes one unit.
class MinCostFlow {
public:
    using ArcId = std::uint32_t;
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    struct Arc {
        std::uint32_t to;
        std::int64_t residual;
        std::int64_t cost;
    };

    struct Path {
        std::vector<ArcId> arcs;  // source to sink
        std::int64_t cost = 0;
    };

    explicit MinCostFlow(std::size_t vertices) : out_(vertices) {}

    std::size_t num_vertices() const { return out_.size(); }
    std::size_t num_arcs() const { return arcs_.size() / 2; }

    ArcId add_arc(std::uint32_t tail, std::uint32_t head, std::int64_t capacity, std::int64_t cost) {
        auto id = static_cast<ArcId>(arcs_.size());
        arcs_.push_back({head, capacity, cost});
        arcs_.push_back({tail, 0, -cost});
        out_[tail].push_back(id);
        out_[head].push_back(id + 1);
        capacity_.push_back(capacity);
        return id / 2;
    }

    std::int64_t flow(ArcId forward) const { return capacity_[forward] - arcs_[2 * forward].residual; }
    const Arc& residual_arc(ArcId raw) const { return arcs_[raw]; }
    std::uint32_t tail_of(ArcId raw) const { return arcs_[raw ^ 1U].to; }

    /// Minimum-cost source-to-sink path in the current residual graph, or
    /// nullopt when the sink is unreachable. Throws NegativeCycle if the
    /// residual graph has one (impossible when flow was built by this class).
    std::optional<Path> shortest_path(std::uint32_t source, std::uint32_t sink, PathFinder finder) {
        return finder == PathFinder::BellmanFord ? bellman_ford(source, sink) : dijkstra(source, sink);
    }

    void augment(const Path& p, std::int64_t amount = 1) {
        for (ArcId a : p.arcs) {
            arcs_[a].residual -= amount;
            arcs_[a ^ 1U].residual += amount;
        }
    }

    struct Result {
        std::int64_t flow = 0;
        std::int64_t cost = 0;
        std::vector<std::int64_t> path_costs;  // one per augmentation
    };

    /// Successive shortest paths, one unit per augmentation, until `limit`
    /// units are routed or no augmenting path remains.
    Result solve(std::uint32_t source, std::uint32_t sink, std::int64_t limit, PathFinder finder) {
        Result r;
        while (r.flow < limit) {
            auto p = shortest_path(source, sink, finder);
            if (!p) break;
            augment(*p, 1);
            r.flow += 1;
            r.cost += p->cost;
            r.path_costs.push_back(p->cost);
        }
        return r;
    }

private:
    std::optional<Path> extract(std::uint32_t source, std::uint32_t sink, const std::vector<std::int64_t>& dist,
                                std::int64_t cost) const {
        if (dist[sink] >= kInf) return std::nullopt;
        Path p;
        p.cost = cost;
        for (std::uint32_t v = sink; v != source;) {
            ArcId a = parent_[v];
            p.arcs.push_back(a);
            v = tail_of(a);
        }
        std::reverse(p.arcs.begin(), p.arcs.end());
        return p;
    }

    std::optional<Path> bellman_ford(std::uint32_t source, std::uint32_t sink) {
        potentials_valid_ = false;
        auto dist = bellman_ford_distances(source);
        return extract(source, sink, dist, dist[sink]);
    }

    std::vector<std::int64_t> bellman_ford_distances(std::uint32_t source) {
        const std::size_t n = out_.size();
        std::vector<std::int64_t> dist(n, kInf);
        std::vector<char> queued(n, 0);
        std::vector<std::uint32_t> enqueued(n, 0);
        parent_.assign(n, 0);
        std::deque<std::uint32_t> queue;
        dist[source] = 0;
        queue.push_back(source);
        queued[source] = 1;
        while (!queue.empty()) {
            std::uint32_t u = queue.front();
            queue.pop_front();
            queued[u] = 0;
            for (ArcId a : out_[u]) {
                const Arc& arc = arcs_[a];
                if (arc.residual <= 0) continue;
                std::int64_t nd = dist[u] + arc.cost;
                if (nd < dist[arc.to]) {
                    dist[arc.to] = nd;
                    parent_[arc.to] = a;
                    if (!queued[arc.to]) {
                        if (++enqueued[arc.to] > n) throw NegativeCycle("negative cycle in residual graph");
                        queued[arc.to] = 1;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        return dist;
    }

    std::optional<Path> dijkstra(std::uint32_t source, std::uint32_t sink) {
        const std::size_t n = out_.size();
        if (!potentials_valid_) {
            potential_ = bellman_ford_distances(source);
            for (auto& h : potential_)
                if (h >= kInf) h = 0;
            potentials_valid_ = true;
        }
        std::vector<std::int64_t> dist(n, kInf);
        std::vector<char> done(n, 0);
        parent_.assign(n, 0);
        using Item = std::pair<std::int64_t, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[source] = 0;
        heap.emplace(0, source);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (done[u]) continue;
            done[u] = 1;
            for (ArcId a : out_[u]) {
                const Arc& arc = arcs_[a];
                if (arc.residual <= 0 || done[arc.to]) continue;
                std::int64_t reduced = arc.cost + potential_[u] - potential_[arc.to];
                if (reduced < 0) throw NegativeCycle("negative reduced cost; potentials are stale");
                std::int64_t nd = d + reduced;
                if (nd < dist[arc.to]) {
                    dist[arc.to] = nd;
                    parent_[arc.to] = a;
                    heap.emplace(nd, arc.to);
                }
            }
        }
        if (dist[sink] >= kInf) return std::nullopt;
        std::int64_t cost = dist[sink] - potential_[source] + potential_[sink];
        auto p = extract(source, sink, dist, cost);
        for (std::size_t v = 0; v < n; ++v)
            if (dist[v] < kInf) potential_[v] += dist[v];
        return p;
    }

    std::vector<Arc> arcs_;
    std::vector<std::int64_t> capacity_;
    std::vector<std::vector<ArcId>> out_;
    std::vector<ArcId> parent_;
    std::vector<std::int64_t> potential_;
    bool potentials_valid_ = false;
};

}  // namespace pcdn
