#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <vector>

#include "pcdn/min_cost_flow.hpp"
#include "pcdn/model.hpp"

namespace pcdn {

/// One unit-capacity replica of a physical node.
struct VirtualNode {
    NodeId physical;
    std::uint32_t replica;

    friend bool operator==(const VirtualNode&, const VirtualNode&) = default;
};

/// Expands every physical node n into capacity(n) virtual nodes, ordered by
/// (physical, replica). Storage and cost are looked up through `physical`.
inline std::vector<VirtualNode> split_nodes(const Scenario& s) {
    std::vector<VirtualNode> out;
    for (NodeId n = 0; n < s.num_nodes(); ++n)
        for (std::uint32_t r = 0; r < s.nodes[n].capacity; ++r) out.push_back({n, r});
    return out;
}

struct FlowVertex {
    enum class Kind { Source, Demand, Virtual, Aggregate, Sink };
    Kind kind;
    UserId user = kUnassigned;
    VideoId video = kUnassigned;
    std::uint32_t node = kUnassigned;  // virtual index for Virtual, physical id for Aggregate
};

struct FlowArc {
    std::uint32_t tail;
    std::uint32_t head;
    std::int64_t capacity;
    Rational cost;
};

/// Auxiliary network: Source -> Demand(u, v) -> node vertex -> Sink.
///
/// In the literal form every virtual node is its own vertex with a sink arc of
/// capacity T. In the aggregated form the replicas of one physical node share
/// a vertex whose sink arc has capacity capacity(n) * T; the solution is split
/// back across replicas afterwards.
struct FlowNetwork {
    std::vector<FlowVertex> vertices;
    std::vector<FlowArc> arcs;
    std::uint32_t source = 0;
    std::uint32_t sink = 0;
    std::int64_t required_flow = 0;
    bool aggregated = false;

    std::uint32_t num_users = 0;
    std::uint32_t num_slots = 0;
    std::vector<VirtualNode> virtual_nodes;
    std::vector<std::uint32_t> first_replica;  // physical id -> index of replica 0
    std::vector<Rational> node_cost;           // physical id -> unit cost
};

inline FlowNetwork build_network(const Scenario& s, bool aggregate = false) {
    require_valid(s);
    FlowNetwork g;
    g.aggregated = aggregate;
    g.num_users = s.num_users;
    g.num_slots = s.num_slots;
    g.virtual_nodes = split_nodes(s);
    g.first_replica.resize(s.num_nodes());
    for (std::uint32_t i = g.virtual_nodes.size(); i-- > 0;) g.first_replica[g.virtual_nodes[i].physical] = i;
    for (const auto& n : s.nodes) g.node_cost.push_back(n.unit_cost);

    g.vertices.push_back({FlowVertex::Kind::Source});
    g.source = 0;
    std::vector<std::uint32_t> demand_begin(s.num_users);
    for (UserId u = 0; u < s.num_users; ++u) {
        demand_begin[u] = static_cast<std::uint32_t>(g.vertices.size());
        for (VideoId v : s.recommendations[u]) g.vertices.push_back({FlowVertex::Kind::Demand, u, v});
    }
    // node_vertex[physical] is the first vertex of that node's block
    std::vector<std::uint32_t> node_vertex(s.num_nodes());
    for (NodeId n = 0; n < s.num_nodes(); ++n) {
        node_vertex[n] = static_cast<std::uint32_t>(g.vertices.size());
        if (aggregate) {
            g.vertices.push_back({FlowVertex::Kind::Aggregate, kUnassigned, kUnassigned, n});
        } else {
            for (std::uint32_t r = 0; r < s.nodes[n].capacity; ++r)
                g.vertices.push_back({FlowVertex::Kind::Virtual, kUnassigned, kUnassigned, g.first_replica[n] + r});
        }
    }
    g.sink = static_cast<std::uint32_t>(g.vertices.size());
    g.vertices.push_back({FlowVertex::Kind::Sink});

    // demand generation
    for (UserId u = 0; u < s.num_users; ++u)
        for (std::uint32_t i = 0; i < s.num_slots; ++i) g.arcs.push_back({g.source, demand_begin[u] + i, 1, Rational(0)});
    // video transmission
    auto holders = s.holders();
    for (UserId u = 0; u < s.num_users; ++u)
        for (std::uint32_t i = 0; i < s.num_slots; ++i) {
            VideoId v = s.recommendations[u][i];
            for (NodeId n : holders[v]) {
                std::uint32_t replicas = aggregate ? 1 : s.nodes[n].capacity;
                for (std::uint32_t r = 0; r < replicas; ++r)
                    g.arcs.push_back({demand_begin[u] + i, node_vertex[n] + r, 1, s.nodes[n].unit_cost});
            }
        }
    // node capacity
    for (NodeId n = 0; n < s.num_nodes(); ++n) {
        if (aggregate) {
            g.arcs.push_back({node_vertex[n], g.sink, std::int64_t(s.nodes[n].capacity) * s.num_slots, Rational(0)});
        } else {
            for (std::uint32_t r = 0; r < s.nodes[n].capacity; ++r)
                g.arcs.push_back({node_vertex[n] + r, g.sink, std::int64_t(s.num_slots), Rational(0)});
        }
    }
    g.required_flow = std::int64_t(s.num_users) * s.num_slots;
    return g;
}

/// Common denominator of all arc costs, so the solver can work in integers.
inline std::int64_t cost_scale(const FlowNetwork& g) {
    std::int64_t scale = 1;
    for (const auto& a : g.arcs) {
        scale = std::lcm(scale, a.cost.den());
        if (scale > (std::int64_t(1) << 40)) throw std::overflow_error("cost denominators too large to scale");
    }
    return scale;
}

inline std::int64_t scaled_cost(const Rational& c, std::int64_t scale) {
    __int128 v = static_cast<__int128>(c.num()) * (scale / c.den());
    if (v > (std::int64_t(1) << 52) || v < -(std::int64_t(1) << 52)) throw std::overflow_error("scaled cost too large");
    return static_cast<std::int64_t>(v);
}

/// Residual engine loaded with the network's arcs (same arc order).
inline MinCostFlow make_residual(const FlowNetwork& g, std::int64_t scale) {
    MinCostFlow mcf(g.vertices.size());
    for (const auto& a : g.arcs) mcf.add_arc(a.tail, a.head, a.capacity, scaled_cost(a.cost, scale));
    return mcf;
}

struct FlowUnit {
    UserId user;
    VideoId video;
    std::uint32_t virtual_node;  // index into FlowNetwork::virtual_nodes

    friend bool operator==(const FlowUnit&, const FlowUnit&) = default;
};

struct FlowSolution {
    std::vector<FlowUnit> units;  // ordered by user, then recommendation order
    Rational objective;
    std::uint32_t num_users = 0;
    std::uint32_t num_slots = 0;
    std::vector<VirtualNode> virtual_nodes;

    std::vector<std::int64_t> arc_flow;       // per FlowNetwork arc
    std::vector<Rational> augmentation_costs;  // per augmentation, in order
    std::int64_t augmentations = 0;
};

struct FlowOptions {
    PathFinder path_finder = PathFinder::BellmanFord;
};

/// Successive shortest paths until U*T units are routed. Throws InfeasibleFlow
/// when the network cannot carry the required flow.
inline FlowSolution solve_mcmf(const FlowNetwork& g, const FlowOptions& opts = {}) {
    const std::int64_t scale = cost_scale(g);
    MinCostFlow mcf = make_residual(g, scale);
    auto result = mcf.solve(g.source, g.sink, g.required_flow, opts.path_finder);
    if (result.flow < g.required_flow)
        throw InfeasibleFlow("routed " + std::to_string(result.flow) + " of " + std::to_string(g.required_flow) +
                             " required units");

    FlowSolution sol;
    sol.num_users = g.num_users;
    sol.num_slots = g.num_slots;
    sol.virtual_nodes = g.virtual_nodes;
    sol.augmentations = result.flow;
    sol.objective = Rational(result.cost, scale);
    for (auto c : result.path_costs) sol.augmentation_costs.push_back(Rational(c, scale));
    sol.arc_flow.resize(g.arcs.size());
    for (std::uint32_t a = 0; a < g.arcs.size(); ++a) sol.arc_flow[a] = mcf.flow(a);

    // Read units off the transmission arcs, in demand-vertex order.
    std::vector<std::uint32_t> next_replica(g.first_replica.size(), 0);
    for (std::uint32_t a = 0; a < g.arcs.size(); ++a) {
        const auto& arc = g.arcs[a];
        const auto& tail = g.vertices[arc.tail];
        if (tail.kind != FlowVertex::Kind::Demand || sol.arc_flow[a] == 0) continue;
        const auto& head = g.vertices[arc.head];
        std::uint32_t vn;
        if (head.kind == FlowVertex::Kind::Aggregate) {
            NodeId n = head.node;
            std::uint32_t replicas = (n + 1 < g.first_replica.size() ? g.first_replica[n + 1] : g.virtual_nodes.size()) -
                                     g.first_replica[n];
            vn = g.first_replica[n] + next_replica[n]++ % replicas;
        } else {
            vn = head.node;
        }
        sol.units.push_back({tail.user, tail.video, vn});
    }
    return sol;
}

/// Writes the network in DIMACS min-cost-flow format (1-based vertex ids,
/// costs multiplied by the common denominator given on a comment line).
inline void write_dimacs(std::ostream& os, const FlowNetwork& g) {
    const std::int64_t scale = cost_scale(g);
    os << "c pcdn auxiliary flow network\n";
    os << "c cost scale " << scale << '\n';
    os << "p min " << g.vertices.size() << ' ' << g.arcs.size() << '\n';
    os << "n " << g.source + 1 << ' ' << g.required_flow << '\n';
    os << "n " << g.sink + 1 << ' ' << -g.required_flow << '\n';
    for (const auto& a : g.arcs)
        os << "a " << a.tail + 1 << ' ' << a.head + 1 << " 0 " << a.capacity << ' ' << scaled_cost(a.cost, scale) << '\n';
}

}  // namespace pcdn
