#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "pcdn/coloring.hpp"
#include "pcdn/flow.hpp"
#include "pcdn/model.hpp"

namespace pcdn {

/// Per-user playlists over virtual nodes, indexed [user][slot].
struct VirtualSchedule {
    std::vector<std::vector<PlaylistEntry>> playlists;
    std::vector<VirtualNode> virtual_nodes;
};

inline Schedule virtual_to_physical(const VirtualSchedule& xv) {
    const auto users = static_cast<std::uint32_t>(xv.playlists.size());
    const auto slots = users ? static_cast<std::uint32_t>(xv.playlists.front().size()) : 0U;
    Schedule x(users, slots);
    for (UserId u = 0; u < users; ++u)
        for (SlotIndex t = 0; t < slots; ++t) {
            const auto& e = xv.playlists[u][t];
            x.at(u, t) = {e.video, e.virtual_node == kUnassigned ? kUnassigned : xv.virtual_nodes[e.virtual_node].physical};
        }
    return x;
}

struct MmecOptions {
    PathFinder path_finder = PathFinder::BellmanFord;
    bool aggregate = false;  // merge replicas of a physical node during the flow phase
};

struct MmecDiagnostics {
    std::int64_t augmentations = 0;
    double flow_ms = 0;
    double coloring_ms = 0;
    double total_ms = 0;
    Rational flow_objective;
};

struct MmecResult {
    Schedule schedule;
    CostBreakdown cost;
    MmecDiagnostics diagnostics;
};

/// Flow phase, then coloring phase, then projection back to physical nodes.
/// The flow solution is frozen before coloring starts.
inline MmecResult run_mmec(const Scenario& s, const MmecOptions& opts = {}) {
    using Clock = std::chrono::steady_clock;
    auto ms = [](Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
    require_valid(s);

    auto t0 = Clock::now();
    const FlowNetwork network = build_network(s, opts.aggregate);
    const FlowSolution flow = solve_mcmf(network, {opts.path_finder});
    auto t1 = Clock::now();

    auto graph = build_multigraph(flow);
    auto coloring = kempe_color(graph, s.num_slots);
    VirtualSchedule xv{coloring_to_slots(graph, coloring, s.num_slots), flow.virtual_nodes};
    auto t2 = Clock::now();

    MmecResult r;
    r.schedule = virtual_to_physical(xv);
    auto violations = validate_schedule(s, r.schedule);
    if (!violations.empty()) throw InternalError("mapping", "reconstructed schedule infeasible: " + violations.front());
    r.cost = evaluate_cost(s, r.schedule);
    if (r.cost.total != flow.objective)
        throw InternalError("mapping", "schedule cost " + r.cost.total.str() + " differs from flow objective " +
                                           flow.objective.str());
    r.diagnostics.augmentations = flow.augmentations;
    r.diagnostics.flow_objective = flow.objective;
    r.diagnostics.flow_ms = ms(t1 - t0);
    r.diagnostics.coloring_ms = ms(t2 - t1);
    r.diagnostics.total_ms = ms(Clock::now() - t0);
    return r;
}

}  // namespace pcdn
