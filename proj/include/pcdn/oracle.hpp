#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pcdn/errors.hpp"
#include "pcdn/model.hpp"

// Exhaustive search over every playback ordering and every per-slot node
// assignment. Shares no code with the flow or coloring phases; it is the
// ground truth the solver is checked against on tiny instances.

namespace pcdn::oracle {

inline constexpr double kSearchBudget = 1e7;

struct SlotAssignment {
    Rational cost;
    std::vector<NodeId> nodes;  // per user; empty when infeasible
};

/// Cheapest assignment of one slot's requests (videos[u] for user u) to
/// nodes, by enumerating every node choice per user.
inline SlotAssignment best_slot_assignment(const Scenario& s, const std::vector<VideoId>& videos) {
    const auto U = static_cast<std::uint32_t>(videos.size());
    std::vector<std::uint32_t> load(s.num_nodes(), 0);
    std::vector<NodeId> pick(U), best_pick;
    Rational best_cost;
    bool found = false;

    auto recurse = [&](auto&& self, std::uint32_t u, Rational partial) -> void {
        if (found && partial >= best_cost) return;
        if (u == U) {
            best_cost = partial;
            best_pick = pick;
            found = true;
            return;
        }
        for (NodeId n = 0; n < s.num_nodes(); ++n) {
            if (load[n] >= s.nodes[n].capacity || !s.nodes[n].stores(videos[u])) continue;
            ++load[n];
            pick[u] = n;
            self(self, u + 1, partial + s.nodes[n].unit_cost);
            --load[n];
        }
    };
    recurse(recurse, 0, Rational(0));
    return {best_cost, found ? best_pick : std::vector<NodeId>{}};
}

struct OracleResult {
    Rational cost;
    Schedule witness;
    std::uint64_t orderings_examined = 0;
};

inline double search_size(const Scenario& s) {
    double fact = 1;
    for (std::uint32_t i = 2; i <= s.num_slots; ++i) fact *= i;
    double orderings = 1, per_slot = 1;
    for (std::uint32_t u = 0; u < s.num_users; ++u) {
        orderings *= fact;
        per_slot *= s.num_nodes();
    }
    return orderings * std::max(1U, s.num_slots) * per_slot;
}

/// Global optimum by enumeration. Throws InstanceTooLarge beyond the budget.
inline OracleResult exhaustive_optimal(const Scenario& s) {
    require_valid(s);
    if (search_size(s) > kSearchBudget) throw InstanceTooLarge("oracle search space exceeds budget");
    const auto U = s.num_users;
    const auto T = s.num_slots;
    const Rational floor_per_download = s.min_unit_cost();
    const Rational lower_bound = floor_per_download * Rational(std::int64_t(U) * T);

    std::vector<std::vector<VideoId>> orders = s.recommendations;
    for (auto& o : orders) std::sort(o.begin(), o.end());

    OracleResult best;
    bool found = false;
    std::vector<std::vector<NodeId>> best_nodes;
    std::vector<std::vector<VideoId>> best_orders;
    std::vector<VideoId> slot_videos(U);

    auto evaluate = [&] {
        ++best.orderings_examined;
        Rational total;
        std::vector<std::vector<NodeId>> nodes(T);
        for (SlotIndex t = 0; t < T; ++t) {
            // remaining slots cost at least the floor each
            if (found && total + floor_per_download * Rational(std::int64_t(U) * (T - t)) >= best.cost) return;
            for (UserId u = 0; u < U; ++u) slot_videos[u] = orders[u][t];
            auto a = best_slot_assignment(s, slot_videos);
            if (a.nodes.empty() && U > 0) return;
            total += a.cost;
            nodes[t] = std::move(a.nodes);
        }
        if (!found || total < best.cost) {
            best.cost = total;
            best_nodes = std::move(nodes);
            best_orders = orders;
            found = true;
        }
    };

    auto recurse = [&](auto&& self, std::uint32_t u) -> bool {
        if (u == U) {
            evaluate();
            return found && best.cost == lower_bound;
        }
        std::sort(orders[u].begin(), orders[u].end());
        do {
            if (self(self, u + 1)) return true;
        } while (std::next_permutation(orders[u].begin(), orders[u].end()));
        return false;
    };
    recurse(recurse, 0);
    if (!found) throw InternalError("oracle", "no feasible schedule found");

    best.witness = Schedule(U, T);
    for (UserId u = 0; u < U; ++u)
        for (SlotIndex t = 0; t < T; ++t) best.witness.at(u, t) = {best_orders[u][t], best_nodes[t][u]};
    return best;
}

}  // namespace pcdn::oracle
