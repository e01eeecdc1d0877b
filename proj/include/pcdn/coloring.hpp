#pragma once

#include <cstdint>
#include <vector>

#include "pcdn/errors.hpp"
#include "pcdn/flow.hpp"

namespace pcdn {

/// Users on the left, virtual nodes on the right. Parallel edges are allowed
/// and told apart by their video.
struct BipartiteMultigraph {
    struct Edge {
        UserId user;
        std::uint32_t right;
        VideoId video;
    };

    std::uint32_t num_left = 0;
    std::uint32_t num_right = 0;
    std::vector<Edge> edges;

    std::uint32_t max_degree() const {
        std::vector<std::uint32_t> dl(num_left, 0), dr(num_right, 0);
        std::uint32_t best = 0;
        for (const auto& e : edges) best = std::max({best, ++dl[e.user], ++dr[e.right]});
        return best;
    }
};

/// One edge per flow unit. Rejects solutions where a user does not have
/// exactly T units or a virtual node carries more than T.
inline BipartiteMultigraph build_multigraph(const FlowSolution& f) {
    BipartiteMultigraph g;
    g.num_left = f.num_users;
    g.num_right = static_cast<std::uint32_t>(f.virtual_nodes.size());
    std::vector<std::uint32_t> dl(g.num_left, 0), dr(g.num_right, 0);
    for (const auto& unit : f.units) {
        if (unit.user >= g.num_left || unit.virtual_node >= g.num_right)
            throw InvalidInput("flow unit references unknown vertex");
        if (++dr[unit.virtual_node] > f.num_slots)
            throw InvalidInput("virtual node " + std::to_string(unit.virtual_node) + " carries more than T units");
        ++dl[unit.user];
        g.edges.push_back({unit.user, unit.virtual_node, unit.video});
    }
    for (UserId u = 0; u < g.num_left; ++u)
        if (dl[u] != f.num_slots) throw InvalidInput("user " + std::to_string(u) + " does not have exactly T units");
    return g;
}

struct EdgeColoring {
    std::vector<SlotIndex> color;  // per edge, in 0..T-1
};

/// Proper edge coloring with `colors` colors by Kempe-chain recoloring.
///
/// Edges are processed in insertion order. An edge takes the smallest color
/// free at both ends; otherwise, with a the smallest free color at the user and
/// b the smallest free at the node, the a/b chain starting at the node is
/// swapped, which frees a there without touching the user.
inline EdgeColoring kempe_color(const BipartiteMultigraph& g, std::uint32_t colors) {
    constexpr std::uint32_t kNone = kUnassigned;
    if (g.max_degree() > colors)
        throw DegreeBoundViolated("max degree " + std::to_string(g.max_degree()) + " exceeds " + std::to_string(colors));

    const std::size_t T = colors;
    std::vector<std::uint32_t> at_left(std::size_t(g.num_left) * T, kNone);
    std::vector<std::uint32_t> at_right(std::size_t(g.num_right) * T, kNone);
    auto L = [&](std::uint32_t u, std::uint32_t c) -> std::uint32_t& { return at_left[u * T + c]; };
    auto R = [&](std::uint32_t w, std::uint32_t c) -> std::uint32_t& { return at_right[w * T + c]; };

    EdgeColoring out;
    out.color.assign(g.edges.size(), kNone);
    std::vector<std::uint32_t> chain;

    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        const auto u = g.edges[e].user;
        const auto w = g.edges[e].right;

        std::uint32_t common = kNone, a = kNone, b = kNone;
        for (std::uint32_t c = 0; c < T; ++c) {
            bool free_u = L(u, c) == kNone, free_w = R(w, c) == kNone;
            if (free_u && free_w) {
                common = c;
                break;
            }
            if (free_u && a == kNone) a = c;
            if (free_w && b == kNone) b = c;
        }
        if (common == kNone) {
            // a is busy at w and b is busy at u, so the chain is nonempty
            chain.clear();
            std::uint32_t vertex = w;
            bool on_right = true;
            std::uint32_t want = a;
            while (true) {
                std::uint32_t next = on_right ? R(vertex, want) : L(vertex, want);
                if (next == kNone) break;
                chain.push_back(next);
                const auto& ne = g.edges[next];
                vertex = on_right ? ne.user : ne.right;
                on_right = !on_right;
                if (!on_right && vertex == u) throw InternalError("coloring", "Kempe chain returned to its start user");
                want = want == a ? b : a;
            }
            for (auto id : chain) {
                const auto& ce = g.edges[id];
                L(ce.user, out.color[id]) = kNone;
                R(ce.right, out.color[id]) = kNone;
            }
            for (auto id : chain) {
                const auto& ce = g.edges[id];
                out.color[id] = out.color[id] == a ? b : a;
                L(ce.user, out.color[id]) = id;
                R(ce.right, out.color[id]) = id;
            }
            common = a;
        }
        out.color[e] = common;
        L(u, common) = e;
        R(w, common) = e;
    }
    return out;
}

struct PlaylistEntry {
    VideoId video = kUnassigned;
    std::uint32_t virtual_node = kUnassigned;
};

/// Maps color t to slot t: result[u][t] is what user u fetches in slot t.
inline std::vector<std::vector<PlaylistEntry>> coloring_to_slots(const BipartiteMultigraph& g, const EdgeColoring& c,
                                                                 std::uint32_t slots) {
    std::vector<std::vector<PlaylistEntry>> out(g.num_left, std::vector<PlaylistEntry>(slots));
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        auto t = c.color[e];
        if (t >= slots) throw InvalidInput("color out of range");
        auto& cell = out[g.edges[e].user][t];
        if (cell.video != kUnassigned) throw InvalidInput("coloring is not proper at a user");
        cell = {g.edges[e].video, g.edges[e].right};
    }
    return out;
}

}  // namespace pcdn
