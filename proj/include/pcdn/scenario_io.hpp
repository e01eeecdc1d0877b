#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pcdn/model.hpp"

namespace pcdn {

// Scenario text format:
//
//   U V T N
//   cost capacity k v1 ... vk        (N + 1 node lines, CDN last)
//   v1 ... vT                        (U recommendation lines)
//
// Costs are written as integers or "p/q".

inline void write_scenario(std::ostream& os, const Scenario& s) {
    os << s.num_users << ' ' << s.num_videos << ' ' << s.num_slots << ' ' << s.num_peers() << '\n';
    for (const auto& n : s.nodes) {
        os << n.unit_cost << ' ' << n.capacity << ' ' << n.storage.size();
        for (VideoId v : n.storage) os << ' ' << v;
        os << '\n';
    }
    for (const auto& r : s.recommendations) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
        os << '\n';
    }
}

inline std::string to_text(const Scenario& s) {
    std::ostringstream os;
    write_scenario(os, s);
    return os.str();
}

inline Scenario read_scenario(std::istream& is) {
    auto fail = [](const std::string& what) -> void { throw InvalidInput("scenario parse error: " + what); };
    Scenario s;
    std::uint32_t peers = 0;
    if (!(is >> s.num_users >> s.num_videos >> s.num_slots >> peers)) fail("header");
    s.nodes.resize(std::size_t(peers) + 1);
    for (std::uint32_t n = 0; n <= peers; ++n) {
        std::string cost;
        std::uint32_t cap = 0;
        std::size_t k = 0;
        if (!(is >> cost >> cap >> k)) fail("node line " + std::to_string(n));
        std::vector<VideoId> videos(k);
        for (auto& v : videos)
            if (!(is >> v)) fail("node line " + std::to_string(n));
        s.nodes[n] = NodeSpec(std::move(videos), Rational::parse(cost), cap);
    }
    s.recommendations.assign(s.num_users, std::vector<VideoId>(s.num_slots));
    for (UserId u = 0; u < s.num_users; ++u)
        for (auto& v : s.recommendations[u])
            if (!(is >> v)) fail("recommendation line " + std::to_string(u));
    return s;
}

inline Scenario scenario_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_scenario(is);
}

/// One line per (user, slot): "user slot video node", preceded by "U T".
inline void write_schedule(std::ostream& os, const Schedule& x) {
    os << x.num_users() << ' ' << x.num_slots() << '\n';
    for (UserId u = 0; u < x.num_users(); ++u)
        for (SlotIndex t = 0; t < x.num_slots(); ++t)
            os << u << ' ' << t << ' ' << x.at(u, t).video << ' ' << x.at(u, t).node << '\n';
}

inline Schedule read_schedule(std::istream& is) {
    std::uint32_t users = 0, slots = 0;
    if (!(is >> users >> slots)) throw InvalidInput("schedule parse error: header");
    Schedule x(users, slots);
    for (std::size_t i = 0; i < std::size_t(users) * slots; ++i) {
        UserId u;
        SlotIndex t;
        Assignment a;
        if (!(is >> u >> t >> a.video >> a.node) || u >= users || t >= slots)
            throw InvalidInput("schedule parse error: line " + std::to_string(i + 2));
        x.at(u, t) = a;
    }
    return x;
}

}  // namespace pcdn
