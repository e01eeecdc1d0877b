#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "pcdn/model.hpp"
#include "pcdn/scenario_io.hpp"
#include "pcdn/scengen.hpp"

using namespace pcdn;
using pcdn::fixtures::two_user_example;
using pcdn::fixtures::make_schedule;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

// u1 = <v1, v2, v3>, u2 = <v2, v3, v1>, all on peers.
Schedule optimal_witness() { return make_schedule({{{0, 0}, {1, 0}, {2, 1}}, {{1, 1}, {2, 1}, {0, 0}}}); }

}  // namespace

TEST(ValidateScenario, DefaultInstanceIsValid) {
    EXPECT_TRUE(validate_scenario(two_user_example()).empty());
    EXPECT_TRUE(validate_scenario(generate_scenario(GenConfig{})).empty());
}

TEST(ValidateScenario, CdnMissingVideo) {
    Scenario s;
    s.num_users = 1;
    s.num_videos = 5;
    s.num_slots = 2;
    s.recommendations = {{0, 1}};
    s.nodes.emplace_back(std::vector<VideoId>{0, 1, 2, 4}, Rational(5), 1);
    EXPECT_EQ(validate_scenario(s), std::vector<std::string>{"cdn-missing-video:3"});
}

TEST(ValidateScenario, RecommendationSetTooSmall) {
    auto s = two_user_example();
    s.recommendations[0].pop_back();
    EXPECT_EQ(validate_scenario(s), std::vector<std::string>{"recset-size:user 0"});
}

TEST(ValidateScenario, ReportsCapacityRangeAndDuplicates) {
    auto s = two_user_example();
    s.nodes.back().capacity = 1;
    s.recommendations[1] = {0, 0, 7};
    auto v = validate_scenario(s);
    EXPECT_TRUE(contains(v, "recset-duplicate:user 1"));
    EXPECT_TRUE(contains(v, "cdn-capacity:1"));
    EXPECT_TRUE(contains(v, "recommended-range:user 1,video 7"));
}

TEST(ValidateSchedule, OptimalWitnessIsFeasible) {
    auto s = two_user_example();
    EXPECT_TRUE(validate_schedule(s, optimal_witness()).empty());
    EXPECT_TRUE(fixtures::naive_feasible(s, optimal_witness()));
}

TEST(ValidateSchedule, CapacityCollision) {
    auto s = two_user_example();
    // both users fetch v2 from n1 at slot 1
    auto x = make_schedule({{{0, 2}, {1, 0}, {2, 1}}, {{0, 2}, {1, 0}, {2, 2}}});
    EXPECT_EQ(validate_schedule(s, x), std::vector<std::string>{"capacity:node 0,slot 1"});
}

TEST(ValidateSchedule, VideoWatchedTwice) {
    auto s = two_user_example();
    auto x = make_schedule({{{1, 0}, {1, 1}, {2, 2}}, {{1, 1}, {2, 1}, {0, 0}}});
    auto v = validate_schedule(s, x);
    EXPECT_TRUE(contains(v, "once:user 0,video 1"));
    EXPECT_TRUE(contains(v, "once:user 0,video 0"));  // the displaced video is now missing
}

TEST(ValidateSchedule, StorageAndRecommendationViolations) {
    auto s = two_user_example();
    auto x = optimal_witness();
    x.at(0, 2).node = 0;  // n1 does not cache v3
    // u2 already uses n1 at slot 2, so the move also overloads it
    EXPECT_EQ(validate_schedule(s, x), (std::vector<std::string>{"storage:user 0,slot 2,node 0", "capacity:node 0,slot 2"}));
    auto y = optimal_witness();
    y.at(1, 0) = {kUnassigned, kUnassigned};
    auto v = validate_schedule(s, y);
    EXPECT_TRUE(contains(v, "slot:user 1,slot 0"));
    EXPECT_TRUE(contains(v, "once:user 1,video 1"));
}

TEST(EvaluateCost, AllPeers) {
    auto c = evaluate_cost(two_user_example(), optimal_witness());
    EXPECT_EQ(c.total, Rational(6));
    EXPECT_EQ(c.peer_total, Rational(6));
    EXPECT_EQ(c.cdn_total, Rational(0));
}

TEST(EvaluateCost, CollisionsForcedToCdn) {
    // identical orders; u2 redirected to the CDN at t=1 and t=3
    auto x = make_schedule({{{0, 0}, {1, 0}, {2, 1}}, {{0, 2}, {1, 1}, {2, 2}}});
    auto c = evaluate_cost(two_user_example(), x);
    EXPECT_EQ(c.total, Rational(14));
    EXPECT_EQ(c.per_node[2], Rational(10));
    EXPECT_EQ(c.total, c.peer_total + c.cdn_total);
}

TEST(EvaluateCost, EmptyHorizon) {
    Scenario s;
    s.num_users = 2;
    s.num_videos = 1;
    s.num_slots = 0;
    s.recommendations = {{}, {}};
    s.nodes.emplace_back(std::vector<VideoId>{0}, Rational(5), 2);
    EXPECT_EQ(evaluate_cost(s, Schedule(2, 0)).total, Rational(0));
}

TEST(EvaluateCost, RejectsInfeasible) {
    auto x = optimal_witness();
    x.at(0, 0).node = 1;
    EXPECT_THROW(evaluate_cost(two_user_example(), x), InvalidInput);
}

TEST(ValidateSchedule, AgreesWithNaiveEvaluatorOnPerturbedSchedules) {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        GenConfig cfg;
        cfg.num_users = 3;
        cfg.num_videos = 5;
        cfg.num_peers = 2;
        cfg.num_slots = 3;
        cfg.storage_per_peer = 2;
        cfg.capacity_per_peer = 1;
        cfg.seed = trial;
        auto s = generate_scenario(cfg);
        auto x = fixtures::random_feasible_schedule(s, rng);
        ASSERT_TRUE(validate_schedule(s, x).empty());
        ASSERT_TRUE(fixtures::naive_feasible(s, x));
        // random corruption of one cell
        auto u = static_cast<UserId>(rng.below(s.num_users));
        auto t = static_cast<SlotIndex>(rng.below(s.num_slots));
        x.at(u, t) = {static_cast<VideoId>(rng.below(s.num_videos)), static_cast<NodeId>(rng.below(s.num_nodes()))};
        EXPECT_EQ(validate_schedule(s, x).empty(), fixtures::naive_feasible(s, x)) << "trial " << trial;
    }
}

TEST(EvaluateCost, BoundedByCheapestAndCdnCost) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        GenConfig cfg;
        cfg.num_users = 10;
        cfg.num_videos = 30;
        cfg.num_peers = 5;
        cfg.storage_per_peer = 4;
        cfg.seed = trial;
        auto s = generate_scenario(cfg);
        auto c = evaluate_cost(s, fixtures::random_feasible_schedule(s, rng));
        Rational downloads(std::int64_t(s.num_users) * s.num_slots);
        EXPECT_GE(c.total, downloads * s.min_unit_cost());
        EXPECT_LE(c.total, downloads * s.cdn().unit_cost);
    }
}

TEST(EvaluateCost, InvariantUnderSlotRelabeling) {
    auto s = two_user_example();
    auto x = optimal_witness();
    // rotating every user's slots by the same shift keeps (user, video, node) triples
    Schedule y(2, 3);
    for (UserId u = 0; u < 2; ++u)
        for (SlotIndex t = 0; t < 3; ++t) y.at(u, (t + 1) % 3) = x.at(u, t);
    EXPECT_EQ(evaluate_cost(s, y).total, evaluate_cost(s, x).total);
}

TEST(ScenarioIo, TextRoundTripIsStable) {
    GenConfig cfg;
    cfg.num_users = 7;
    cfg.peer_cost = Rational(3, 2);
    auto s = generate_scenario(cfg);
    auto text = to_text(s);
    auto back = scenario_from_text(text);
    EXPECT_EQ(to_text(back), text);
    EXPECT_TRUE(validate_scenario(back).empty());
    EXPECT_EQ(text.substr(0, text.find('\n')), "7 300 10 50");
    EXPECT_THROW(scenario_from_text("2 3"), InvalidInput);
}

TEST(ScenarioIo, ScheduleRoundTrip) {
    std::stringstream ss;
    write_schedule(ss, optimal_witness());
    EXPECT_EQ(read_schedule(ss), optimal_witness());
}
