#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "pcdn/scengen.hpp"
#include "pcdn/sweep.hpp"

using namespace pcdn;

TEST(Zipf, WeightsNormalizedAndDecreasing) {
    auto w = zipf_weights(300, 0.6);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (std::size_t k = 1; k < w.size(); ++k) EXPECT_LT(w[k], w[k - 1]);
    EXPECT_NEAR(w[0] / w[1], std::pow(2.0, 0.6), 1e-12);
    auto flat = zipf_weights(10, 0.0);
    for (double x : flat) EXPECT_DOUBLE_EQ(x, 0.1);
}

TEST(SampleDistinct, DistinctAndFollowsPopularity) {
    Rng rng(1);
    auto w = zipf_weights(50, 1.0);
    std::vector<int> hits(50, 0);
    for (int i = 0; i < 4000; ++i) {
        auto pick = sample_distinct(w, 5, rng);
        std::set<VideoId> uniq(pick.begin(), pick.end());
        ASSERT_EQ(uniq.size(), 5u);
        for (auto v : pick) ++hits[v];
    }
    EXPECT_GT(hits[0], hits[10]);
    EXPECT_GT(hits[10], hits[49]);
    EXPECT_THROW(sample_distinct(w, 51, rng), InvalidInput);
}

TEST(SampleDistinct, MatchesRejectionSamplingDistribution) {
    // first-two-picks joint frequencies agree with redraw-on-repeat
    std::vector<double> w{0.5, 0.3, 0.2};
    Rng a(5), b(6);
    std::map<std::pair<int, int>, int> direct, rejection;
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
        auto p = sample_distinct(w, 2, a);
        ++direct[{int(p[0]), int(p[1])}];
        auto draw = [&] {
            double r = b.uniform01();
            return r < 0.5 ? 0 : r < 0.8 ? 1 : 2;
        };
        int first = draw(), second;
        do second = draw();
        while (second == first);
        ++rejection[{first, second}];
    }
    for (auto& [k, c] : rejection) EXPECT_NEAR(double(direct[k]) / n, double(c) / n, 0.01);
}

TEST(PlaceCyclic, DealsRoundRobin) {
    auto p = place_cyclic(10, {2, 2, 2});
    EXPECT_EQ(p[0], (std::vector<VideoId>{0, 3}));
    EXPECT_EQ(p[1], (std::vector<VideoId>{1, 4}));
    EXPECT_EQ(p[2], (std::vector<VideoId>{2, 5}));
}

TEST(PlaceCyclic, WrapsAndSkipsHeldVideos) {
    auto p = place_cyclic(3, {3, 2});
    EXPECT_EQ(p[0], (std::vector<VideoId>{0, 2, 1}));
    EXPECT_EQ(p[1], (std::vector<VideoId>{1, 0}));
    for (auto& s : p) EXPECT_EQ(std::set<VideoId>(s.begin(), s.end()).size(), s.size());
}

TEST(PlaceCyclic, DefaultNetworkCoversLibraryOnce) {
    auto p = place_cyclic(300, std::vector<std::uint32_t>(50, 6));
    std::vector<int> count(300, 0);
    for (auto& s : p)
        for (auto v : s) ++count[v];
    for (int c : count) EXPECT_EQ(c, 1);
}

TEST(RandomComposition, SumsAndMinimums) {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        auto parts = random_composition(100, 50, 1, rng);
        ASSERT_EQ(parts.size(), 50u);
        EXPECT_EQ(std::accumulate(parts.begin(), parts.end(), 0u), 100u);
        for (auto x : parts) EXPECT_GE(x, 1u);
    }
    EXPECT_EQ(random_composition(5, 5, 1, rng), std::vector<std::uint32_t>(5, 1));
    EXPECT_THROW(random_composition(4, 5, 1, rng), InvalidInput);
}

TEST(RandomComposition, UniformOverCompositions) {
    // 5 into 3 parts, min 1: six compositions
    Rng rng(4);
    std::map<std::vector<std::uint32_t>, int> freq;
    const int n = 30000;
    for (int i = 0; i < n; ++i) ++freq[random_composition(5, 3, 1, rng)];
    EXPECT_EQ(freq.size(), 6u);
    for (auto& [k, c] : freq) EXPECT_NEAR(double(c) / n, 1.0 / 6, 0.015);
}

TEST(EvenSplit, DistributesRemainder) {
    std::vector<std::uint32_t> expected(40, 7);
    for (int i = 0; i < 20; ++i) expected[i] = 8;
    EXPECT_EQ(even_split(300, 40), expected);
    EXPECT_EQ(even_split(9, 3), (std::vector<std::uint32_t>{3, 3, 3}));
}

TEST(GenerateScenario, DefaultsAreValidAndDeterministic) {
    GenConfig cfg;
    auto a = generate_scenario(cfg), b = generate_scenario(cfg);
    EXPECT_TRUE(validate_scenario(a).empty());
    EXPECT_EQ(a.num_users, 100u);
    EXPECT_EQ(a.num_peers(), 50u);
    EXPECT_EQ(a.recommendations, b.recommendations);
    EXPECT_EQ(a.cdn().capacity, 100u);
    EXPECT_EQ(a.cdn().unit_cost, Rational(5));
    cfg.seed = 2;
    EXPECT_NE(generate_scenario(cfg).recommendations, a.recommendations);
}

TEST(GenerateScenario, AllPlacementsAndAllocationsValid) {
    for (auto placement : {Placement::Cyclic, Placement::Popularity, Placement::Random})
        for (auto alloc : {Allocation::Uniform, Allocation::RandomComposition})
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                GenConfig cfg;
                cfg.placement = placement;
                cfg.storage_alloc = alloc;
                cfg.capacity_alloc = alloc;
                cfg.seed = seed;
                auto s = generate_scenario(cfg);
                ASSERT_TRUE(validate_scenario(s).empty());
                std::uint64_t storage = 0, capacity = 0;
                for (NodeId n = 0; n < s.num_peers(); ++n) {
                    storage += s.nodes[n].storage.size();
                    capacity += s.nodes[n].capacity;
                }
                EXPECT_EQ(storage, 300u);
                EXPECT_EQ(capacity, 100u);
            }
}

TEST(GenerateScenario, RejectsBadConfigs) {
    GenConfig cfg;
    cfg.num_slots = 400;
    EXPECT_THROW(generate_scenario(cfg), InvalidInput);
    GenConfig zero_cap;
    zero_cap.capacity_per_peer = 0;
    EXPECT_THROW(generate_scenario(zero_cap), InvalidInput);
    GenConfig neg;
    neg.alpha = -1;
    EXPECT_THROW(generate_scenario(neg), InvalidInput);
}

TEST(GenerateScenario, PeersPresetKeepsTotals) {
    auto spec = make_preset("peers");
    ASSERT_EQ(spec.points.size(), 10u);
    for (const auto& p : spec.points) {
        auto s = generate_scenario(p.config);
        std::uint64_t storage = 0, capacity = 0;
        for (NodeId n = 0; n < s.num_peers(); ++n) {
            storage += s.nodes[n].storage.size();
            capacity += s.nodes[n].capacity;
        }
        EXPECT_EQ(storage, 300u) << p.label;
        EXPECT_EQ(capacity, 100u) << p.label;
    }
}

TEST(Presets, RangesAndLabels) {
    EXPECT_EQ(make_preset("users").points.front().label, "50");
    EXPECT_EQ(make_preset("users").points.back().label, "140");
    EXPECT_EQ(make_preset("videos").points.size(), 9u);
    EXPECT_EQ(make_preset("slots").points.size(), 8u);
    EXPECT_EQ(make_preset("storage").points.size(), 9u);
    EXPECT_EQ(make_preset("capacity").points.size(), 5u);
    auto alpha = make_preset("alpha");
    EXPECT_EQ(alpha.points.front().label, "0.1");
    EXPECT_EQ(alpha.points.back().label, "1.0");
    EXPECT_EQ(make_preset("placement").points[1].label, "popularity");
    EXPECT_EQ(make_preset("hetero-capacity").points[1].label, "random");
    EXPECT_THROW(make_preset("nope"), ConfigError);
    for (const auto& name : preset_names()) EXPECT_NO_THROW(make_preset(name));
}

TEST(Zipf, SmallAndDefaultExamples) {
    auto w = zipf_weights(2, 1.0);
    EXPECT_NEAR(w[0], 2.0 / 3, 1e-12);
    EXPECT_NEAR(w[1], 1.0 / 3, 1e-12);
    auto d = zipf_weights(300, 0.6);
    EXPECT_NEAR(d[0] / d[299], 30.639, 0.001);
}

TEST(GenRecommendations, FullLibraryWhenSlotsEqualVideos) {
    Rng rng(2);
    for (const auto& r : gen_recommendations(5, 8, zipf_weights(8, 0.6), rng)) {
        std::set<VideoId> all(r.begin(), r.end());
        EXPECT_EQ(all.size(), 8u);
    }
}

TEST(GenRecommendations, HighSkewConcentratesOnTopTen) {
    // about 0.893 by independent simulation: the last picks of a user often
    // fall past rank 10 once the top ranks are used up
    Rng rng(3);
    std::uint64_t top = 0, total = 0;
    for (const auto& r : gen_recommendations(5000, 10, zipf_weights(100, 5.0), rng))
        for (auto v : r) {
            top += v < 10;
            ++total;
        }
    EXPECT_NEAR(double(top) / total, 0.893, 0.01);
}

TEST(GenRecommendations, NoSkewIsUniform) {
    // with alpha = 0 every video appears with probability T/V per user
    Rng rng(4);
    const int users = 20000;
    std::vector<int> freq(50, 0);
    for (const auto& r : gen_recommendations(users, 5, zipf_weights(50, 0.0), rng))
        for (auto v : r) ++freq[v];
    const double p = 0.1, mean = users * p, sd = std::sqrt(users * p * (1 - p));
    for (int f : freq) EXPECT_NEAR(f, mean, 3.5 * sd);
}

TEST(PlaceCyclic, SmallExamples) {
    auto p = place_cyclic(4, {2, 2});
    EXPECT_EQ(p[0], (std::vector<VideoId>{0, 2}));
    EXPECT_EQ(p[1], (std::vector<VideoId>{1, 3}));
    auto q = place_cyclic(2, {2, 2});
    EXPECT_EQ(std::set<VideoId>(q[0].begin(), q[0].end()), (std::set<VideoId>{0, 1}));
    EXPECT_EQ(std::set<VideoId>(q[1].begin(), q[1].end()), (std::set<VideoId>{0, 1}));
    // more videos than slots: the coldest are left to the CDN
    auto r = place_cyclic(10, {2, 2});
    EXPECT_EQ(r[1], (std::vector<VideoId>{1, 3}));
}

TEST(PlacePopularity, FullStorageReplicatesEverything) {
    Rng rng(5);
    for (const auto& s : place_popularity(std::vector<std::uint32_t>(4, 20), zipf_weights(20, 0.6), rng))
        EXPECT_EQ(s.size(), 20u);
    for (const auto& s : place_random(20, std::vector<std::uint32_t>(4, 20), rng)) EXPECT_EQ(s.size(), 20u);
}

TEST(PlacePopularity, HighSkewReplicatesTopVideo) {
    Rng rng(6);
    const std::uint32_t peers = 200;
    auto p = place_popularity(std::vector<std::uint32_t>(peers, 3), zipf_weights(100, 5.0), rng);
    int holders = 0;
    for (const auto& s : p) holders += std::find(s.begin(), s.end(), 0u) != s.end();
    EXPECT_GT(holders, 0.95 * peers);
}

TEST(PlaceRandom, UncachedFractionMatchesExpectation) {
    Rng rng(7);
    const std::uint32_t V = 1000, P = 20, s = 10;
    double uncached = 0;
    const int reps = 200;
    for (int i = 0; i < reps; ++i) {
        std::vector<char> cached(V, 0);
        for (const auto& st : place_random(V, std::vector<std::uint32_t>(P, s), rng))
            for (auto v : st) cached[v] = 1;
        uncached += double(std::count(cached.begin(), cached.end(), 0)) / V / reps;
    }
    EXPECT_NEAR(uncached, std::pow(1 - double(s) / V, P), 0.005);
}

TEST(RandomComposition, TwoPartsEquiprobable) {
    Rng rng(8);
    const int n = 100000;
    std::map<std::uint32_t, int> first;
    for (int i = 0; i < n; ++i) {
        auto c = random_composition(6, 2, 1, rng);
        ASSERT_EQ(c[0] + c[1], 6u);
        ++first[c[0]];
    }
    ASSERT_EQ(first.size(), 5u);
    const double p = 0.2, sd = std::sqrt(n * p * (1 - p));
    for (auto& [k, c] : first) EXPECT_NEAR(c, n * p, 3 * sd) << k;
    EXPECT_EQ(random_composition(4, 4, 1, rng), std::vector<std::uint32_t>(4, 1));
}
