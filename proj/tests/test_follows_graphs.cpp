#include <set>

#include "doctest.h"
#include "pim/errors.hpp"
#include "pim/follows_graphs.hpp"
#include "test_support.hpp"

using namespace pim;
using pim::testing::make_log;

namespace {

ActivityId id_of(const EventLog& log, const char* label) {
    ActivityId id = log.activities().find(label);
    REQUIRE(id != ActivityTable::npos);
    return id;
}

std::set<std::pair<ActivityId, ActivityId>> edge_set(const EdgeMap& edges) {
    std::set<std::pair<ActivityId, ActivityId>> out;
    for (const auto& [edge, f] : edges) {
        out.insert(edge);
    }
    return out;
}

}  // namespace

TEST_CASE("direct and indirect follows on the worked single-trace example") {
    EventLog log = make_log({{"a,a,b,c,b,b,a,b", 1}});
    FollowsGraphs g = build_follows_graphs(log);
    ActivityId a = id_of(log, "a");
    ActivityId b = id_of(log, "b");
    CHECK(g.dfg_count(a, b) == 2);
    CHECK(g.ifg_count(a, b) == 4);
    CHECK(g.unary_count(a) == 3);
    CHECK(g.unary_count(b) == 4);
}

TEST_CASE("running-example frequencies") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    ActivityId a = id_of(log, "a"), b = id_of(log, "b"), c = id_of(log, "c"), e = id_of(log, "e"),
               f = id_of(log, "f"), gg = id_of(log, "g");

    CHECK(g.dfg_count(a, gg) == 10);
    CHECK(g.ifg_count(a, gg) == 1);
    CHECK(g.dfg_count(gg, a) == 0);
    CHECK(g.dfg_count(b, c) == 6);
    CHECK(g.dfg_count(c, b) == 5);

    CHECK(g.start.size() == 1);
    CHECK(g.start.at(a) == 16);
    CHECK(g.end.size() == 3);
    CHECK(g.end.at(e) == 3);
    CHECK(g.end.at(f) == 3);
    CHECK(g.end.at(gg) == 10);

    // Directly-follows mass equals events minus traces.
    std::uint64_t dfg_mass = 0;
    for (const auto& [edge, freq] : g.dfg) {
        dfg_mass += freq;
    }
    CHECK(dfg_mass == 45);
}

TEST_CASE("single-activity traces yield no edges") {
    EventLog log = make_log({{"a", 3}});
    FollowsGraphs g = build_follows_graphs(log);
    CHECK(g.dfg.empty());
    CHECK(g.ifg.empty());
    CHECK(g.unary_count(0) == 3);
    CHECK(g.start.at(0) == 3);
    CHECK(g.end.at(0) == 3);
}

TEST_CASE("empty traces never affect frequencies") {
    EventLog with = make_log({{"a,b", 2}}, 7);
    EventLog without = make_log({{"a,b", 2}});
    FollowsGraphs g1 = build_follows_graphs(with);
    FollowsGraphs g2 = build_follows_graphs(without);
    CHECK(g1.dfg == g2.dfg);
    CHECK(g1.ifg == g2.ifg);
    CHECK(g1.unary == g2.unary);
    CHECK(g1.start == g2.start);
    CHECK(g1.end == g2.end);
}

TEST_CASE("filter retains everything at 100") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    FollowsGraphs filtered = filter_graphs(g, 100.0);
    CHECK(filtered.dfg == g.dfg);
    CHECK(filtered.ifg == g.ifg);
    CHECK(filtered.nodes == g.nodes);
}

TEST_CASE("filter cutoff in the frequency-2 tie group removes the four frequency-1 dfg edges") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    FollowsGraphs filtered = filter_graphs(g, 81.0);

    ActivityId b = id_of(log, "b"), c = id_of(log, "c"), e = id_of(log, "e"), f = id_of(log, "f"),
               gg = id_of(log, "g");
    auto removed_dfg = edge_set(g.dfg);
    for (const auto& [edge, freq] : filtered.dfg) {
        removed_dfg.erase(edge);
    }
    std::set<std::pair<ActivityId, ActivityId>> expected = {
        {c, e}, {b, f}, {gg, c}, {c, gg}};
    CHECK(removed_dfg == expected);

    // Every surviving edge has frequency at least two.
    for (const auto& [edge, freq] : filtered.dfg) {
        CHECK(freq >= 2);
    }
    for (const auto& [edge, freq] : filtered.ifg) {
        CHECK(freq >= 2);
    }
    // No node becomes disconnected here.
    CHECK(filtered.nodes == g.nodes);
}

TEST_CASE("equal-frequency edges are never split by the filter") {
    pim::testing::RandomLogSource source(99);
    for (int i = 0; i < 200; ++i) {
        EventLog log = source.next();
        FollowsGraphs g = build_follows_graphs(log);
        for (double f : {10.0, 35.0, 60.0, 90.0}) {
            FollowsGraphs filtered = filter_graphs(g, f);
            std::set<std::uint64_t> kept, dropped;
            auto classify = [&](const EdgeMap& all, const EdgeMap& retained) {
                for (const auto& [edge, freq] : all) {
                    if (retained.count(edge)) {
                        kept.insert(freq);
                    } else {
                        dropped.insert(freq);
                    }
                }
            };
            classify(g.dfg, filtered.dfg);
            classify(g.ifg, filtered.ifg);
            for (std::uint64_t freq : dropped) {
                CHECK(kept.count(freq) == 0);
            }
        }
    }
}

TEST_CASE("filter is monotone in the percentage") {
    pim::testing::RandomLogSource source(7);
    for (int i = 0; i < 200; ++i) {
        EventLog log = source.next();
        FollowsGraphs g = build_follows_graphs(log);
        std::size_t previous = 0;
        for (double f : {0.0, 20.0, 40.0, 60.0, 80.0, 100.0}) {
            FollowsGraphs filtered = filter_graphs(g, f);
            std::size_t edges = filtered.dfg.size() + filtered.ifg.size();
            CHECK(edges >= previous);
            previous = edges;
        }
        // Subset relation, not just counts.
        FollowsGraphs half = filter_graphs(g, 50.0);
        FollowsGraphs most = filter_graphs(g, 90.0);
        for (const auto& [edge, freq] : half.dfg) {
            CHECK(most.dfg.count(edge) == 1);
        }
        for (const auto& [edge, freq] : half.ifg) {
            CHECK(most.ifg.count(edge) == 1);
        }
    }
}

TEST_CASE("filter rejects out-of-range percentages") {
    FollowsGraphs g = build_follows_graphs(make_log({{"a,b", 1}}));
    CHECK_THROWS_AS(filter_graphs(g, -0.5), ParameterError);
    CHECK_THROWS_AS(filter_graphs(g, 100.5), ParameterError);
}

TEST_CASE("nodes without any edges survive filtering") {
    EventLog log = make_log({{"e", 3}, {"f", 3}});
    FollowsGraphs g = build_follows_graphs(log);
    FollowsGraphs filtered = filter_graphs(g, 50.0);
    CHECK(filtered.nodes.size() == 2);
}

TEST_CASE("nodes that lose all edges are dropped") {
    // g only connects to the rest through frequency-1 edges.
    EventLog log = make_log({{"a,b", 9}, {"a,g", 1}});
    FollowsGraphs g = build_follows_graphs(log);
    FollowsGraphs filtered = filter_graphs(g, 50.0);  // keeps the top edge only
    CHECK(filtered.nodes.size() == 2);
    CHECK(!filtered.has_node(id_of(log, "g")));
    CHECK(filtered.unary.count(id_of(log, "g")) == 0);
}

TEST_CASE("start and end frequencies both sum to the non-empty trace count") {
    pim::testing::RandomLogSource source(88);
    for (int i = 0; i < 200; ++i) {
        EventLog log = source.next();
        FollowsGraphs g = build_follows_graphs(log);
        std::uint64_t start_sum = 0, end_sum = 0;
        for (const auto& [id, f] : g.start) {
            start_sum += f;
        }
        for (const auto& [id, f] : g.end) {
            end_sum += f;
        }
        CHECK(start_sum == log.non_empty_traces());
        CHECK(end_sum == log.non_empty_traces());
    }
}

TEST_CASE("build matches the brute-force counter on random logs") {
    pim::testing::RandomLogSource source(31);
    for (int i = 0; i < 200; ++i) {
        EventLog log = source.next();
        FollowsGraphs fast = build_follows_graphs(log);
        FollowsGraphs slow = pim::testing::brute_force_graphs(log);
        CHECK(fast.dfg == slow.dfg);
        CHECK(fast.ifg == slow.ifg);
        CHECK(fast.unary == slow.unary);
        CHECK(fast.start == slow.start);
        CHECK(fast.end == slow.end);
    }
}

TEST_CASE("dfg dot export marks removed edges dashed") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    FollowsGraphs filtered = filter_graphs(g, 81.0);
    std::string dot = dfg_to_dot(filtered, log.activities(), &g);
    std::size_t dashed = 0;
    std::size_t pos = 0;
    while ((pos = dot.find("style=dashed", pos)) != std::string::npos) {
        ++dashed;
        pos += 1;
    }
    CHECK(dashed == 4);
    CHECK(dot.find("digraph") == 0);

    std::string plain = dfg_to_dot(filter_graphs(g, 100.0), log.activities(), &g);
    CHECK(plain.find("style=dashed") == std::string::npos);
}
