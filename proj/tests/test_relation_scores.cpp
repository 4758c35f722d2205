#include <cmath>
#include <random>

#include "doctest.h"
#include "pim/errors.hpp"
#include "pim/relation_scores.hpp"
#include "test_support.hpp"

using namespace pim;
using pim::testing::make_log;

namespace {

ActivityId id_of(const EventLog& log, const char* label) {
    ActivityId id = log.activities().find(label);
    REQUIRE(id != ActivityTable::npos);
    return id;
}

// The running-example graphs with the two rare edges between c and g removed
// from the dfg, which turns (c,g) into a clean choice pair.
FollowsGraphs l0_without_cg() {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    ActivityId c = log.activities().find("c");
    ActivityId gg = log.activities().find("g");
    g.dfg.erase({c, gg});
    g.dfg.erase({gg, c});
    return g;
}

}  // namespace

TEST_CASE("choice score is 1 for activities that never co-occur") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    CHECK(relation_score(ScoreKind::xor_choice, id_of(log, "b"), id_of(log, "g"), g) == 1.0);
    // All other kinds are zero for a fully disjoint pair.
    for (ScoreKind kind : {ScoreKind::sequence, ScoreKind::parallel, ScoreKind::loop_single,
                           ScoreKind::loop_indirect}) {
        CHECK(relation_score(kind, id_of(log, "b"), id_of(log, "g"), g) == 0.0);
    }
}

TEST_CASE("sequence score of a before g on unfiltered graphs") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    double s = relation_score(ScoreKind::sequence, id_of(log, "a"), id_of(log, "g"), g);
    CHECK(s == doctest::Approx(11.0 / 12.0).epsilon(1e-12));
    CHECK(std::abs(s - 0.92) < 0.01);
}

TEST_CASE("parallel score of b and c") {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    double s = relation_score(ScoreKind::parallel, id_of(log, "b"), id_of(log, "c"), g);
    CHECK(s == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("choice score of a and g once the c-g edges are filtered") {
    FollowsGraphs g = l0_without_cg();
    EventLog log = pim::testing::running_example();
    double s = relation_score(ScoreKind::xor_choice, id_of(log, "a"), id_of(log, "g"), g);
    CHECK(s == doctest::Approx(((16.0 - 11.0) / 16.0 + 0.0 / 11.0) / 2.0).epsilon(1e-12));
    CHECK(std::abs(s - 0.156) < 0.01);
    // And c,g become a clean choice pair.
    CHECK(relation_score(ScoreKind::xor_choice, id_of(log, "c"), id_of(log, "g"), g) == 1.0);
}

TEST_CASE("self relations are rejected") {
    EventLog log = make_log({{"a,b", 1}});
    FollowsGraphs g = build_follows_graphs(log);
    CHECK_THROWS_AS(relation_score(ScoreKind::sequence, 0, 0, g), ParameterError);
    CHECK_THROWS_AS(sequence_raw(0, 0, g), ParameterError);
}

TEST_CASE("unknown activities are rejected") {
    EventLog log = make_log({{"a,b", 1}});
    FollowsGraphs g = build_follows_graphs(log);
    CHECK_THROWS_AS(relation_score(ScoreKind::sequence, 0, 42, g), ParameterError);
}

TEST_CASE("all scores stay within the unit interval on random graphs") {
    pim::testing::RandomLogSource source(512);
    for (int i = 0; i < 250; ++i) {
        EventLog log = source.next();
        FollowsGraphs g = build_follows_graphs(log);
        ScoreTable table(g);
        for (std::size_t a = 0; a < table.size(); ++a) {
            for (std::size_t b = 0; b < table.size(); ++b) {
                for (ScoreKind kind : kAllScoreKinds) {
                    double s = table.at(kind, a, b);
                    CHECK(s >= 0.0);
                    CHECK(s <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("raw sequence quotient is antisymmetric") {
    pim::testing::RandomLogSource source(77);
    for (int i = 0; i < 250; ++i) {
        EventLog log = source.next();
        FollowsGraphs g = build_follows_graphs(log);
        auto alphabet = log.alphabet();
        for (ActivityId a : alphabet) {
            for (ActivityId b : alphabet) {
                if (a == b) {
                    continue;
                }
                CHECK(sequence_raw(a, b, g) == doctest::Approx(-sequence_raw(b, a, g)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("parallel and indirect-loop scores are symmetric") {
    pim::testing::RandomLogSource source(78);
    for (int i = 0; i < 100; ++i) {
        EventLog log = source.next();
        FollowsGraphs g = build_follows_graphs(log);
        auto alphabet = log.alphabet();
        for (ActivityId a : alphabet) {
            for (ActivityId b : alphabet) {
                if (a == b) {
                    continue;
                }
                CHECK(relation_score(ScoreKind::parallel, a, b, g) ==
                      relation_score(ScoreKind::parallel, b, a, g));
                CHECK(relation_score(ScoreKind::loop_indirect, a, b, g) ==
                      relation_score(ScoreKind::loop_indirect, b, a, g));
            }
        }
    }
}

TEST_CASE("the generating operator outscores the others on clean two-activity logs") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::uint64_t> count(1, 12);

    for (int i = 0; i < 250; ++i) {
        std::uint64_t n = count(rng);
        std::uint64_t m = count(rng);

        // Exclusive choice: a and b never share a trace.
        {
            EventLog log = make_log({{"a", n}, {"b", m}});
            FollowsGraphs g = build_follows_graphs(log);
            double winner = relation_score(ScoreKind::xor_choice, 0, 1, g);
            for (ScoreKind other : {ScoreKind::sequence, ScoreKind::parallel,
                                    ScoreKind::loop_single, ScoreKind::loop_indirect}) {
                CHECK(winner > relation_score(other, 0, 1, g));
            }
        }
        // Sequence: a always directly before b.
        {
            EventLog log = make_log({{"a,b", n}});
            FollowsGraphs g = build_follows_graphs(log);
            double winner = relation_score(ScoreKind::sequence, 0, 1, g);
            for (ScoreKind other : {ScoreKind::xor_choice, ScoreKind::parallel,
                                    ScoreKind::loop_single, ScoreKind::loop_indirect}) {
                CHECK(winner > relation_score(other, 0, 1, g));
            }
        }
        // Parallelism: both interleavings observed with comparable weight
        // (a heavily one-sided log genuinely is a sequence).
        {
            std::uniform_int_distribution<std::uint64_t> balanced((n + 1) / 2, n);
            m = balanced(rng);
            EventLog log = make_log({{"a,b", n}, {"b,a", m}});
            FollowsGraphs g = build_follows_graphs(log);
            double winner = relation_score(ScoreKind::parallel, 0, 1, g);
            for (ScoreKind other : {ScoreKind::xor_choice, ScoreKind::sequence,
                                    ScoreKind::loop_single, ScoreKind::loop_indirect}) {
                CHECK(winner > relation_score(other, 0, 1, g));
            }
        }
    }
}
