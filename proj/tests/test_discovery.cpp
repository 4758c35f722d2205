#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "pim/block_graph.hpp"
#include "pim/discovery.hpp"
#include "pim/errors.hpp"
#include "test_support.hpp"

using namespace pim;
using pim::testing::make_log;

namespace {

// Canonical form that treats the commutative operators' children as
// order-free, for comparing discovered trees against expected shapes.
std::string canonical(const ProcessTree& tree) {
    switch (tree.kind) {
        case ProcessTree::Kind::leaf:
            return "leaf:" + tree.label;
        case ProcessTree::Kind::silent:
            return "tau";
        case ProcessTree::Kind::op:
            break;
    }
    std::vector<std::string> parts;
    for (const ProcessTree& child : tree.children) {
        parts.push_back(canonical(child));
    }
    bool commutative = tree.op == Operator::xor_choice || tree.op == Operator::parallel;
    if (commutative) {
        std::sort(parts.begin(), parts.end());
    }
    std::string out = operator_name(tree.op);
    out += "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += parts[i];
    }
    out += ")";
    return out;
}

std::string cut_signature(const Cut& cut, const ActivityTable& activities) {
    auto side = [&](const std::vector<ActivityId>& ids) {
        std::vector<std::string> labels;
        for (ActivityId id : ids) {
            labels.push_back(activities.label(id));
        }
        std::sort(labels.begin(), labels.end());
        std::string joined;
        for (const auto& label : labels) {
            joined += label;
        }
        return joined;
    };
    std::string left = side(cut.sigma1);
    std::string right = side(cut.sigma2);
    if (cut.op == Operator::xor_choice || cut.op == Operator::parallel) {
        if (right < left) {
            std::swap(left, right);
        }
    }
    return std::string(operator_name(cut.op)) + ":" + left + "|" + right;
}

}  // namespace

TEST_CASE("running example discovers the generating tree with the expected cuts") {
    EventLog log = pim::testing::running_example();
    DiscoveryOptions options;
    options.filter_percent = 81.0;  // cutoff lands in the frequency-2 tie group
    DiscoveryResult result = discover_with_trace(log, options);

    ProcessTree expected = parse_tree_text("->(a, x(g, ->(loop(/\\(b,c), d), x(e,f))))");
    CHECK(canonical(normalize(result.tree)) == canonical(normalize(expected)));

    // The six documented cuts, in recursion order along each branch.
    std::vector<std::string> cut_order;
    for (const DiscoveryStep& step : result.steps) {
        if (step.cut.has_value()) {
            cut_order.push_back(cut_signature(*step.cut, log.activities()));
        }
    }
    std::vector<std::string> expected_cuts = {
        "seq:a|bcdefg",      // c2
        "xor:bcdef|g",       // c3
        "seq:bcd|ef",        // c4
        "xor:e|f",           // c5
        "loop:bc|d",         // c7
        "and:b|c",           // c8
    };
    CHECK(cut_order.size() == expected_cuts.size());
    for (const std::string& expected_cut : expected_cuts) {
        CHECK(std::count(cut_order.begin(), cut_order.end(), expected_cut) == 1);
    }
    // Ancestor order within branches holds whatever the sibling order is.
    auto position = [&](const std::string& sig) {
        return std::find(cut_order.begin(), cut_order.end(), sig) - cut_order.begin();
    };
    CHECK(position("seq:a|bcdefg") < position("xor:bcdef|g"));
    CHECK(position("xor:bcdef|g") < position("seq:bcd|ef"));
    CHECK(position("seq:bcd|ef") < position("xor:e|f"));
    CHECK(position("seq:bcd|ef") < position("loop:bc|d"));
    CHECK(position("loop:bc|d") < position("and:b|c"));
}

TEST_CASE("the running example also comes out right without any filtering") {
    EventLog log = pim::testing::running_example();
    DiscoveryOptions options;
    options.filter_percent = 100.0;
    ProcessTree tree = discover(log, options);
    ProcessTree expected = parse_tree_text("->(a, x(g, ->(loop(/\\(b,c), d), x(e,f))))");
    CHECK(canonical(normalize(tree)) == canonical(normalize(expected)));
}

TEST_CASE("empty log discovers the silent tree") {
    CHECK(discover(make_log({})) == ProcessTree::make_silent());
}

TEST_CASE("a plain two-step sequence") {
    ProcessTree tree = discover(make_log({{"a,b", 10}}));
    CHECK(tree_to_text(tree) == "->(a, b)");
}

TEST_CASE("trace records base cases") {
    DiscoveryResult result = discover_with_trace(make_log({{"a", 1}}));
    REQUIRE(result.steps.size() == 1);
    CHECK(result.steps.front().kind == DiscoveryStep::Kind::base_leaf);
    CHECK(result.steps.front().detail == "a");
}

TEST_CASE("trace length stays linear in the alphabet") {
    pim::testing::RandomLogSource source(4040);
    for (int i = 0; i < 200; ++i) {
        EventLog log = source.next();
        if (log.alphabet().empty()) {
            continue;
        }
        DiscoveryResult result = discover_with_trace(log);
        // The recursion skeleton (cuts plus terminal base cases) is bounded
        // by twice the alphabet; skip and projection records add a bounded
        // number of extra entries.
        std::size_t skeleton = 0;
        for (const DiscoveryStep& step : result.steps) {
            if (step.kind != DiscoveryStep::Kind::skip_wrapper &&
                step.kind != DiscoveryStep::Kind::projection) {
                ++skeleton;
            }
        }
        CHECK(skeleton <= 2 * log.alphabet().size());
        CHECK(result.steps.size() <= 4 * log.alphabet().size() + 2);
    }
}

TEST_CASE("termination and determinism on random logs") {
    pim::testing::RandomLogSource source(4041);
    for (int i = 0; i < 200; ++i) {
        EventLog log = source.next();
        ProcessTree first = discover(log);
        ProcessTree second = discover(log);
        CHECK(first == second);
        BlockGraph graph = to_block_graph(first);
        CHECK(check_block_structure(graph).empty());
    }
}

TEST_CASE("an empty-trace majority introduces a top-level skip") {
    EventLog log = make_log({{"a,b", 4}}, 6);
    ProcessTree tree = discover(log);
    REQUIRE(tree.is_op());
    CHECK(tree.op == Operator::xor_choice);
    CHECK(tree.children.front().is_silent());
    CHECK(tree_to_text(tree) == "x(tau, ->(a, b))");

    EventLog minority = make_log({{"a,b", 6}}, 4);
    ProcessTree no_skip = discover(minority);
    CHECK(tree_to_text(no_skip) == "->(a, b)");
}

TEST_CASE("single repeating activity becomes a self-loop") {
    ProcessTree tree = discover(make_log({{"a,a,a", 4}}));
    CHECK(tree_to_text(tree) == "loop(a, tau)");
}

TEST_CASE("the activity bound projects onto the most frequent activities") {
    EventLog log = make_log({{"a,b,a,b", 5}, {"a,c,a", 1}});
    DiscoveryOptions options;
    options.max_activities = 2;
    ProcessTree tree = discover(log, options);
    auto labels = tree.leaf_labels();
    labels.erase("");
    CHECK(labels.count("c") == 0);
    for (const auto& label : labels) {
        CHECK((label == "a" || label == "b"));
    }
}

TEST_CASE("bound of one yields a leaf-or-loop model") {
    EventLog log = make_log({{"a,b,a", 3}, {"b", 1}});
    DiscoveryOptions options;
    options.max_activities = 1;
    ProcessTree tree = discover(log, options);
    bool ok = tree.is_leaf() || (tree.is_op() && tree.op == Operator::loop);
    CHECK(ok);
}

TEST_CASE("discovered leaves always come from the log alphabet") {
    pim::testing::RandomLogSource source(4042);
    for (int i = 0; i < 100; ++i) {
        EventLog log = source.next();
        ProcessTree tree = discover(log);
        std::set<std::string> alphabet;
        for (ActivityId id : log.alphabet()) {
            alphabet.insert(log.activities().label(id));
        }
        for (const std::string& label : tree.leaf_labels()) {
            CHECK(alphabet.count(label) == 1);
        }
    }
}

TEST_CASE("option validation") {
    EventLog log = make_log({{"a", 1}});
    DiscoveryOptions bad_filter;
    bad_filter.filter_percent = 123.0;
    CHECK_THROWS_AS(discover(log, bad_filter), ParameterError);
    DiscoveryOptions bad_bound;
    bad_bound.max_activities = 0;
    CHECK_THROWS_AS(discover(log, bad_bound), ParameterError);
}

TEST_CASE("aggressive filtering still terminates and yields a tree") {
    EventLog log = pim::testing::running_example();
    for (double f : {0.0, 10.0, 50.0, 99.5}) {
        DiscoveryOptions options;
        options.filter_percent = f;
        ProcessTree tree = discover(log, options);
        CHECK(check_block_structure(to_block_graph(tree)).empty());
    }
}
