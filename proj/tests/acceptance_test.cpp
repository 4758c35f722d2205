// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// assertion fails. Each criterion pins its tolerances in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pim/block_graph.hpp"
#include "pim/discovery.hpp"
#include "pim/errors.hpp"
#include "pim/quality.hpp"
#include "pim/splitting.hpp"
#include "test_support.hpp"

using namespace pim;
using pim::testing::make_log;

namespace {

int failures = 0;
std::vector<std::string> current_problems;
std::vector<ProcessTree> discovered_trees;  // fed into the structural check

void expect(bool condition, const std::string& what) {
    if (!condition) {
        current_problems.push_back(what);
    }
}

ProcessTree track(ProcessTree tree) {
    discovered_trees.push_back(tree);
    return tree;
}

template <typename Fn>
void criterion(int number, const std::string& title, Fn&& body) {
    current_problems.clear();
    auto begin = std::chrono::steady_clock::now();
    std::string note;
    try {
        note = body();
    } catch (const std::exception& e) {
        current_problems.push_back(std::string("exception: ") + e.what());
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - begin)
                       .count();
    if (current_problems.empty()) {
        std::printf("criterion %d: PASS  (%lld ms) %s%s%s\n", number,
                    static_cast<long long>(elapsed), title.c_str(), note.empty() ? "" : " — ",
                    note.c_str());
    } else {
        ++failures;
        std::printf("criterion %d: FAIL  (%lld ms) %s\n", number, static_cast<long long>(elapsed),
                    title.c_str());
        for (const std::string& problem : current_problems) {
            std::printf("  - %s\n", problem.c_str());
        }
    }
}

ActivityId id_of(const EventLog& log, const char* label) {
    return log.activities().find(label);
}

std::vector<ActivityId> ids_of(const EventLog& log, const std::vector<const char*>& labels) {
    std::vector<ActivityId> ids;
    for (const char* label : labels) {
        ids.push_back(id_of(log, label));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

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
    if (tree.op == Operator::xor_choice || tree.op == Operator::parallel) {
        std::sort(parts.begin(), parts.end());
    }
    std::string out = operator_name(tree.op);
    out += "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? "," : "") + parts[i];
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
    if ((cut.op == Operator::xor_choice || cut.op == Operator::parallel) && right < left) {
        std::swap(left, right);
    }
    return std::string(operator_name(cut.op)) + ":" + left + "|" + right;
}

std::string criterion_1() {
    EventLog log = make_log({{"a,a,b,c,b,b,a,b", 1}});
    FollowsGraphs g = build_follows_graphs(log);
    expect(g.dfg_count(id_of(log, "a"), id_of(log, "b")) == 2, "|a->b| must be exactly 2");
    expect(g.ifg_count(id_of(log, "a"), id_of(log, "b")) == 4, "|a=>b| must be exactly 4");
    return "|a->b| = 2, |a=>b| = 4";
}

std::string criterion_2() {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);

    double xor_bg = relation_score(ScoreKind::xor_choice, id_of(log, "b"), id_of(log, "g"), g);
    expect(xor_bg == 1.0, "xor(b,g) must be exactly 1");

    double para_bc = relation_score(ScoreKind::parallel, id_of(log, "b"), id_of(log, "c"), g);
    expect(std::abs(para_bc - 5.0 / 7.0) <= 1e-9, "para(b,c) must be 5/7 within 1e-9");

    double seq_ag = relation_score(ScoreKind::sequence, id_of(log, "a"), id_of(log, "g"), g);
    expect(std::abs(seq_ag - 11.0 / 12.0) <= 0.01, "seq(a,g) must be 11/12 within .01");

    FollowsGraphs no_cg = g;
    no_cg.dfg.erase({id_of(log, "c"), id_of(log, "g")});
    no_cg.dfg.erase({id_of(log, "g"), id_of(log, "c")});
    double xor_ag = relation_score(ScoreKind::xor_choice, id_of(log, "a"), id_of(log, "g"), no_cg);
    expect(std::abs(xor_ag - 0.156) <= 0.01, "xor(a,g) on c<->g-filtered graphs must be .156 within .01");

    char note[160];
    std::snprintf(note, sizeof note, "xor(b,g)=%.3f para(b,c)=%.6f seq(a,g)=%.4f xor(a,g)=%.4f",
                  xor_bg, para_bc, seq_ag, xor_ag);
    return note;
}

std::string criterion_3() {
    EventLog log = pim::testing::running_example();
    FollowsGraphs g = build_follows_graphs(log);
    FollowsGraphs filtered = filter_graphs(g, 81.0);

    // Precondition of this golden: precisely the four frequency-1 dfg edges go.
    std::set<std::pair<ActivityId, ActivityId>> removed;
    for (const auto& [edge, f] : g.dfg) {
        if (filtered.dfg.count(edge) == 0) {
            removed.insert(edge);
        }
    }
    std::set<std::pair<ActivityId, ActivityId>> expected_removed = {
        {id_of(log, "c"), id_of(log, "e")},
        {id_of(log, "b"), id_of(log, "f")},
        {id_of(log, "g"), id_of(log, "c")},
        {id_of(log, "c"), id_of(log, "g")},
    };
    expect(removed == expected_removed, "the filter must drop exactly the four frequency-1 dfg edges");

    DiscoveryOptions options;
    options.filter_percent = 81.0;
    DiscoveryResult result = discover_with_trace(log, options);
    track(result.tree);

    ProcessTree expected = parse_tree_text("->(a, x(g, ->(loop(/\\(b,c), d), x(e,f))))");
    expect(canonical(normalize(result.tree)) == canonical(normalize(expected)),
           "discovered tree must equal ->(a, x(g, ->(loop(/\\(b,c), d), x(e,f)))) after normalization");

    std::vector<std::string> cut_order;
    for (const DiscoveryStep& step : result.steps) {
        if (step.cut.has_value()) {
            cut_order.push_back(cut_signature(*step.cut, log.activities()));
        }
    }
    std::vector<std::string> expected_cuts = {"seq:a|bcdefg", "xor:bcdef|g", "seq:bcd|ef",
                                              "xor:e|f", "loop:bc|d", "and:b|c"};
    expect(cut_order.size() == 6, "exactly six cuts must occur");
    for (const std::string& c : expected_cuts) {
        expect(std::count(cut_order.begin(), cut_order.end(), c) == 1, "missing cut " + c);
    }
    auto position = [&](const std::string& s) {
        return std::find(cut_order.begin(), cut_order.end(), s) - cut_order.begin();
    };
    expect(position("seq:a|bcdefg") < position("xor:bcdef|g"), "root sequence must come first");
    expect(position("xor:bcdef|g") < position("seq:bcd|ef"), "the choice precedes the inner sequence");
    expect(position("seq:bcd|ef") < position("loop:bc|d"), "the inner sequence precedes the loop");
    expect(position("loop:bc|d") < position("and:b|c"), "the loop precedes the parallel pair");
    return "tree and cut sequence match";
}

std::string criterion_4() {
    // Loop versus parallel on the inner sublog.
    EventLog inner = pim::testing::loop_sublog();
    FollowsGraphs g5 = build_follows_graphs(inner);
    ScoreTable t5(g5);
    LogShape shape5 = log_shape(inner);
    ActivityId b = id_of(inner, "b"), c = id_of(inner, "c"), d = id_of(inner, "d");
    std::vector<ActivityId> bc{std::min(b, c), std::max(b, c)};
    std::vector<ActivityId> cd{std::min(c, d), std::max(c, d)};

    double loop_score = aggregate_loop(bc, {d}, {d}, {d}, t5, g5, shape5);
    double para_score = aggregate_para({b}, cd, t5, shape5);
    expect(loop_score > para_score, "the loop cut must outscore the parallel cut on the inner log");

    Cut oracle5 = pim::testing::oracle_best_cut(g5, shape5);
    expect(oracle5.op == Operator::loop && oracle5.sigma1 == bc,
           "the enumeration oracle must agree on the loop cut");
    Cut fast5 = find_cut(g5, shape5);
    expect(fast5.op == oracle5.op && fast5.sigma1 == oracle5.sigma1 && fast5.score == oracle5.score,
           "find_cut must agree with the oracle on the inner log");

    double r5 = repetition_factor(shape5);
    expect(std::abs(r5 - 0.75) <= 0.1, "r on the inner log must sit near the printed .75");

    // Sequence versus choice on the filtered running example.
    EventLog log = pim::testing::running_example();
    FollowsGraphs filtered = filter_graphs(build_follows_graphs(log), 81.0);
    ScoreTable table(filtered);
    double seq_score = aggregate_xor_seq(Operator::sequence, ids_of(log, {"a"}),
                                         ids_of(log, {"b", "c", "d", "e", "f", "g"}), table);
    double xor_score = aggregate_xor_seq(Operator::xor_choice,
                                         ids_of(log, {"a", "b", "c", "d", "e", "f"}),
                                         ids_of(log, {"g"}), table);
    expect(seq_score > xor_score, "the leading sequence must outscore the g-choice after filtering");
    expect(std::abs(xor_score - 0.54) <= 0.1, "the choice aggregate must sit near the printed .54");

    Cut root = find_cut(filtered, log_shape(log));
    expect(root.op == Operator::sequence && root.sigma1 == ids_of(log, {"a"}),
           "exhaustive search must select the leading sequence cut");

    char note[200];
    std::snprintf(note, sizeof note, "loop %.3f > para %.3f; seq %.3f > xor %.3f", loop_score,
                  para_score, seq_score, xor_score);
    return note;
}

std::string criterion_5() {
    EventLog majority = make_log({{"a,b", 4}}, 6);
    ProcessTree skip_tree = track(discover(majority));
    bool has_skip = skip_tree.is_op() && skip_tree.op == Operator::xor_choice &&
                    skip_tree.children.size() == 2 && skip_tree.children.front().is_silent();
    expect(has_skip, "6 empty of 10 traces must produce a tree rooted at x(tau, .)");

    EventLog minority = make_log({{"a,b", 6}}, 4);
    ProcessTree plain_tree = track(discover(minority));
    bool top_skip = plain_tree.is_op() && plain_tree.op == Operator::xor_choice &&
                    std::any_of(plain_tree.children.begin(), plain_tree.children.end(),
                                [](const ProcessTree& child) { return child.is_silent(); });
    expect(!top_skip, "4 empty of 10 traces must not produce a top-level skip");
    return "skip introduced at 6/10 empties, withheld at 4/10";
}

std::string criterion_6() {
    // (a) score range
    {
        pim::testing::RandomLogSource source(11);
        for (int i = 0; i < 200; ++i) {
            EventLog log = source.next(6, 8);
            FollowsGraphs g = build_follows_graphs(log);
            ScoreTable table(g);
            for (std::size_t x = 0; x < table.size(); ++x) {
                for (std::size_t y = 0; y < table.size(); ++y) {
                    for (ScoreKind kind : kAllScoreKinds) {
                        double s = table.at(kind, x, y);
                        if (!(s >= 0.0 && s <= 1.0)) {
                            expect(false, "score outside [0,1]");
                        }
                    }
                }
            }
        }
    }
    // (b) filter monotonicity and tie-group uniformity
    {
        pim::testing::RandomLogSource source(12);
        for (int i = 0; i < 200; ++i) {
            EventLog log = source.next(6, 8);
            FollowsGraphs g = build_follows_graphs(log);
            FollowsGraphs previous = filter_graphs(g, 0.0);
            for (double f : {25.0, 50.0, 75.0, 100.0}) {
                FollowsGraphs current = filter_graphs(g, f);
                for (const auto& [edge, freq] : previous.dfg) {
                    if (current.dfg.count(edge) == 0) {
                        expect(false, "filter not monotone (dfg)");
                    }
                }
                for (const auto& [edge, freq] : previous.ifg) {
                    if (current.ifg.count(edge) == 0) {
                        expect(false, "filter not monotone (ifg)");
                    }
                }
                std::set<std::uint64_t> kept, dropped;
                auto classify = [&](const EdgeMap& all, const EdgeMap& retained) {
                    for (const auto& [edge, freq] : all) {
                        (retained.count(edge) ? kept : dropped).insert(freq);
                    }
                };
                classify(g.dfg, current.dfg);
                classify(g.ifg, current.ifg);
                for (std::uint64_t freq : dropped) {
                    if (kept.count(freq)) {
                        expect(false, "tie group split by the filter");
                    }
                }
                previous = current;
            }
        }
    }
    // (c) split event conservation
    {
        pim::testing::RandomLogSource source(13);
        int done = 0;
        while (done < 200) {
            EventLog log = source.next(6, 8);
            auto alphabet = log.alphabet();
            if (alphabet.size() < 2) {
                continue;
            }
            std::uniform_int_distribution<std::size_t> pick(1, alphabet.size() - 1);
            std::size_t cutpoint = pick(source.rng());
            Cut cut;
            cut.sigma1.assign(alphabet.begin(), alphabet.begin() + cutpoint);
            cut.sigma2.assign(alphabet.begin() + cutpoint, alphabet.end());
            cut.redo_starts = cut.sigma2;
            cut.redo_ends = cut.sigma2;
            for (Operator op : {Operator::xor_choice, Operator::sequence, Operator::parallel,
                                Operator::loop}) {
                cut.op = op;
                SplitResult parts = split(log, cut);
                if (parts.left.total_events() + parts.right.total_events() +
                        parts.filtered_events != log.total_events()) {
                    expect(false, "events not conserved by split");
                }
            }
            ++done;
        }
    }
    // (d) find_cut equals the enumeration oracle
    {
        pim::testing::RandomLogSource source(14);
        int done = 0;
        while (done < 200) {
            EventLog log = source.next(6, 8);
            if (log.alphabet().size() < 2) {
                continue;
            }
            FollowsGraphs g = build_follows_graphs(log);
            LogShape shape = log_shape(log);
            Cut fast = find_cut(g, shape);
            Cut slow = pim::testing::oracle_best_cut(g, shape);
            if (!(fast.op == slow.op && fast.sigma1 == slow.sigma1 && fast.score == slow.score)) {
                expect(false, "find_cut diverged from the enumeration oracle");
            }
            ++done;
        }
    }
    // (e) discovery termination and determinism
    {
        pim::testing::RandomLogSource source(15);
        for (int i = 0; i < 200; ++i) {
            EventLog log = source.next(6, 8);
            ProcessTree first = track(discover(log));
            ProcessTree second = discover(log);
            if (!(first == second)) {
                expect(false, "discovery not deterministic");
            }
        }
    }
    // (f) perfect fitness and precision on self-generated logs
    {
        pim::testing::RandomTreeSource source(16);
        int done = 0;
        int attempts = 0;
        while (done < 200 && attempts < 2000) {
            ++attempts;
            ProcessTree tree = source.next(2, 3);
            try {
                EventLog log;
                for (const auto& trace : language(tree, 1, 20000)) {
                    if (trace.empty()) {
                        log.add_empty();
                    } else {
                        log.add_trace(trace);
                    }
                }
                if (log.variants().empty()) {
                    continue;
                }
                QualityOptions options;
                options.loop_bound = 1;
                if (std::abs(fitness(tree, log, options) - 1.0) > 1e-12) {
                    expect(false, "fitness below 1 on a self-generated log");
                }
                if (std::abs(precision(tree, log, options) - 1.0) > 1e-12) {
                    expect(false, "precision below 1 on a self-generated log");
                }
                ++done;
            } catch (const ResourceError&) {
            }
        }
        expect(done >= 200, "fewer than 200 self-generated quality cases");
    }
    return "six property suites, 200+ cases each";
}

std::string criterion_7() {
    std::size_t checked = 0;
    for (const ProcessTree& tree : discovered_trees) {
        BlockGraph graph = to_block_graph(tree);
        for (const auto& node : graph.nodes) {
            bool known = node.type == BlockGraph::NodeType::start ||
                         node.type == BlockGraph::NodeType::end ||
                         node.type == BlockGraph::NodeType::task ||
                         BlockGraph::is_gateway(node.type);
            if (!known) {
                expect(false, "unexpected node type in a block graph");
            }
        }
        std::string problem = check_block_structure(graph);
        if (!problem.empty()) {
            expect(false, "block-structure check failed: " + problem);
        }
        ++checked;
    }
    expect(checked >= 200, "expected at least 200 discovered trees to check");
    return std::to_string(checked) + " discovered trees, all block-structured with XOR/AND only";
}

std::string criterion_8() {
    auto synthesize = [](std::size_t traces, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> length(6, 12);
        std::uniform_int_distribution<int> activity(0, 19);
        EventLog log;
        for (std::size_t i = 0; i < traces; ++i) {
            std::vector<std::string> labels;
            std::size_t len = length(rng);
            for (std::size_t j = 0; j < len; ++j) {
                labels.push_back("act" + std::to_string(activity(rng)));
            }
            log.add_trace(labels);
        }
        return log;
    };

    auto time_discovery = [](const EventLog& log) {
        double best = 1e18;
        for (int run = 0; run < 3; ++run) {
            auto begin = std::chrono::steady_clock::now();
            ProcessTree tree = discover(log);
            auto elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - begin)
                               .count();
            best = std::min(best, elapsed);
            if (run == 0) {
                discovered_trees.push_back(tree);
            }
        }
        return best;
    };

    EventLog base = synthesize(10000, 77);
    double base_time = time_discovery(base);
    expect(base_time < 10.0, "10k x 20 discovery must finish inside 10 seconds");

    EventLog doubled = synthesize(20000, 78);
    double doubled_time = time_discovery(doubled);
    expect(doubled_time < 2.5 * base_time,
           "doubling the trace count must scale runtime by less than 2.5x");

    char note[120];
    std::snprintf(note, sizeof note, "10k traces: %.3fs; 20k traces: %.3fs (ratio %.2f)", base_time,
                  doubled_time, doubled_time / base_time);
    return note;
}

std::string criterion_9() {
    return "declared: external benchmark tables and the user study are out of desk scale; "
           "covered by criteria 1-8 instead";
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "follows-relation golden", criterion_1);
    criterion(2, "relation-score goldens on the running example", criterion_2);
    criterion(3, "end-to-end discovery golden with cut sequence", criterion_3);
    criterion(4, "correction-term decision checks", criterion_4);
    criterion(5, "delayed skip introduction", criterion_5);
    criterion(6, "randomized property suites", criterion_6);
    criterion(7, "structural check over all discovered trees", criterion_7);
    criterion(8, "performance smoke and scaling", criterion_8);
    criterion(9, "declared non-reproducible externals", criterion_9);

    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
