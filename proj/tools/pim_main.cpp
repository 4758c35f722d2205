// Command-line front end for the pim shared library. Subcommands:
//   discover  mine a process tree from an event log
//   graph     export the (filtered) directly-follows graph as DOT
//   evaluate  score a tree against a log
//   scores    dump the pairwise relation-score table as CSV
//
// Exit codes: 0 success, 1 usage or parameter error, 2 I/O or parse error,
// 3 resource guard exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pim/pim.h"

namespace {

struct CommonOptions {
    std::string input;
    std::string format = "csv";
    std::string case_col = "case";
    std::string activity_col = "activity";
    std::string time_col;
    std::string delimiter = ",";
    double filter_percent = 99.5;
    std::string output;
    bool verbose = false;
};

void add_input_flags(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("input", options.input, "input file, or - for stdin")->required();
    cmd->add_option("--format", options.format, "input format: csv, xes, or variants")
        ->check(CLI::IsMember({"csv", "xes", "variants"}))
        ->capture_default_str();
    cmd->add_option("--case-col", options.case_col, "CSV case-id column")->capture_default_str();
    cmd->add_option("--activity-col", options.activity_col, "CSV activity column")
        ->capture_default_str();
    cmd->add_option("--time-col", options.time_col, "CSV timestamp column (optional)");
    cmd->add_option("--delimiter", options.delimiter, "CSV field delimiter")->capture_default_str();
    cmd->add_option("-f,--filter", options.filter_percent,
                    "percentile of dfg+ifg edges to keep, in [0,100]")
        ->capture_default_str();
    cmd->add_option("--output,-o", options.output, "output file (default: stdout)");
    cmd->add_flag("--verbose,-v", options.verbose, "diagnostics on stderr");
}

[[noreturn]] void fail(pim_status status) {
    std::cerr << "error: " << pim_last_error() << "\n";
    std::exit(static_cast<int>(status));
}

std::string read_input(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open file: " << path << "\n";
        std::exit(2);
    }
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') {
            std::cout << "\n";
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write file: " << path << "\n";
        std::exit(2);
    }
    out << content;
}

pim_log* load_log(const CommonOptions& options) {
    std::string data = read_input(options.input);
    if (options.delimiter.size() != 1) {
        std::cerr << "error: the delimiter must be a single character\n";
        std::exit(1);
    }
    pim_log* log = nullptr;
    pim_status status = PIM_OK;
    if (options.format == "csv") {
        pim_csv_options csv{};
        csv.case_column = options.case_col.c_str();
        csv.activity_column = options.activity_col.c_str();
        csv.time_column = options.time_col.empty() ? nullptr : options.time_col.c_str();
        csv.delimiter = options.delimiter[0];
        csv.has_header = 1;
        status = pim_log_from_csv(data.data(), data.size(), &csv, &log);
    } else if (options.format == "xes") {
        status = pim_log_from_xes(data.data(), data.size(), &log);
    } else {
        status = pim_log_from_variants(data.data(), data.size(), &log);
    }
    if (status != PIM_OK) {
        fail(status);
    }
    return log;
}

void print_log_stats(const pim_log* log) {
    pim_log_stats stats{};
    if (pim_log_get_stats(log, &stats) != PIM_OK) {
        return;
    }
    std::cerr << "log: " << stats.traces << " traces, " << stats.events << " events, "
              << stats.alphabet_size << " activities, " << stats.distinct_variants
              << " distinct variants, " << stats.empty_traces << " empty traces";
    if (stats.warnings > 0) {
        std::cerr << ", " << stats.warnings << " warnings";
    }
    std::cerr << "\n";
}

int run_discover(const CommonOptions& options, int max_activities, int exhaustive_limit,
                 const std::string& emit, int loop_bound, int top_k) {
    pim_log* log = load_log(options);
    if (options.verbose) {
        print_log_stats(log);
    }

    pim_discover_options discover_options;
    pim_discover_options_init(&discover_options);
    discover_options.filter_percent = options.filter_percent;
    discover_options.max_activities = max_activities;
    discover_options.exhaustive_limit = exhaustive_limit;

    const char* trace_env = std::getenv("PIM_TRACE");
    bool tracing = (trace_env != nullptr && std::string(trace_env) == "1") || options.verbose;

    pim_tree* tree = nullptr;
    pim_status status;
    char* trace_json = nullptr;
    if (tracing) {
        discover_options.debug_top_k = top_k;
        status = pim_discover_traced(log, &discover_options, &tree, &trace_json);
    } else {
        status = pim_discover(log, &discover_options, &tree);
    }
    if (status != PIM_OK) {
        pim_log_free(log);
        fail(status);
    }
    if (trace_json != nullptr) {
        std::cerr << "trace: " << trace_json << "\n";
        pim_string_free(trace_json);
    }

    pim_tree* normalized = nullptr;
    status = pim_tree_normalize(tree, &normalized);
    if (status != PIM_OK) {
        fail(status);
    }

    char* text = nullptr;
    if (emit == "tree") {
        status = pim_tree_to_text(normalized, &text);
    } else if (emit == "dot") {
        status = pim_tree_to_model_dot(normalized, &text);
    } else if (emit == "bpmn-json") {
        status = pim_tree_to_model_json(normalized, &text);
    } else {  // report
        pim_quality quality{};
        status = pim_evaluate(normalized, log, loop_bound, 0, &quality);
        if (status == PIM_OK) {
            status = pim_quality_to_table(&quality, &text);
        }
    }
    if (status != PIM_OK) {
        fail(status);
    }
    write_output(options.output, text);
    pim_string_free(text);
    pim_tree_free(normalized);
    pim_tree_free(tree);
    pim_log_free(log);
    return 0;
}

int run_graph(const CommonOptions& options, bool no_overlay) {
    pim_log* log = load_log(options);
    if (options.verbose) {
        print_log_stats(log);
    }
    char* dot = nullptr;
    pim_status status = pim_graph_dot(log, options.filter_percent, no_overlay ? 0 : 1, &dot);
    if (status != PIM_OK) {
        fail(status);
    }
    write_output(options.output, dot);
    pim_string_free(dot);
    pim_log_free(log);
    return 0;
}

int run_evaluate(const CommonOptions& options, const std::string& tree_path, int loop_bound,
                 std::uint64_t trace_limit, bool as_json) {
    pim_log* log = load_log(options);
    std::string tree_text = read_input(tree_path);
    pim_tree* tree = nullptr;
    pim_status status = pim_tree_parse(tree_text.c_str(), &tree);
    if (status != PIM_OK) {
        fail(status);
    }
    pim_quality quality{};
    status = pim_evaluate(tree, log, loop_bound, trace_limit, &quality);
    if (status != PIM_OK) {
        fail(status);
    }
    char* text = nullptr;
    status = as_json ? pim_quality_to_json(&quality, &text) : pim_quality_to_table(&quality, &text);
    if (status != PIM_OK) {
        fail(status);
    }
    write_output(options.output, text);
    pim_string_free(text);
    pim_tree_free(tree);
    pim_log_free(log);
    return 0;
}

int run_scores(const CommonOptions& options) {
    pim_log* log = load_log(options);
    char* csv = nullptr;
    pim_status status = pim_score_table_csv(log, options.filter_percent, &csv);
    if (status != PIM_OK) {
        fail(status);
    }
    write_output(options.output, csv);
    pim_string_free(csv);
    pim_log_free(log);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pim: probabilistic inductive process discovery"};
    app.require_subcommand(1);

    CommonOptions discover_options;
    int max_activities = 0;
    int exhaustive_limit = 12;
    int discover_loop_bound = 3;
    std::string emit = "tree";
    CLI::App* discover = app.add_subcommand("discover", "mine a process tree from an event log");
    add_input_flags(discover, discover_options);
    discover->add_option("--max-activities", max_activities,
                         "restrict discovery to the k most frequent activities");
    discover->add_option("--exhaustive-limit", exhaustive_limit,
                         "largest alphabet searched exhaustively")
        ->capture_default_str();
    discover->add_option("--emit", emit, "output kind")
        ->check(CLI::IsMember({"tree", "dot", "bpmn-json", "report"}))
        ->capture_default_str();
    discover->add_option("--loop-bound", discover_loop_bound,
                         "loop unrolling bound for --emit report")
        ->capture_default_str();
    int top_k = 3;
    discover->add_option("--top-k", top_k, "cuts listed per step in the recursion trace")
        ->capture_default_str();

    CommonOptions graph_options;
    bool no_overlay = false;
    CLI::App* graph = app.add_subcommand("graph", "export the filtered DFG as DOT");
    add_input_flags(graph, graph_options);
    graph->add_flag("--no-removed", no_overlay, "omit the dashed removed-edges overlay");

    CommonOptions evaluate_options;
    std::string tree_path;
    int loop_bound = 3;
    std::uint64_t trace_limit = 0;
    bool as_json = false;
    CLI::App* evaluate = app.add_subcommand("evaluate", "score a process tree against a log");
    add_input_flags(evaluate, evaluate_options);
    evaluate->add_option("--tree", tree_path, "process tree file (text format)")->required();
    evaluate->add_option("--loop-bound", loop_bound, "loop unrolling bound")->capture_default_str();
    evaluate->add_option("--trace-limit", trace_limit, "model language guard (0 = default)");
    evaluate->add_flag("--json", as_json, "print the report as JSON");

    CommonOptions scores_options;
    CLI::App* scores = app.add_subcommand("scores", "dump the pairwise relation scores as CSV");
    add_input_flags(scores, scores_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (discover->parsed()) {
            return run_discover(discover_options, max_activities, exhaustive_limit, emit,
                                discover_loop_bound, top_k);
        }
        if (graph->parsed()) {
            return run_graph(graph_options, no_overlay);
        }
        if (evaluate->parsed()) {
            return run_evaluate(evaluate_options, tree_path, loop_bound, trace_limit, as_json);
        }
        if (scores->parsed()) {
            return run_scores(scores_options);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
