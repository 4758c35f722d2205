#include "pim/quality.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "pim/errors.hpp"

namespace pim {

namespace {

using ModelTrace = std::vector<std::string>;

std::vector<ModelTrace> model_traces(const ProcessTree& tree, const QualityOptions& options) {
    auto lang = language(tree, options.loop_bound, options.trace_limit);
    return {lang.begin(), lang.end()};
}

std::vector<std::string> to_labels(const Trace& trace, const EventLog& log) {
    std::vector<std::string> labels;
    labels.reserve(trace.size());
    for (ActivityId id : trace) {
        labels.push_back(log.activities().label(id));
    }
    return labels;
}

// Levenshtein distance with unit insert/delete cost and substitution cost 2,
// which equals |a| + |b| - 2 * LCS(a, b).
std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::size_t> previous(b.size() + 1), current(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        previous[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        current[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t subst = previous[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 2);
            current[j] = std::min({previous[j] + 1, current[j - 1] + 1, subst});
        }
        std::swap(previous, current);
    }
    return previous[b.size()];
}

}  // namespace

double fitness(const ProcessTree& tree, const EventLog& log, const QualityOptions& options) {
    if (log.empty()) {
        return 1.0;
    }
    std::vector<ModelTrace> model = model_traces(tree, options);
    if (model.empty()) {
        throw InternalError("a process tree language is never empty");
    }
    std::size_t shortest = model.front().size();
    for (const ModelTrace& m : model) {
        shortest = std::min(shortest, m.size());
    }
    // Nearest-model-trace search, pruned by the length-difference lower bound.
    std::sort(model.begin(), model.end(), [](const ModelTrace& x, const ModelTrace& y) {
        if (x.size() != y.size()) {
            return x.size() < y.size();
        }
        return x < y;
    });

    double weighted = 0.0;
    std::uint64_t total = 0;
    auto trace_cost = [&](const std::vector<std::string>& labels) {
        std::size_t best = static_cast<std::size_t>(-1);
        for (const ModelTrace& m : model) {
            std::size_t bound = m.size() > labels.size() ? m.size() - labels.size()
                                                         : labels.size() - m.size();
            if (bound >= best) {
                if (m.size() > labels.size() && m.size() - labels.size() >= best) {
                    break;  // model traces only get longer from here
                }
                continue;
            }
            best = std::min(best, edit_distance(labels, m));
            if (best == 0) {
                break;
            }
        }
        return best;
    };

    for (const auto& [trace, count] : log.variants()) {
        std::vector<std::string> labels = to_labels(trace, log);
        std::size_t cost = trace_cost(labels);
        double denom = static_cast<double>(labels.size() + shortest);
        double value = denom == 0.0 ? 1.0 : 1.0 - static_cast<double>(cost) / denom;
        weighted += value * static_cast<double>(count);
        total += count;
    }
    if (log.empty_count() > 0) {
        bool model_has_empty = shortest == 0;
        double value = model_has_empty ? 1.0 : 0.0;
        weighted += value * static_cast<double>(log.empty_count());
        total += log.empty_count();
    }
    return weighted / static_cast<double>(total);
}

double precision(const ProcessTree& tree, const EventLog& log, const QualityOptions& options) {
    std::vector<ModelTrace> model = model_traces(tree, options);

    // Prefix automaton of the model language.
    struct State {
        std::map<std::string, std::size_t> next;
    };
    std::vector<State> states(1);
    for (const ModelTrace& m : model) {
        std::size_t state = 0;
        for (const std::string& label : m) {
            auto it = states[state].next.find(label);
            if (it == states[state].next.end()) {
                states.push_back({});
                it = states[state].next.emplace(label, states.size() - 1).first;
            }
            state = it->second;
        }
    }

    // Walk each log trace, counting every reached state as visited and the
    // continuations taken from it. A trace leaving the automaton stops
    // counting there; its remaining suffix is unobservable.
    std::vector<std::uint64_t> visits(states.size(), 0);
    std::vector<std::map<std::string, std::uint64_t>> observed(states.size());
    for (const auto& [trace, count] : log.variants()) {
        std::size_t state = 0;
        visits[0] += count;
        for (ActivityId id : trace) {
            const std::string& label = log.activities().label(id);
            auto it = states[state].next.find(label);
            if (it == states[state].next.end()) {
                break;
            }
            observed[state][label] += count;
            state = it->second;
            visits[state] += count;
        }
    }
    visits[0] += log.empty_count();

    double enabled_weight = 0.0;
    double escaping_weight = 0.0;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (visits[s] == 0) {
            continue;
        }
        double w = static_cast<double>(visits[s]);
        enabled_weight += w * static_cast<double>(states[s].next.size());
        std::size_t observed_here = observed[s].size();
        escaping_weight += w * static_cast<double>(states[s].next.size() - observed_here);
    }
    if (enabled_weight == 0.0) {
        return 1.0;
    }
    return 1.0 - escaping_weight / enabled_weight;
}

Simplicity simplicity(const BlockGraph& graph) {
    return {graph.size(), graph.cfc()};
}

QualityReport evaluate(const ProcessTree& tree, const EventLog& log, const QualityOptions& options) {
    QualityReport report;
    report.fitness = fitness(tree, log, options);
    report.precision = precision(tree, log, options);
    double sum = report.fitness + report.precision;
    report.f_score = sum == 0.0 ? 0.0 : 2.0 * report.fitness * report.precision / sum;
    Simplicity simple = simplicity(to_block_graph(tree));
    report.size = simple.size;
    report.cfc = simple.cfc;
    return report;
}

std::string report_to_json(const QualityReport& report) {
    std::ostringstream out;
    out << "{\"fitness\": " << report.fitness << ", \"precision\": " << report.precision
        << ", \"f_score\": " << report.f_score << ", \"size\": " << report.size
        << ", \"cfc\": " << report.cfc << "}";
    return out.str();
}

std::string report_to_table(const QualityReport& report) {
    std::ostringstream out;
    char line[64];
    std::snprintf(line, sizeof line, "fitness    %8.4f\n", report.fitness);
    out << line;
    std::snprintf(line, sizeof line, "precision  %8.4f\n", report.precision);
    out << line;
    std::snprintf(line, sizeof line, "f-score    %8.4f\n", report.f_score);
    out << line;
    out << "size       " << report.size << "\n";
    out << "cfc        " << report.cfc << "\n";
    return out.str();
}

}  // namespace pim
