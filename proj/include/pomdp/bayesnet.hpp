#pragma once

// Discrete Bayesian networks for channel/signal extraction.
//
// Net text format (line oriented, '#' starts a comment):
//
//   node <name> : <value> <value> ...        declare a node and its domain
//   parents <name> : <parent> <parent> ...   optional; parents must be declared
//   cpt <name>                               followed by one row per parent
//     <p> <p> ...                            assignment, first parent most
//                                            significant; each row sums to 1
//   discretize <name> : <cut> <cut> ...      optional; numeric evidence x maps
//                                            to the number of cuts <= x
//
// All `node` lines come before the `parents`/`cpt`/`discretize` lines that
// mention them. A node without a `parents` line is a root.

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/model.hpp"
#include "pomdp/text.hpp"

namespace pomdp {

struct BnNode {
    std::string name;
    std::vector<std::string> domain;
    std::vector<std::size_t> parents;  // node indices
    std::vector<double> cpt;           // rows x domain, row-major
    std::vector<double> cuts;          // ascending discretization cut points; empty = none
};

class DiscreteBayesNet {
public:
    DiscreteBayesNet() = default;

    explicit DiscreteBayesNet(std::vector<BnNode> nodes) : nodes_(std::move(nodes)) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto& n = nodes_[i];
            if (n.domain.empty()) throw ValidationError("node '" + n.name + "': empty domain");
            for (std::size_t j = 0; j < i; ++j) {
                if (nodes_[j].name == n.name) throw ValidationError("duplicate node '" + n.name + "'");
            }
            for (std::size_t a = 0; a < n.domain.size(); ++a) {
                for (std::size_t b = 0; b < a; ++b) {
                    if (n.domain[a] == n.domain[b]) throw ValidationError("node '" + n.name + "': duplicate value");
                }
            }
            for (std::size_t p : n.parents) {
                if (p >= nodes_.size()) throw ValidationError("node '" + n.name + "': parent out of range");
                if (p == i) throw ValidationError("node '" + n.name + "' is its own parent");
            }
            if (!std::is_sorted(n.cuts.begin(), n.cuts.end())) {
                throw ValidationError("node '" + n.name + "': cut points not ascending");
            }
            if (!n.cuts.empty() && n.cuts.size() + 1 != n.domain.size()) {
                throw ValidationError("node '" + n.name + "': need one cut point fewer than values");
            }
        }
        order_ = topological_order();
        for (std::size_t i = 0; i < nodes_.size(); ++i) check_cpt(i);
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    const BnNode& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<BnNode>& nodes() const noexcept { return nodes_; }
    /// Parents before children.
    const std::vector<std::size_t>& topological() const noexcept { return order_; }

    std::size_t index(std::string_view name) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].name == name) return i;
        }
        throw LookupError("unknown node '" + std::string(name) + "'");
    }

    std::size_t value_index(std::size_t node, std::string_view value) const {
        const auto& d = nodes_.at(node).domain;
        auto it = std::find(d.begin(), d.end(), value);
        if (it == d.end()) {
            throw LookupError("node '" + nodes_[node].name + "' has no value '" + std::string(value) + "'");
        }
        return static_cast<std::size_t>(it - d.begin());
    }

    std::size_t row_count(std::size_t i) const {
        std::size_t r = 1;
        for (std::size_t p : nodes_[i].parents) r *= nodes_[p].domain.size();
        return r;
    }

    /// P(node = v | parents as in `assignment`), assignment indexed by node.
    double prob(std::size_t i, std::size_t v, const std::vector<std::size_t>& assignment) const {
        std::size_t row = 0;
        for (std::size_t p : nodes_[i].parents) row = row * nodes_[p].domain.size() + assignment[p];
        return nodes_[i].cpt[row * nodes_[i].domain.size() + v];
    }

private:
    std::vector<std::size_t> topological_order() const {
        const std::size_t n = nodes_.size();
        std::vector<std::size_t> indeg(n, 0), order;
        for (std::size_t i = 0; i < n; ++i) indeg[i] = nodes_[i].parents.size();
        std::vector<bool> done(n, false);
        // Kahn's algorithm, lowest index first for a deterministic order.
        while (order.size() < n) {
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (!done[i] && indeg[i] == 0) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) throw ValidationError("network has a cycle");
            done[pick] = true;
            order.push_back(pick);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t p : nodes_[i].parents) {
                    if (p == pick) --indeg[i];
                }
            }
        }
        return order;
    }

    void check_cpt(std::size_t i) const {
        const auto& n = nodes_[i];
        const std::size_t k = n.domain.size(), rows = row_count(i);
        if (n.cpt.size() != rows * k) {
            throw ValidationError("node '" + n.name + "': CPT needs " + std::to_string(rows) + " rows of " +
                                  std::to_string(k));
        }
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (std::size_t v = 0; v < k; ++v) {
                const double p = n.cpt[r * k + v];
                if (!(p >= 0.0 && p <= 1.0)) {
                    throw ValidationError("node '" + n.name + "': CPT row " + std::to_string(r) + " entry outside [0,1]");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbTolerance) {
                throw ValidationError("node '" + n.name + "': CPT row " + std::to_string(r) + " sums to " +
                                      text::format_double(sum));
            }
        }
    }

    std::vector<BnNode> nodes_;
    std::vector<std::size_t> order_;
};

/// Observed value index per node.
using Evidence = std::map<std::size_t, std::size_t>;

/// Value index for a textual observation: a domain value name, or a number
/// binned by the node's cut points.
inline std::size_t evidence_value(const DiscreteBayesNet& net, std::size_t node, std::string_view value) {
    const auto& n = net.node(node);
    auto it = std::find(n.domain.begin(), n.domain.end(), value);
    if (it != n.domain.end()) return static_cast<std::size_t>(it - n.domain.begin());
    if (!n.cuts.empty()) {
        double x = 0.0;
        try {
            x = text::parse_double(value, 0);
        } catch (const ParseError&) {
            throw LookupError("node '" + n.name + "' has no value '" + std::string(value) + "'");
        }
        return static_cast<std::size_t>(std::upper_bound(n.cuts.begin(), n.cuts.end(), x) - n.cuts.begin());
    }
    throw LookupError("node '" + n.name + "' has no value '" + std::string(value) + "'");
}

/// Parses `name=value` pairs.
inline Evidence parse_evidence(const DiscreteBayesNet& net, const std::vector<std::string>& pairs) {
    Evidence ev;
    for (const auto& p : pairs) {
        const auto [k, v] = text::split_once(p, '=');
        if (v.empty()) throw ConfigError("evidence '" + p + "' is not name=value");
        const std::size_t node = net.index(text::trim(k));
        ev[node] = evidence_value(net, node, text::trim(v));
    }
    return ev;
}

namespace detail {

// Table over a sorted variable list, first variable most significant.
struct Factor {
    std::vector<std::size_t> vars;
    std::vector<std::size_t> card;
    std::vector<double> values;

    std::size_t stride(std::size_t pos) const {
        std::size_t s = 1;
        for (std::size_t i = pos + 1; i < card.size(); ++i) s *= card[i];
        return s;
    }
};

inline Factor cpt_factor(const DiscreteBayesNet& net, std::size_t i) {
    Factor f;
    f.vars = net.node(i).parents;
    f.vars.push_back(i);
    std::sort(f.vars.begin(), f.vars.end());
    for (std::size_t v : f.vars) f.card.push_back(net.node(v).domain.size());
    std::size_t total = 1;
    for (std::size_t c : f.card) total *= c;
    f.values.resize(total);
    std::vector<std::size_t> assignment(net.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t k = f.vars.size(); k-- > 0;) {
            assignment[f.vars[k]] = rem % f.card[k];
            rem /= f.card[k];
        }
        f.values[idx] = net.prob(i, assignment[i], assignment);
    }
    return f;
}

inline Factor reduce(const Factor& f, std::size_t var, std::size_t value) {
    const auto it = std::find(f.vars.begin(), f.vars.end(), var);
    if (it == f.vars.end()) return f;
    const std::size_t pos = static_cast<std::size_t>(it - f.vars.begin());
    const std::size_t inner = f.stride(pos), c = f.card[pos];
    Factor g;
    g.vars = f.vars;
    g.card = f.card;
    g.vars.erase(g.vars.begin() + static_cast<std::ptrdiff_t>(pos));
    g.card.erase(g.card.begin() + static_cast<std::ptrdiff_t>(pos));
    g.values.reserve(f.values.size() / c);
    for (std::size_t outer = 0; outer < f.values.size(); outer += inner * c) {
        for (std::size_t j = 0; j < inner; ++j) g.values.push_back(f.values[outer + value * inner + j]);
    }
    return g;
}

inline Factor sum_out(const Factor& f, std::size_t var) {
    const auto it = std::find(f.vars.begin(), f.vars.end(), var);
    const std::size_t pos = static_cast<std::size_t>(it - f.vars.begin());
    const std::size_t inner = f.stride(pos), c = f.card[pos];
    Factor g;
    g.vars = f.vars;
    g.card = f.card;
    g.vars.erase(g.vars.begin() + static_cast<std::ptrdiff_t>(pos));
    g.card.erase(g.card.begin() + static_cast<std::ptrdiff_t>(pos));
    for (std::size_t outer = 0; outer < f.values.size(); outer += inner * c) {
        for (std::size_t j = 0; j < inner; ++j) {
            double s = 0.0;
            for (std::size_t v = 0; v < c; ++v) s += f.values[outer + v * inner + j];
            g.values.push_back(s);
        }
    }
    return g;
}

inline Factor multiply(const Factor& a, const Factor& b) {
    Factor g;
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(g.vars));
    std::vector<std::size_t> sa(g.vars.size(), 0), sb(g.vars.size(), 0);
    std::size_t total = 1;
    for (std::size_t k = 0; k < g.vars.size(); ++k) {
        const std::size_t v = g.vars[k];
        auto ia = std::find(a.vars.begin(), a.vars.end(), v);
        auto ib = std::find(b.vars.begin(), b.vars.end(), v);
        std::size_t c = 0;
        if (ia != a.vars.end()) {
            const std::size_t p = static_cast<std::size_t>(ia - a.vars.begin());
            c = a.card[p];
            sa[k] = a.stride(p);
        }
        if (ib != b.vars.end()) {
            const std::size_t p = static_cast<std::size_t>(ib - b.vars.begin());
            c = b.card[p];
            sb[k] = b.stride(p);
        }
        g.card.push_back(c);
        total *= c;
    }
    g.values.resize(total);
    std::vector<std::size_t> digit(g.vars.size(), 0);
    std::size_t ia = 0, ib = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        g.values[idx] = a.values[ia] * b.values[ib];
        for (std::size_t k = g.vars.size(); k-- > 0;) {
            if (++digit[k] < g.card[k]) {
                ia += sa[k];
                ib += sb[k];
                break;
            }
            digit[k] = 0;
            ia -= sa[k] * (g.card[k] - 1);
            ib -= sb[k] * (g.card[k] - 1);
        }
    }
    return g;
}

} // namespace detail

/// Exact posterior of `query` given evidence, by variable elimination with a
/// greedy smallest-product order (lowest index on ties).
inline std::vector<double> infer_posterior(const DiscreteBayesNet& net, const Evidence& evidence, std::size_t query) {
    using detail::Factor;
    if (query >= net.size()) throw LookupError("query node out of range");
    for (const auto& [node, value] : evidence) {
        if (node >= net.size()) throw LookupError("evidence node out of range");
        if (value >= net.node(node).domain.size()) throw LookupError("evidence value out of range");
    }

    std::vector<Factor> factors;
    for (std::size_t i = 0; i < net.size(); ++i) {
        Factor f = detail::cpt_factor(net, i);
        for (const auto& [node, value] : evidence) f = detail::reduce(f, node, value);
        factors.push_back(std::move(f));
    }
    const bool observed = evidence.count(query) > 0;

    std::vector<std::size_t> hidden;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (evidence.count(i) == 0 && (observed || i != query)) hidden.push_back(i);
    }
    while (!hidden.empty()) {
        std::size_t best_k = 0, best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t k = 0; k < hidden.size(); ++k) {
            std::vector<std::size_t> scope;
            for (const auto& f : factors) {
                if (std::find(f.vars.begin(), f.vars.end(), hidden[k]) != f.vars.end()) {
                    scope.insert(scope.end(), f.vars.begin(), f.vars.end());
                }
            }
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
            std::size_t cost = 1;
            for (std::size_t v : scope) cost *= net.node(v).domain.size();
            if (cost < best_cost) {
                best_cost = cost;
                best_k = k;
            }
        }
        const std::size_t var = hidden[best_k];
        hidden.erase(hidden.begin() + static_cast<std::ptrdiff_t>(best_k));
        Factor prod{{}, {}, {1.0}};
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (std::find(f.vars.begin(), f.vars.end(), var) != f.vars.end()) prod = detail::multiply(prod, f);
            else rest.push_back(std::move(f));
        }
        rest.push_back(detail::sum_out(prod, var));
        factors = std::move(rest);
    }

    Factor result{{}, {}, {1.0}};
    for (const auto& f : factors) result = detail::multiply(result, f);
    double z = 0.0;
    for (double v : result.values) z += v;
    if (!(z > 0.0)) throw ImpossibleEvidence("evidence has zero probability");

    const std::size_t k = net.node(query).domain.size();
    std::vector<double> post(k, 0.0);
    if (observed) {
        post[evidence.at(query)] = 1.0;
        return post;
    }
    for (std::size_t v = 0; v < k; ++v) post[v] = result.values[v] / z;
    return post;
}

inline std::vector<double> infer_posterior(const DiscreteBayesNet& net, const Evidence& evidence,
                                           std::string_view query) {
    return infer_posterior(net, evidence, net.index(query));
}

// ---------------------------------------------------------------------------
// Extraction of the low-level observation

enum class TimePoint { BargeIn, TurnTaking };

/// Query nodes and thresholds. Without a channel node the channel is taken
/// as present (probability 1).
struct ExtractionRule {
    TimePoint time_point = TimePoint::TurnTaking;
    std::optional<std::string> channel_node;
    std::string channel_value = "yes";
    std::string signal_node = "Signal";
    std::string signal_value = "yes";
    double channel_threshold = 0.5;
    double signal_threshold = 0.5;

    void validate() const {
        if (!(channel_threshold > 0.0 && channel_threshold < 1.0) ||
            !(signal_threshold > 0.0 && signal_threshold < 1.0)) {
            throw ConfigError("extraction thresholds must lie in (0,1)");
        }
    }
};

inline ExtractionRule barge_in_rule() { return {TimePoint::BargeIn, std::nullopt, "yes", "Signal", "yes", 0.5, 0.5}; }
inline ExtractionRule turn_taking_rule() { return {TimePoint::TurnTaking, "Channel", "yes", "Signal", "yes", 0.5, 0.5}; }

inline ExtractionRule parse_rule(std::string_view name) {
    if (name == "barge-in") return barge_in_rule();
    if (name == "turn-taking") return turn_taking_rule();
    throw ConfigError("unknown rule '" + std::string(name) + "'");
}

struct Extraction {
    std::string label;  // one of the four channel/signal combinations
    double p_channel = 1.0;
    double p_signal = 0.0;
    bool defer_to_parser = false;  // channel-signal: the utterance parser supplies the observation
};

/// Maps posteriors to a label; a posterior equal to the threshold counts as present.
inline Extraction classify_levels(double p_channel, double p_signal, const ExtractionRule& rule) {
    rule.validate();
    const bool channel = p_channel >= rule.channel_threshold;
    const bool signal = p_signal >= rule.signal_threshold;
    Extraction e;
    e.p_channel = p_channel;
    e.p_signal = p_signal;
    e.label = std::string(channel ? "channel-" : "no-channel-") + (signal ? "signal" : "no-signal");
    e.defer_to_parser = channel && signal;
    return e;
}

inline Extraction extract_observation(const DiscreteBayesNet& net, const ExtractionRule& rule,
                                      const Evidence& evidence) {
    rule.validate();
    const std::size_t sig = net.index(rule.signal_node);
    const double p_signal = infer_posterior(net, evidence, sig)[net.value_index(sig, rule.signal_value)];
    double p_channel = 1.0;
    if (rule.channel_node) {
        const std::size_t ch = net.index(*rule.channel_node);
        p_channel = infer_posterior(net, evidence, ch)[net.value_index(ch, rule.channel_value)];
    }
    return classify_levels(p_channel, p_signal, rule);
}

// ---------------------------------------------------------------------------
// Text format

inline DiscreteBayesNet parse_bayes_net(std::string_view content) {
    std::vector<BnNode> nodes;
    std::vector<bool> has_cpt;
    auto find = [&nodes](std::string_view name, std::size_t line) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].name == name) return i;
        }
        throw ParseError(line, "unknown node '" + std::string(name) + "'");
    };
    auto rows_of = [&nodes](std::size_t i) {
        std::size_t r = 1;
        for (std::size_t p : nodes[i].parents) r *= nodes[p].domain.size();
        return r;
    };

    text::Lines lines(content);
    std::size_t no = 0;
    std::string_view line;
    std::optional<std::size_t> cpt_node;
    std::size_t cpt_rows_left = 0;
    while (lines.next(no, line)) {
        if (cpt_rows_left > 0) {
            const auto toks = text::split_ws(line);
            const std::size_t i = *cpt_node;
            if (toks.size() != nodes[i].domain.size()) {
                throw ParseError(no, "CPT row for '" + nodes[i].name + "' needs " +
                                         std::to_string(nodes[i].domain.size()) + " numbers");
            }
            for (auto t : toks) nodes[i].cpt.push_back(text::parse_double(t, no));
            --cpt_rows_left;
            continue;
        }
        if (text::starts_with_word(line, "node")) {
            const auto [head, rest] = text::split_once(line.substr(4), ':');
            const auto name = text::trim(head);
            if (name.empty() || rest.empty()) throw ParseError(no, "expected 'node <name> : <values>'");
            for (const auto& n : nodes) {
                if (n.name == name) throw ParseError(no, "duplicate node '" + std::string(name) + "'");
            }
            BnNode n;
            n.name = std::string(name);
            for (auto v : text::split_ws(rest)) n.domain.emplace_back(v);
            if (n.domain.empty()) throw ParseError(no, "node '" + n.name + "' has no values");
            nodes.push_back(std::move(n));
            has_cpt.push_back(false);
        } else if (text::starts_with_word(line, "parents")) {
            const auto [head, rest] = text::split_once(line.substr(7), ':');
            const std::size_t i = find(text::trim(head), no);
            if (has_cpt[i]) throw ParseError(no, "parents of '" + nodes[i].name + "' must precede its cpt");
            nodes[i].parents.clear();
            for (auto p : text::split_ws(rest)) nodes[i].parents.push_back(find(p, no));
        } else if (text::starts_with_word(line, "cpt")) {
            const std::size_t i = find(text::trim(line.substr(3)), no);
            if (has_cpt[i]) throw ParseError(no, "second cpt for '" + nodes[i].name + "'");
            has_cpt[i] = true;
            cpt_node = i;
            cpt_rows_left = rows_of(i);
        } else if (text::starts_with_word(line, "discretize")) {
            const auto [head, rest] = text::split_once(line.substr(10), ':');
            const std::size_t i = find(text::trim(head), no);
            nodes[i].cuts.clear();
            for (auto c : text::split_ws(rest)) nodes[i].cuts.push_back(text::parse_double(c, no));
        } else {
            throw ParseError(no, "unexpected line '" + std::string(line) + "'");
        }
    }
    if (cpt_rows_left > 0) throw ParseError(no, "CPT for '" + nodes[*cpt_node].name + "' is missing rows");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!has_cpt[i]) throw ParseError(no, "node '" + nodes[i].name + "' has no cpt");
    }
    return DiscreteBayesNet(std::move(nodes));
}

inline std::string write_bayes_net(const DiscreteBayesNet& net) {
    std::ostringstream out;
    for (const auto& n : net.nodes()) {
        out << "node " << n.name << " :";
        for (const auto& v : n.domain) out << ' ' << v;
        out << '\n';
    }
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& n = net.node(i);
        out << '\n';
        if (!n.parents.empty()) {
            out << "parents " << n.name << " :";
            for (std::size_t p : n.parents) out << ' ' << net.node(p).name;
            out << '\n';
        }
        if (!n.cuts.empty()) {
            out << "discretize " << n.name << " :";
            for (double c : n.cuts) out << ' ' << text::format_double(c);
            out << '\n';
        }
        out << "cpt " << n.name << '\n';
        const std::size_t k = n.domain.size();
        for (std::size_t r = 0; r < net.row_count(i); ++r) {
            out << ' ';
            for (std::size_t v = 0; v < k; ++v) out << ' ' << text::format_double(n.cpt[r * k + v]);
            out << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Example networks. Structure and numbers are illustrative.

namespace bn_examples {

// Recognizer confidence bins: low < 5000 <= medium < 15000 <= high.
inline const std::vector<double> kEcCuts = {5000.0, 15000.0};

inline void add_hypothesis_nodes(std::vector<BnNode>& nodes, std::size_t signal, const std::string& suffix) {
    nodes.push_back({"AC" + suffix, {"0", "1"}, {signal}, {0.8, 0.2, 0.3, 0.7}, {}});
    nodes.push_back({"EC" + suffix, {"low", "medium", "high"}, {signal}, {0.6, 0.3, 0.1, 0.15, 0.35, 0.5}, kEcCuts});
}

/// Barge-in: Signal explains the AC/EC confidences of three hypotheses
/// reported at sound start.
inline DiscreteBayesNet barge_in() {
    std::vector<BnNode> nodes;
    nodes.push_back({"Signal", {"no", "yes"}, {}, {0.5, 0.5}, {}});
    for (const char* h : {"1", "2", "3"}) add_hypothesis_nodes(nodes, 0, h);
    return DiscreteBayesNet(std::move(nodes));
}

/// Turn-taking: Channel (seen through user focus) gates Signal, which
/// explains the element confidences and the parser score of the result.
inline DiscreteBayesNet turn_taking() {
    std::vector<BnNode> nodes;
    nodes.push_back({"Channel", {"no", "yes"}, {}, {0.3, 0.7}, {}});
    nodes.push_back({"Focus", {"away", "on"}, {0}, {0.8, 0.2, 0.1, 0.9}, {}});
    nodes.push_back({"Signal", {"no", "yes"}, {0}, {0.8, 0.2, 0.4, 0.6}, {}});
    for (const char* h : {"1", "2", "3"}) add_hypothesis_nodes(nodes, 2, h);
    nodes.push_back({"PS", {"zero", "low", "high"}, {2}, {0.7, 0.2, 0.1, 0.1, 0.3, 0.6}, {1.0, 500.0}});
    return DiscreteBayesNet(std::move(nodes));
}

} // namespace bn_examples

} // namespace pomdp
