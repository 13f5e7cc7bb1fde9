#pragma once

// Policy simulation against the model used as the environment, plus the
// average-value metric.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pomdp/approx.hpp"
#include "pomdp/dialogue.hpp"
#include "pomdp/error.hpp"
#include "pomdp/model.hpp"
#include "pomdp/policy.hpp"
#include "pomdp/random.hpp"
#include "pomdp/text.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

struct SimConfig {
    std::size_t steps = 10000;
    std::uint64_t seed = 0;
    std::optional<BeliefState> initial;
    bool record_beliefs = false;

    void validate() const {
        if (steps < 1) throw ConfigError("simulation needs at least one step");
    }
};

struct CategoryCount {
    std::string name;
    double reward = 0.0;
    std::size_t count = 0;
};

struct SimReport {
    std::size_t steps = 0;
    double total_reward = 0.0;
    std::vector<CategoryCount> reward_counts;       // sums to steps
    std::vector<CategoryCount> observation_counts;  // sums to steps; reward field unused
    std::vector<std::size_t> action_counts;
    double decision_ms_mean = 0.0;
    double decision_ms_max = 0.0;
    std::vector<BeliefState> beliefs;  // belief at each decision, when recorded
};

inline const std::array<std::string, 5> kObservationCategories = {"no-info", "yes-no", "partial", "full", "other"};

namespace detail {

// Category of every (a, s) reward cell; models without labels group by value.
inline RewardCategories categories_or_values(const PomdpModel& m) {
    if (m.reward_categories()) return *m.reward_categories();
    RewardCategories c;
    std::map<double, std::size_t> index;
    std::vector<double> values(m.reward_table());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (double v : values) {
        index[v] = c.names.size();
        c.names.push_back(text::format_double(v));
        c.values.push_back(v);
    }
    for (double r : m.reward_table()) c.cell.push_back(index[r]);
    return c;
}

inline std::size_t category_slot(std::string_view name) {
    const std::string cat = dialogue::observation_category(name);
    for (std::size_t i = 0; i < kObservationCategories.size(); ++i) {
        if (kObservationCategories[i] == cat) return i;
    }
    return kObservationCategories.size() - 1;
}

} // namespace detail

/// Runs the policy for cfg.steps steps. The true initial state is drawn from
/// the initial belief; each step draws s' from T, then o from O given s', so
/// the belief update never meets an impossible observation. The belief is
/// never reset.
inline SimReport simulate(const PomdpModel& m, const Policy& policy, const SimConfig& cfg) {
    cfg.validate();
    if (policy.vectors().dimension() != m.num_states()) throw DimensionError("simulate: policy does not match model");
    const BeliefState start = cfg.initial ? *cfg.initial : m.initial_belief();
    if (start.size() != m.num_states()) throw DimensionError("simulate: initial belief dimension mismatch");

    Rng rng(cfg.seed);
    const RewardCategories cats = detail::categories_or_values(m);
    std::vector<std::size_t> obs_slot(m.num_observations());
    for (std::size_t o = 0; o < m.num_observations(); ++o) obs_slot[o] = detail::category_slot(m.observations()[o]);

    SimReport rep;
    rep.steps = cfg.steps;
    for (std::size_t i = 0; i < cats.names.size(); ++i) rep.reward_counts.push_back({cats.names[i], cats.values[i], 0});
    for (const auto& n : kObservationCategories) rep.observation_counts.push_back({n, 0.0, 0});
    rep.action_counts.assign(m.num_actions(), 0);
    if (cfg.record_beliefs) rep.beliefs.reserve(cfg.steps);

    BeliefState b = start;
    std::size_t s = sample_index(rng, start.probs());
    double time_sum = 0.0;
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        if (cfg.record_beliefs) rep.beliefs.push_back(b);
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t a = policy.act(b);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        time_sum += ms;
        rep.decision_ms_max = std::max(rep.decision_ms_max, ms);

        rep.total_reward += m.r(a, s);
        ++rep.reward_counts[cats.cell[a * m.num_states() + s]].count;
        ++rep.action_counts[a];

        const std::size_t s2 = sample_index(rng, m.transition_row(a, s));
        const std::size_t o = sample_index(rng, m.observation_row(a, s2));
        ++rep.observation_counts[obs_slot[o]].count;
        b = belief_update(m, b, a, o);
        s = s2;
    }
    rep.decision_ms_mean = time_sum / static_cast<double>(cfg.steps);
    return rep;
}

/// Belief at each decision of a simulated run (exactly cfg.steps beliefs).
inline std::vector<BeliefState> collect_sim_beliefs(const PomdpModel& m, const Policy& policy, SimConfig cfg) {
    cfg.record_beliefs = true;
    return simulate(m, policy, cfg).beliefs;
}

/// Belief trace of a QMDP look-ahead run, the default source of simulation
/// points for the s-grid strategies.
inline std::vector<BeliefState> qmdp_trace(const PomdpModel& m, std::size_t steps, std::uint64_t seed) {
    const Policy policy(PolicyMode::Lookahead, solve_qmdp(m).vector_set, m);
    SimConfig cfg;
    cfg.steps = steps;
    cfg.seed = seed;
    return collect_sim_beliefs(m, policy, cfg);
}

/// Mean of V over n_points seeded uniform-simplex beliefs.
inline double evaluate_avg_value(const VectorSet& vs, std::size_t n_points, std::uint64_t seed) {
    if (n_points < 1) throw ConfigError("evaluate_avg_value: need at least one point");
    Rng rng(seed);
    double sum = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) sum += value_of(vs, sample_simplex(rng, vs.dimension())).value;
    return sum / static_cast<double>(n_points);
}

/// Tab-separated report, four columns: section, name, value, count.
///   summary   steps|total_reward|decision_ms_mean|decision_ms_max   <value>   -
///   reward    <category>       <reward per occurrence>   <count>
///   observation <category>     -                         <count>
///   action    <action name>    -                         <count>
/// Timing rows are the only nondeterministic lines.
inline std::string write_sim_report(const SimReport& r, const std::vector<std::string>& action_names) {
    std::ostringstream out;
    out << "section\tname\tvalue\tcount\n";
    out << "summary\tsteps\t" << r.steps << "\t-\n";
    out << "summary\ttotal_reward\t" << text::format_double(r.total_reward) << "\t-\n";
    out << "summary\tdecision_ms_mean\t" << text::format_double(r.decision_ms_mean) << "\t-\n";
    out << "summary\tdecision_ms_max\t" << text::format_double(r.decision_ms_max) << "\t-\n";
    for (const auto& c : r.reward_counts) {
        out << "reward\t" << c.name << '\t' << text::format_double(c.reward) << '\t' << c.count << '\n';
    }
    for (const auto& c : r.observation_counts) out << "observation\t" << c.name << "\t-\t" << c.count << '\n';
    for (std::size_t a = 0; a < r.action_counts.size(); ++a) {
        out << "action\t" << action_names.at(a) << "\t-\t" << r.action_counts[a] << '\n';
    }
    return out.str();
}

} // namespace pomdp
