#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pomdp/error.hpp"

namespace pomdp {

inline constexpr double kProbTolerance = 1e-9;

/// Probability distribution over the states of a model.
class BeliefState {
public:
    BeliefState() = default;

    /// Throws ValidationError unless every entry is non-negative and the
    /// entries sum to one within kProbTolerance.
    explicit BeliefState(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw ValidationError("belief: empty");
        double sum = 0.0;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            if (!(probs_[i] >= 0.0) || probs_[i] > 1.0 + kProbTolerance) {
                throw ValidationError("belief: entry " + std::to_string(i) + " out of [0,1]");
            }
            sum += probs_[i];
        }
        if (std::abs(sum - 1.0) > kProbTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "belief: entries sum to " << sum;
            throw ValidationError(os.str());
        }
    }

    static BeliefState uniform(std::size_t n) {
        return BeliefState(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    static BeliefState corner(std::size_t n, std::size_t i) {
        std::vector<double> p(n, 0.0);
        p.at(i) = 1.0;
        return BeliefState(std::move(p));
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const noexcept { return probs_; }

    friend bool operator==(const BeliefState&, const BeliefState&) = default;

private:
    std::vector<double> probs_;
};

/// Optional labelling of reward cells into named categories, used by
/// simulation reports to count action outcomes per category.
struct RewardCategories {
    std::vector<std::string> names;
    std::vector<double> values;       // nominal reward of each category
    std::vector<std::size_t> cell;    // category index per (a, s), row-major
};

/// Flat finite POMDP. Tables are stored densely:
///   T[a][s][s'], O[a][s'][o], R[a][s].
class PomdpModel {
public:
    PomdpModel() = default;

    PomdpModel(std::vector<std::string> states, std::vector<std::string> actions,
               std::vector<std::string> observations, std::vector<double> transition,
               std::vector<double> observation_fn, std::vector<double> reward, double discount,
               std::vector<double> initial_belief)
        : states_(std::move(states)),
          actions_(std::move(actions)),
          observations_(std::move(observations)),
          transition_(std::move(transition)),
          observation_fn_(std::move(observation_fn)),
          reward_(std::move(reward)),
          discount_(discount),
          initial_(std::move(initial_belief)) {
        const std::size_t ns = states_.size(), na = actions_.size(), no = observations_.size();
        if (ns == 0 || na == 0 || no == 0) throw DimensionError("model: empty state, action or observation set");
        if (transition_.size() != na * ns * ns) throw DimensionError("model: transition table has wrong size");
        if (observation_fn_.size() != na * ns * no) throw DimensionError("model: observation table has wrong size");
        if (reward_.size() != na * ns) throw DimensionError("model: reward table has wrong size");
        if (initial_.size() != ns) throw DimensionError("model: initial belief has wrong size");
    }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_actions() const noexcept { return actions_.size(); }
    std::size_t num_observations() const noexcept { return observations_.size(); }

    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& actions() const noexcept { return actions_; }
    const std::vector<std::string>& observations() const noexcept { return observations_; }

    double discount() const noexcept { return discount_; }

    double t(std::size_t a, std::size_t s, std::size_t s2) const {
        return transition_[(a * num_states() + s) * num_states() + s2];
    }
    double o(std::size_t a, std::size_t s2, std::size_t obs) const {
        return observation_fn_[(a * num_states() + s2) * num_observations() + obs];
    }
    double r(std::size_t a, std::size_t s) const { return reward_[a * num_states() + s]; }

    std::span<const double> transition_row(std::size_t a, std::size_t s) const {
        return {transition_.data() + (a * num_states() + s) * num_states(), num_states()};
    }
    std::span<const double> observation_row(std::size_t a, std::size_t s2) const {
        return {observation_fn_.data() + (a * num_states() + s2) * num_observations(), num_observations()};
    }
    std::span<const double> reward_row(std::size_t a) const {
        return {reward_.data() + a * num_states(), num_states()};
    }

    const std::vector<double>& transition_table() const noexcept { return transition_; }
    const std::vector<double>& observation_table() const noexcept { return observation_fn_; }
    const std::vector<double>& reward_table() const noexcept { return reward_; }

    /// Raw initial distribution; validate_model checks it is a distribution.
    const std::vector<double>& initial_probs() const noexcept { return initial_; }
    BeliefState initial_belief() const { return BeliefState(initial_); }

    const std::optional<RewardCategories>& reward_categories() const noexcept { return categories_; }
    PomdpModel with_reward_categories(RewardCategories cats) const {
        if (cats.cell.size() != reward_.size()) throw DimensionError("reward categories: wrong cell count");
        PomdpModel copy = *this;
        copy.categories_ = std::move(cats);
        return copy;
    }

    std::size_t state_index(std::string_view name) const { return find(states_, name, "state"); }
    std::size_t action_index(std::string_view name) const { return find(actions_, name, "action"); }
    std::size_t observation_index(std::string_view name) const {
        return find(observations_, name, "observation");
    }

    double min_reward() const { return *std::min_element(reward_.begin(), reward_.end()); }
    double max_reward() const { return *std::max_element(reward_.begin(), reward_.end()); }

private:
    static std::size_t find(const std::vector<std::string>& names, std::string_view name, const char* kind) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw LookupError(std::string("unknown ") + kind + " '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - names.begin());
    }

    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    std::vector<std::string> observations_;
    std::vector<double> transition_;
    std::vector<double> observation_fn_;
    std::vector<double> reward_;
    double discount_ = 0.95;
    std::vector<double> initial_;
    std::optional<RewardCategories> categories_;
};

// ---------------------------------------------------------------------------
// Validation

/// One violation per offending table cell, row or name.
inline std::vector<std::string> validate_model(const PomdpModel& m) {
    std::vector<std::string> report;
    const std::size_t ns = m.num_states(), na = m.num_actions(), no = m.num_observations();

    auto dup_check = [&report](const std::vector<std::string>& names, const char* kind) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names) {
            if (!seen.insert(n).second) report.push_back(std::string("duplicate ") + kind + " '" + n + "'");
        }
    };
    dup_check(m.states(), "state");
    dup_check(m.actions(), "action");
    dup_check(m.observations(), "observation");

    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(12);
        os << v;
        return os.str();
    };
    auto bad_prob = [](double p) { return !(p >= 0.0 && p <= 1.0); };

    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < ns; ++s) {
            double sum = 0.0;
            for (std::size_t s2 = 0; s2 < ns; ++s2) {
                const double p = m.t(a, s, s2);
                if (bad_prob(p)) {
                    report.push_back("T(" + m.actions()[a] + ", " + m.states()[s] + ", " + m.states()[s2] +
                                     ") = " + fmt(p) + " outside [0,1]");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbTolerance) {
                report.push_back("T(" + m.actions()[a] + ", " + m.states()[s] + ", *) sums to " + fmt(sum));
            }
        }
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
            double sum = 0.0;
            for (std::size_t o = 0; o < no; ++o) {
                const double p = m.o(a, s2, o);
                if (bad_prob(p)) {
                    report.push_back("O(" + m.actions()[a] + ", " + m.states()[s2] + ", " + m.observations()[o] +
                                     ") = " + fmt(p) + " outside [0,1]");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbTolerance) {
                report.push_back("O(" + m.actions()[a] + ", " + m.states()[s2] + ", *) sums to " + fmt(sum));
            }
        }
        for (std::size_t s = 0; s < ns; ++s) {
            if (!std::isfinite(m.r(a, s))) {
                report.push_back("R(" + m.actions()[a] + ", " + m.states()[s] + ") is not finite");
            }
        }
    }
    if (!(m.discount() > 0.0 && m.discount() < 1.0)) {
        report.push_back("discount " + fmt(m.discount()) + " outside (0,1)");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
        const double p = m.initial_probs()[s];
        if (bad_prob(p)) report.push_back("start(" + m.states()[s] + ") = " + fmt(p) + " outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) report.push_back("start sums to " + fmt(sum));
    return report;
}

/// Throws ValidationError carrying the first violation.
inline void require_valid(const PomdpModel& m) {
    const auto report = validate_model(m);
    if (!report.empty()) {
        std::string msg = report.front();
        if (report.size() > 1) msg += " (+" + std::to_string(report.size() - 1) + " more)";
        throw ValidationError(msg);
    }
}

// ---------------------------------------------------------------------------
// Belief arithmetic

namespace detail {

inline void check_dim(const PomdpModel& m, std::span<const double> b) {
    if (b.size() != m.num_states()) throw DimensionError("belief dimension does not match model");
}

inline void check_action(const PomdpModel& m, std::size_t a) {
    if (a >= m.num_actions()) throw LookupError("action index " + std::to_string(a) + " out of range");
}

inline void check_observation(const PomdpModel& m, std::size_t o) {
    if (o >= m.num_observations()) throw LookupError("observation index " + std::to_string(o) + " out of range");
}

} // namespace detail

/// Σ_s T(s,a,s') b(s) for every s'.
inline std::vector<double> predict(const PomdpModel& m, std::span<const double> b, std::size_t a) {
    const std::size_t ns = m.num_states();
    std::vector<double> out(ns, 0.0);
    for (std::size_t s = 0; s < ns; ++s) {
        const double w = b[s];
        if (w == 0.0) continue;
        const auto row = m.transition_row(a, s);
        for (std::size_t s2 = 0; s2 < ns; ++s2) out[s2] += w * row[s2];
    }
    return out;
}

/// Pr(o | a, b).
inline double obs_likelihood(const PomdpModel& m, const BeliefState& b, std::size_t a, std::size_t o) {
    detail::check_dim(m, b.probs());
    detail::check_action(m, a);
    detail::check_observation(m, o);
    const auto pred = predict(m, b.probs(), a);
    double p = 0.0;
    for (std::size_t s2 = 0; s2 < m.num_states(); ++s2) p += m.o(a, s2, o) * pred[s2];
    return p;
}

inline double obs_likelihood(const PomdpModel& m, const BeliefState& b, std::string_view a, std::string_view o) {
    return obs_likelihood(m, b, m.action_index(a), m.observation_index(o));
}

/// τ(b, a, o).
inline BeliefState belief_update(const PomdpModel& m, const BeliefState& b, std::size_t a, std::size_t o) {
    detail::check_dim(m, b.probs());
    detail::check_action(m, a);
    detail::check_observation(m, o);
    auto next = predict(m, b.probs(), a);
    double norm = 0.0;
    for (std::size_t s2 = 0; s2 < next.size(); ++s2) {
        next[s2] *= m.o(a, s2, o);
        norm += next[s2];
    }
    if (!(norm > 0.0)) {
        throw ImpossibleObservation("observation '" + m.observations()[o] + "' has zero probability after action '" +
                                    m.actions()[a] + "'");
    }
    for (double& p : next) p /= norm;
    return BeliefState(std::move(next));
}

inline BeliefState belief_update(const PomdpModel& m, const BeliefState& b, std::string_view a, std::string_view o) {
    return belief_update(m, b, m.action_index(a), m.observation_index(o));
}

/// ρ(b, a) = Σ_s R(s,a) b(s).
inline double belief_reward(const PomdpModel& m, const BeliefState& b, std::size_t a) {
    detail::check_dim(m, b.probs());
    detail::check_action(m, a);
    const auto row = m.reward_row(a);
    return std::inner_product(row.begin(), row.end(), b.probs().begin(), 0.0);
}

inline double belief_reward(const PomdpModel& m, const BeliefState& b, std::string_view a) {
    return belief_reward(m, b, m.action_index(a));
}

/// Shannon entropy in nats, with 0 ln 0 = 0.
inline double belief_entropy(std::span<const double> b) {
    double h = 0.0;
    for (double p : b) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

inline double belief_entropy(const BeliefState& b) { return belief_entropy(b.probs()); }

} // namespace pomdp
