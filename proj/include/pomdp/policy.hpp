#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pomdp/dense.hpp"
#include "pomdp/error.hpp"
#include "pomdp/model.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

enum class PolicyMode { Direct, Lookahead };

inline PolicyMode parse_policy_mode(std::string_view s) {
    if (s == "dr" || s == "direct") return PolicyMode::Direct;
    if (s == "la" || s == "lookahead") return PolicyMode::Lookahead;
    throw ConfigError("unknown policy mode '" + std::string(s) + "'");
}

inline const char* to_string(PolicyMode m) { return m == PolicyMode::Direct ? "dr" : "la"; }

/// Maps beliefs to actions from a vector set. Direct mode reads the label of
/// the maximizing vector; look-ahead mode does one greedy Bellman step
/// against the model. The model must outlive the policy.
class Policy {
public:
    Policy(PolicyMode mode, VectorSet vectors, const PomdpModel& model)
        : mode_(mode), vectors_(std::move(vectors)), model_(&model), mm_(model) {
        if (vectors_.dimension() != model.num_states()) throw DimensionError("policy: vector set does not match model");
        if (mode_ == PolicyMode::Direct && !vectors_.all_labeled()) {
            throw PolicyError("direct policy unavailable: vector set has unlabeled vectors");
        }
        for (const auto& v : vectors_) {
            if (v.action && *v.action >= model.num_actions()) throw DimensionError("policy: action label out of range");
        }
        gamma_ = detail::stack_vectors(vectors_.vectors());
    }

    Policy(PolicyMode, VectorSet, const PomdpModel&&) = delete;

    PolicyMode mode() const noexcept { return mode_; }
    const VectorSet& vectors() const noexcept { return vectors_; }
    const PomdpModel& model() const noexcept { return *model_; }
    const detail::ModelMatrices& matrices() const noexcept { return mm_; }

    std::size_t act(const BeliefState& b) const;

    // Σ_o max_j Σ_s' Pr(s'|b,a) O(s',a,o) α_j(s'); unreachable observations add 0.
    double expected_future(const BeliefState& b, std::size_t a) const {
        return mm_.scores(gamma_, b.probs(), a).colwise().maxCoeff().sum();
    }

private:
    PolicyMode mode_;
    VectorSet vectors_;
    const PomdpModel* model_;
    detail::ModelMatrices mm_;
    detail::RowMatrix gamma_;
};

/// Label of the best vector at b, lowest index on ties.
inline std::size_t act_direct(const Policy& p, const BeliefState& b) {
    if (!p.vectors().all_labeled()) throw PolicyError("direct policy unavailable: vector set has unlabeled vectors");
    return *p.vectors()[value_of(p.vectors(), b).index].action;
}

/// One-step look-ahead value of action a at b:
///   ρ(b,a) + γ Σ_o Pr(o|a,b) V(τ(b,a,o)),
/// using Pr(o|a,b) V(τ(b,a,o)) = max_j Σ_s' Pr(s'|b,a) O(s',a,o) α_j(s').
inline double lookahead_value(const Policy& p, const BeliefState& b, std::size_t a) {
    return belief_reward(p.model(), b, a) + p.model().discount() * p.expected_future(b, a);
}

inline std::size_t act_lookahead(const Policy& p, const BeliefState& b) {
    const PomdpModel& m = p.model();
    if (b.size() != m.num_states()) throw DimensionError("act_lookahead: belief dimension mismatch");
    std::vector<double> future(m.num_actions(), 0.0);
    std::size_t best_a = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
        const std::size_t rep = p.matrices().representative(a);
        if (rep == a) future[a] = p.expected_future(b, a);
        const double v = belief_reward(m, b, a) + m.discount() * future[rep];
        if (v > best) {
            best = v;
            best_a = a;
        }
    }
    return best_a;
}

inline std::size_t Policy::act(const BeliefState& b) const {
    return mode_ == PolicyMode::Direct ? act_direct(*this, b) : act_lookahead(*this, b);
}

} // namespace pomdp
