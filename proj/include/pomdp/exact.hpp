#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pomdp/approx.hpp"
#include "pomdp/model.hpp"
#include "pomdp/prune.hpp"
#include "pomdp/solver.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

namespace detail {

// {R_a / |Ω| + γ Σ_s' T(s,a,s') O(s',a,o) α_j(s')} for every α_j.
inline std::vector<AlphaVector> projected_set(const PomdpModel& m, const VectorSet& prev, std::size_t a,
                                              std::size_t o,
                                              const std::vector<std::vector<SparseEntry>>& proj) {
    const std::size_t ns = m.num_states(), no = m.num_observations();
    const double gamma = m.discount();
    const double share = 1.0 / static_cast<double>(no);
    std::vector<AlphaVector> out;
    out.reserve(prev.size());
    for (const auto& alpha : prev) {
        AlphaVector v{std::vector<double>(ns), a};
        for (std::size_t s = 0; s < ns; ++s) {
            double acc = 0.0;
            for (const auto& e : proj[(a * no + o) * ns + s]) acc += e.value * alpha.values[e.col];
            v.values[s] = m.r(a, s) * share + gamma * acc;
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<AlphaVector> cross_sum(const std::vector<AlphaVector>& x, const std::vector<AlphaVector>& y,
                                          std::size_t cap) {
    if (x.size() * y.size() > cap) {
        throw ResourceLimitError("exact value iteration: cross-sum of " + std::to_string(x.size()) + " x " +
                                 std::to_string(y.size()) + " vectors exceeds the cap of " + std::to_string(cap));
    }
    std::vector<AlphaVector> out;
    out.reserve(x.size() * y.size());
    for (const auto& u : x) {
        for (const auto& v : y) {
            AlphaVector w{u.values, u.action};
            for (std::size_t s = 0; s < w.values.size(); ++s) w.values[s] += v.values[s];
            out.push_back(std::move(w));
        }
    }
    return out;
}

} // namespace detail

/// One exact dynamic-programming backup with incremental pruning: for each
/// action the observation cross-sum is built one observation at a time and
/// pruned after every stage. Vectors carry their action label.
inline VectorSet exact_backup(const PomdpModel& m, const VectorSet& prev, std::size_t max_vectors = 100000,
                              double prune_tolerance = 0.0) {
    const auto proj = detail::sparse_projections(m);
    std::vector<AlphaVector> all;
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
        std::vector<AlphaVector> acc = prune_dominated(detail::projected_set(m, prev, a, 0, proj), prune_tolerance);
        for (std::size_t o = 1; o < m.num_observations(); ++o) {
            auto next = prune_dominated(detail::projected_set(m, prev, a, o, proj), prune_tolerance);
            acc = prune_dominated(detail::cross_sum(acc, next, max_vectors), prune_tolerance);
        }
        for (auto& v : acc) all.push_back(std::move(v));
        if (all.size() > max_vectors) {
            throw ResourceLimitError("exact value iteration: working set exceeds the cap of " +
                                     std::to_string(max_vectors));
        }
    }
    return VectorSet(prune_dominated(std::move(all), prune_tolerance));
}

/// Exact value iteration. Starts from `initial` (default: the zero vector,
/// so epoch h yields the optimal h-step value function) and stops after
/// max_epochs or once the exact sup-norm change falls below tolerance.
inline SolveResult solve_exact_vi(const PomdpModel& m, const SolverConfig& cfg = {},
                                  std::optional<VectorSet> initial = std::nullopt) {
    cfg.validate();
    VectorSet current = initial ? *initial : VectorSet::constant(m.num_states(), 0.0);
    if (current.dimension() != m.num_states()) throw DimensionError("initial vector set has wrong dimension");
    SolveResult result;
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        detail::Stopwatch sw;
        VectorSet next = exact_backup(m, current, cfg.max_vectors, cfg.prune_tolerance);
        const double residual = sup_distance(next, current);
        current = std::move(next);
        result.stats.push_back({current.size(), residual, sw.elapsed_ms()});
        if (residual < cfg.residual_tolerance) {
            result.terminated_by = Termination::Tolerance;
            break;
        }
    }
    result.vector_set = current.with_info({"exact", result.stats.size()});
    return result;
}

} // namespace pomdp
