#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "pomdp/approx.hpp"
#include "pomdp/dense.hpp"
#include "pomdp/grid_points.hpp"
#include "pomdp/model.hpp"
#include "pomdp/solver.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

namespace detail {

// Σ_o O(s',a,o) α^{b,a,o}(s'), where α^{b,a,o} maximizes
// Σ_s' Pr(s'|b,a) O(s',a,o) α_j(s'). Depends on a only through T_a and O_a.
// Unreachable observations pick the lowest-index vector.
inline std::vector<double> grid_projection(const ModelMatrices& mm, const RowMatrix& gamma, std::span<const double> b,
                                           std::size_t a) {
    const auto arg = column_argmax(mm.scores(gamma, b, a));
    const std::size_t ns = mm.num_states();
    const RowMatrix& o = mm.o(a);
    std::vector<double> combined(ns, 0.0);
    for (std::size_t z = 0; z < arg.size(); ++z) {
        const auto j = static_cast<Eigen::Index>(arg[z]), zi = static_cast<Eigen::Index>(z);
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
            const auto si = static_cast<Eigen::Index>(s2);
            combined[s2] += o(si, zi) * gamma(j, si);
        }
    }
    return combined;
}

// R(s,a) + γ Σ_s' T(s,a,s') combined(s').
inline AlphaVector backup_from_projection(const PomdpModel& m, const std::vector<double>& combined, std::size_t a) {
    const std::size_t ns = m.num_states();
    AlphaVector out{std::vector<double>(ns), a};
    for (std::size_t s = 0; s < ns; ++s) {
        const auto row = m.transition_row(a, s);
        double acc = 0.0;
        for (std::size_t s2 = 0; s2 < ns; ++s2) acc += row[s2] * combined[s2];
        out.values[s] = m.r(a, s) + m.discount() * acc;
    }
    return out;
}

} // namespace detail

/// Point-based backup at belief b for action a:
///   α^{b,a}(s) = R(s,a) + γ Σ_o Σ_s' T(s,a,s') O(s',a,o) α^{b,a,o}(s')
/// where α^{b,a,o} maximizes Σ_s' Pr(s'|b,a) O(s',a,o) α_j(s') over the set,
/// lowest index on ties.
inline AlphaVector grid_backup(const PomdpModel& m, const VectorSet& set, std::span<const double> b, std::size_t a) {
    const detail::ModelMatrices mm(m);
    const auto gamma = detail::stack_vectors(set.vectors());
    return detail::backup_from_projection(m, detail::grid_projection(mm, gamma, b, a), a);
}

/// Called after every grid epoch with (epoch, grid points, new vector set).
using GridObserver = std::function<void(std::size_t, const std::vector<BeliefState>&, const VectorSet&)>;

/// Grid-based approximation with per-(belief, action) backups, starting from
/// the constant lower bound Rmin / (1 - γ). Runs exactly max_epochs epochs.
/// The standard variant replaces the set with the new backups; the
/// incremental variant keeps the previous vectors as well. Either way the
/// result is pointwise pruned.
inline SolveResult solve_grid(const PomdpModel& m, const SolverConfig& cfg, const GridConfig& grid,
                              const GridObserver& observer = {}) {
    cfg.validate();
    grid.validate();
    const std::size_t ns = m.num_states();
    const detail::ModelMatrices mm(m);
    GridPointSelector selector(grid.strategy, grid.grid_size, cfg.seed, ns, grid.simulation_beliefs);

    VectorSet current = VectorSet::constant(ns, m.min_reward() / (1.0 - m.discount()), "grid");
    SolveResult result;
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        detail::Stopwatch sw;
        const auto points = selector.next();
        const auto gamma = detail::stack_vectors(current.vectors());

        std::vector<AlphaVector> next;
        if (grid.incremental) next = current.vectors();
        next.reserve(next.size() + points.size() * m.num_actions());
        std::vector<std::vector<double>> projection(m.num_actions());
        for (const auto& b : points) {
            for (std::size_t a = 0; a < m.num_actions(); ++a) {
                const std::size_t rep = mm.representative(a);
                if (rep == a) projection[a] = detail::grid_projection(mm, gamma, b.probs(), a);
                next.push_back(detail::backup_from_projection(m, projection[rep], a));
            }
        }
        VectorSet updated(prune_pointwise(std::move(next)), {"grid", epoch});

        double residual = 0.0;
        for (const auto& b : points) {
            residual = std::max(residual, std::abs(value_of(updated, b).value - value_of(current, b).value));
        }
        current = std::move(updated);
        result.stats.push_back({current.size(), residual, sw.elapsed_ms()});
        if (observer) observer(epoch, points, current);
    }
    result.vector_set = current;
    result.terminated_by = Termination::Epochs;
    return result;
}

} // namespace pomdp
