#pragma once

// Fully observable style bounds: MDP, QMDP and the fast informed bound.
// All three iterate from the constant upper bound Rmax / (1 - discount), so
// every iterate is itself an upper bound and the sequence decreases
// monotonically toward the fixed point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "pomdp/model.hpp"
#include "pomdp/solver.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

namespace detail {

struct SparseEntry {
    std::size_t col;
    double value;
};

// Nonzero T(s,a,s') per (a, s).
inline std::vector<std::vector<SparseEntry>> sparse_transitions(const PomdpModel& m) {
    const std::size_t ns = m.num_states(), na = m.num_actions();
    std::vector<std::vector<SparseEntry>> rows(na * ns);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t s2 = 0; s2 < ns; ++s2) {
                const double p = m.t(a, s, s2);
                if (p != 0.0) rows[a * ns + s].push_back({s2, p});
            }
        }
    }
    return rows;
}

// Nonzero T(s,a,s') O(s',a,o) per (a, o, s).
inline std::vector<std::vector<SparseEntry>> sparse_projections(const PomdpModel& m) {
    const std::size_t ns = m.num_states(), na = m.num_actions(), no = m.num_observations();
    std::vector<std::vector<SparseEntry>> rows(na * no * ns);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t o = 0; o < no; ++o) {
            for (std::size_t s = 0; s < ns; ++s) {
                auto& row = rows[(a * no + o) * ns + s];
                for (std::size_t s2 = 0; s2 < ns; ++s2) {
                    const double p = m.t(a, s, s2) * m.o(a, s2, o);
                    if (p != 0.0) row.push_back({s2, p});
                }
            }
        }
    }
    return rows;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Runs `step(prev, next)` until the sup-norm change drops below tolerance.
template <class Step>
SolveResult iterate_tables(std::vector<double> table, const SolverConfig& cfg, Step step,
                           std::vector<AlphaVector> (*to_vectors)(const std::vector<double>&, std::size_t),
                           std::size_t ns, const char* name) {
    cfg.validate();
    SolveResult result;
    std::vector<double> next(table.size());
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        Stopwatch sw;
        step(table, next);
        const double residual = sup_diff(table, next);
        std::swap(table, next);
        result.stats.push_back({0, residual, sw.elapsed_ms()});
        if (residual < cfg.residual_tolerance) {
            result.terminated_by = Termination::Tolerance;
            break;
        }
    }
    auto vectors = to_vectors(table, ns);
    for (auto& st : result.stats) st.vector_count = vectors.size();
    result.vector_set = VectorSet(std::move(vectors), {name, result.stats.size()});
    return result;
}

inline std::vector<AlphaVector> single_vector(const std::vector<double>& v, std::size_t) {
    return {AlphaVector{v, std::nullopt}};
}

// Table laid out [a][s] -> one labelled vector per action.
inline std::vector<AlphaVector> per_action_vectors(const std::vector<double>& q, std::size_t ns) {
    std::vector<AlphaVector> out;
    const std::size_t na = q.size() / ns;
    out.reserve(na);
    for (std::size_t a = 0; a < na; ++a) {
        out.push_back({std::vector<double>(q.begin() + static_cast<std::ptrdiff_t>(a * ns),
                                           q.begin() + static_cast<std::ptrdiff_t>((a + 1) * ns)),
                       a});
    }
    return out;
}

inline double upper_start(const PomdpModel& m) { return m.max_reward() / (1.0 - m.discount()); }

} // namespace detail

/// Single unlabelled vector: fixed point of V(s) = max_a R(s,a) + γ Σ T V.
inline SolveResult solve_mdp(const PomdpModel& m, const SolverConfig& cfg = {}) {
    const std::size_t ns = m.num_states(), na = m.num_actions();
    const double gamma = m.discount();
    const auto trans = detail::sparse_transitions(m);
    auto step = [&](const std::vector<double>& v, std::vector<double>& out) {
        for (std::size_t s = 0; s < ns; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < na; ++a) {
                double q = 0.0;
                for (const auto& e : trans[a * ns + s]) q += e.value * v[e.col];
                best = std::max(best, m.r(a, s) + gamma * q);
            }
            out[s] = best;
        }
    };
    return detail::iterate_tables(std::vector<double>(ns, detail::upper_start(m)), cfg, step, detail::single_vector,
                                  ns, "mdp");
}

/// One vector per action: Q(s,a) = R(s,a) + γ Σ_s' T(s,a,s') max_a' Q(s',a').
inline SolveResult solve_qmdp(const PomdpModel& m, const SolverConfig& cfg = {}) {
    const std::size_t ns = m.num_states(), na = m.num_actions();
    const double gamma = m.discount();
    const auto trans = detail::sparse_transitions(m);
    std::vector<double> vmax(ns);
    auto step = [&](const std::vector<double>& q, std::vector<double>& out) {
        for (std::size_t s = 0; s < ns; ++s) {
            double best = q[s];
            for (std::size_t a = 1; a < na; ++a) best = std::max(best, q[a * ns + s]);
            vmax[s] = best;
        }
        for (std::size_t a = 0; a < na; ++a) {
            for (std::size_t s = 0; s < ns; ++s) {
                double acc = 0.0;
                for (const auto& e : trans[a * ns + s]) acc += e.value * vmax[e.col];
                out[a * ns + s] = m.r(a, s) + gamma * acc;
            }
        }
    };
    return detail::iterate_tables(std::vector<double>(na * ns, detail::upper_start(m)), cfg, step,
                                  detail::per_action_vectors, ns, "qmdp");
}

/// One vector per action:
/// α^a(s) = R(s,a) + γ Σ_o max_a' Σ_s' T(s,a,s') O(s',a,o) α^a'(s').
inline SolveResult solve_fib(const PomdpModel& m, const SolverConfig& cfg = {}) {
    const std::size_t ns = m.num_states(), na = m.num_actions(), no = m.num_observations();
    const double gamma = m.discount();
    const auto proj = detail::sparse_projections(m);
    auto step = [&](const std::vector<double>& alpha, std::vector<double>& out) {
        for (std::size_t a = 0; a < na; ++a) {
            for (std::size_t s = 0; s < ns; ++s) {
                double total = 0.0;
                for (std::size_t o = 0; o < no; ++o) {
                    const auto& row = proj[(a * no + o) * ns + s];
                    if (row.empty()) continue;
                    double best = -std::numeric_limits<double>::infinity();
                    for (std::size_t a2 = 0; a2 < na; ++a2) {
                        const double* v = alpha.data() + a2 * ns;
                        double acc = 0.0;
                        for (const auto& e : row) acc += e.value * v[e.col];
                        best = std::max(best, acc);
                    }
                    total += best;
                }
                out[a * ns + s] = m.r(a, s) + gamma * total;
            }
        }
    };
    return detail::iterate_tables(std::vector<double>(na * ns, detail::upper_start(m)), cfg, step,
                                  detail::per_action_vectors, ns, "fib");
}

} // namespace pomdp
