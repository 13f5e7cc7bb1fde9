#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "pomdp/lp.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

struct Witness {
    double advantage;              // max_b min_k b·(alpha - others_k)
    std::vector<double> belief;    // maximizing belief
};

/// Largest margin by which `alpha` beats every vector of `others` at some
/// belief, with the belief achieving it. +inf when `others` is empty.
inline Witness find_witness(const AlphaVector& alpha, std::span<const AlphaVector* const> others) {
    const std::size_t n = alpha.size();
    if (others.empty()) {
        return {std::numeric_limits<double>::infinity(), std::vector<double>(n, 1.0 / static_cast<double>(n))};
    }
    // The margin d is shifted to e = d + D with D bounding |b·(alpha - k)|, and
    // the last belief coordinate is eliminated through Σ b = 1. With δ = alpha - k
    // each row reads
    //   e - Σ_{i<n-1} b_i (δ_i - δ_{n-1}) <= D + δ_{n-1}
    // plus Σ_{i<n-1} b_i <= 1. Every rhs is non-negative, so the origin is a
    // feasible basis and no phase-one search is needed.
    double D = 1.0;
    for (const AlphaVector* k : others) {
        for (std::size_t s = 0; s < n; ++s) D = std::max(D, std::abs(alpha.values[s] - k->values[s]));
    }
    const std::size_t pinned = n - 1;  // eliminated coordinate; also the count of free ones
    lp::Problem p;
    p.objective.assign(pinned + 1, 0.0);
    p.objective[pinned] = 1.0;
    p.constraints.reserve(others.size() + 1);
    for (const AlphaVector* k : others) {
        const double last = alpha.values[pinned] - k->values[pinned];
        lp::Constraint c;
        c.coeffs.assign(pinned + 1, 0.0);
        for (std::size_t s = 0; s < pinned; ++s) c.coeffs[s] = -((alpha.values[s] - k->values[s]) - last);
        c.coeffs[pinned] = 1.0;
        c.rel = lp::Relation::LessEq;
        c.rhs = std::max(0.0, D + last);
        p.constraints.push_back(std::move(c));
    }
    if (pinned > 0) {
        lp::Constraint simplex;
        simplex.coeffs.assign(pinned + 1, 0.0);
        for (std::size_t s = 0; s < pinned; ++s) simplex.coeffs[s] = 1.0;
        simplex.rel = lp::Relation::LessEq;
        simplex.rhs = 1.0;
        p.constraints.push_back(std::move(simplex));
    }

    const auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw Error("witness lp did not reach an optimum");
    Witness w{sol.objective - D, std::vector<double>(n, 0.0)};
    double rest = 1.0;
    for (std::size_t s = 0; s < pinned; ++s) {
        w.belief[s] = std::clamp(sol.x[s], 0.0, 1.0);
        rest -= w.belief[s];
    }
    w.belief[pinned] = std::max(0.0, rest);
    double total = 0.0;
    for (double x : w.belief) total += x;
    for (double& x : w.belief) x /= total;
    // Recompute the margin at the returned belief to shed tableau round-off.
    double margin = std::numeric_limits<double>::infinity();
    for (const AlphaVector* k : others) {
        double d = 0.0;
        for (std::size_t s = 0; s < n; ++s) d += w.belief[s] * (alpha.values[s] - k->values[s]);
        margin = std::min(margin, d);
    }
    w.advantage = std::min(w.advantage, margin);
    return w;
}

namespace detail {

inline double max_abs_entry(const std::vector<AlphaVector>& vs) {
    double m = 0.0;
    for (const auto& v : vs) {
        for (double x : v.values) m = std::max(m, std::abs(x));
    }
    return m;
}

// Index into `idx` of the vector maximizing b·alpha, ties broken toward the
// lexicographically larger vector so the choice lies on the upper surface.
inline std::size_t best_at(const std::vector<AlphaVector>& vs, const std::vector<std::size_t>& idx,
                           std::span<const double> b) {
    std::size_t best = 0;
    double best_v = vs[idx[0]].dot(b);
    for (std::size_t i = 1; i < idx.size(); ++i) {
        const double v = vs[idx[i]].dot(b);
        if (v > best_v + 1e-12) {
            best = i;
            best_v = v;
        } else if (v >= best_v - 1e-12 &&
                   std::lexicographical_compare(vs[idx[best]].values.begin(), vs[idx[best]].values.end(),
                                                vs[idx[i]].values.begin(), vs[idx[i]].values.end())) {
            best = i;
            best_v = std::max(best_v, v);
        }
    }
    return best;
}

} // namespace detail

/// Minimal subset representing the same upper surface. Pointwise dominance
/// runs first; survivors go through a witness filter (one LP per test).
/// Vectors whose best margin is within a scale-relative round-off epsilon of
/// zero are dropped, or within `tolerance` when that is larger; the pruned
/// surface then lies below the original by at most `tolerance`. Survivors
/// keep their original relative order.
inline std::vector<AlphaVector> prune_dominated(std::vector<AlphaVector> vectors, double tolerance = 0.0) {
    if (vectors.empty()) return vectors;
    vectors = prune_pointwise(std::move(vectors));
    if (vectors.size() == 1) return vectors;

    const double eps = std::max(tolerance, 1e-12 * std::max(1.0, detail::max_abs_entry(vectors)));
    std::vector<std::size_t> frontier(vectors.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) frontier[i] = i;
    std::vector<std::size_t> kept;
    std::vector<const AlphaVector*> kept_ptrs;

    while (!frontier.empty()) {
        const AlphaVector& candidate = vectors[frontier.front()];
        const Witness w = find_witness(candidate, kept_ptrs);
        if (w.advantage <= eps) {
            frontier.erase(frontier.begin());
            continue;
        }
        const std::size_t pos = detail::best_at(vectors, frontier, w.belief);
        kept.push_back(frontier[pos]);
        kept_ptrs.push_back(&vectors[frontier[pos]]);
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pos));
    }

    std::sort(kept.begin(), kept.end());
    std::vector<AlphaVector> out;
    out.reserve(kept.size());
    for (std::size_t i : kept) out.push_back(vectors[i]);
    return out;
}

inline VectorSet prune_dominated(const VectorSet& vs, double tolerance = 0.0) {
    return VectorSet(prune_dominated(vs.vectors(), tolerance), vs.info());
}

/// sup_b |V_a(b) - V_b(b)| computed exactly with witness LPs.
inline double sup_distance(const VectorSet& a, const VectorSet& b) {
    auto one_side = [](const VectorSet& x, const VectorSet& y) {
        std::vector<const AlphaVector*> ys;
        ys.reserve(y.size());
        for (const auto& v : y) ys.push_back(&v);
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& v : x) worst = std::max(worst, find_witness(v, ys).advantage);
        return worst;
    };
    return std::max({0.0, one_side(a, b), one_side(b, a)});
}

} // namespace pomdp
