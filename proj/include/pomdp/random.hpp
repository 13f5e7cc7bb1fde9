#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pomdp/model.hpp"

namespace pomdp {

using Rng = std::mt19937_64;

/// Uniform draw from the probability simplex of dimension n (flat Dirichlet,
/// built from normalized exponential spacings).
inline BeliefState sample_simplex(Rng& rng, std::size_t n) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& x : p) {
        x = exp1(rng);
        sum += x;
    }
    for (auto& x : p) x /= sum;
    return BeliefState(std::move(p));
}

inline std::vector<BeliefState> sample_simplex_points(std::uint64_t seed, std::size_t n_points, std::size_t dim) {
    Rng rng(seed);
    std::vector<BeliefState> out;
    out.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out.push_back(sample_simplex(rng, dim));
    return out;
}

/// Index drawn from a discrete distribution using one uniform variate.
inline std::size_t sample_index(Rng& rng, std::span<const double> probs) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng);
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        acc += probs[i];
        last = i;
        if (x < acc) return i;
    }
    return last;
}

} // namespace pomdp
