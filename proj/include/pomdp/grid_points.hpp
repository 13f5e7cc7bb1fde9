#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/model.hpp"
#include "pomdp/random.hpp"

namespace pomdp {

enum class GridStrategy { Fixed, Random, RandomSGrid, ClusterSGrid };

inline const char* to_string(GridStrategy s) {
    switch (s) {
    case GridStrategy::Fixed: return "fixed";
    case GridStrategy::Random: return "random";
    case GridStrategy::RandomSGrid: return "random-s-grid";
    case GridStrategy::ClusterSGrid: return "cluster-s-grid";
    }
    return "?";
}

inline GridStrategy parse_grid_strategy(std::string_view s) {
    if (s == "fixed") return GridStrategy::Fixed;
    if (s == "random") return GridStrategy::Random;
    if (s == "random-s-grid") return GridStrategy::RandomSGrid;
    if (s == "cluster-s-grid") return GridStrategy::ClusterSGrid;
    throw ConfigError("unknown grid strategy '" + std::string(s) + "'");
}

inline bool uses_simulation(GridStrategy s) {
    return s == GridStrategy::RandomSGrid || s == GridStrategy::ClusterSGrid;
}

struct GridConfig {
    GridStrategy strategy = GridStrategy::Fixed;
    std::size_t grid_size = 64;
    bool incremental = false;
    std::vector<BeliefState> simulation_beliefs;

    void validate() const {
        if (grid_size < 1) throw ConfigError("grid size must be positive");
        if (uses_simulation(strategy) && simulation_beliefs.empty()) {
            throw ConfigError(std::string(to_string(strategy)) + " strategy needs simulation beliefs");
        }
    }
};

/// sqrt(H(b1) H(b2)) * ||b1 - b2||_2 with natural-log entropies.
inline double belief_distance(std::span<const double> b1, std::span<const double> b2) {
    if (b1.size() != b2.size()) throw DimensionError("belief_distance: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < b1.size(); ++i) {
        const double d = b1[i] - b2[i];
        sq += d * d;
    }
    return std::sqrt(belief_entropy(b1) * belief_entropy(b2)) * std::sqrt(sq);
}

inline double belief_distance(const BeliefState& b1, const BeliefState& b2) {
    return belief_distance(b1.probs(), b2.probs());
}

/// k-medoids under belief_distance. Returns the medoid indices into `points`
/// in selection order.
///
/// Seeding starts from the highest-entropy point (corner beliefs are at
/// distance zero from everything, so they make useless first centres) and
/// adds the point farthest from the chosen medoids until k are picked. Then
/// up to `sweeps` rounds of assign / re-centre. Ties go to the lowest index
/// everywhere; a medoid is only replaced by a strictly better member.
inline std::vector<std::size_t> cluster_medoids(const std::vector<BeliefState>& points, std::size_t k,
                                                std::size_t sweeps = 20) {
    const std::size_t n = points.size();
    if (n == 0) throw ConfigError("clustering: no points");
    k = std::min(k, n);

    std::vector<double> entropy(n);
    for (std::size_t i = 0; i < n; ++i) entropy[i] = belief_entropy(points[i]);
    auto dist = [&](std::size_t i, std::size_t j) {
        double sq = 0.0;
        const auto a = points[i].probs(), b = points[j].probs();
        for (std::size_t s = 0; s < a.size(); ++s) {
            const double d = a[s] - b[s];
            sq += d * d;
        }
        return std::sqrt(entropy[i] * entropy[j]) * std::sqrt(sq);
    };

    std::vector<std::size_t> medoids;
    std::vector<char> chosen(n, 0);
    std::size_t first = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (entropy[i] > entropy[first]) first = i;
    }
    medoids.push_back(first);
    chosen[first] = 1;
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (medoids.size() < k) {
        const std::size_t last = medoids.back();
        std::size_t pick = n;
        double far = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            nearest[i] = std::min(nearest[i], dist(i, last));
            if (nearest[i] > far) {
                far = nearest[i];
                pick = i;
            }
        }
        medoids.push_back(pick);
        chosen[pick] = 1;
    }

    std::vector<std::size_t> owner(n);
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < medoids.size(); ++c) {
                if (medoids[c] == i) {
                    best = c;
                    break;
                }
                const double d = dist(i, medoids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            owner[i] = best;
        }
        bool changed = false;
        for (std::size_t c = 0; c < medoids.size(); ++c) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < n; ++i) {
                if (owner[i] == c) members.push_back(i);
            }
            auto cost = [&](std::size_t centre) {
                double total = 0.0;
                for (std::size_t j : members) total += dist(centre, j);
                return total;
            };
            double best_cost = cost(medoids[c]);
            std::size_t best = medoids[c];
            for (std::size_t cand : members) {
                if (cand == medoids[c]) continue;
                const double cc = cost(cand);
                if (cc < best_cost - 1e-12) {
                    best_cost = cc;
                    best = cand;
                }
            }
            if (best != medoids[c]) {
                medoids[c] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return medoids;
}

/// Stateful grid-point source for solve_grid. Random strategies draw a fresh
/// grid on every call; the clustered grid is computed once and reused.
class GridPointSelector {
public:
    GridPointSelector(GridStrategy strategy, std::size_t grid_size, std::uint64_t seed, std::size_t num_states,
                      std::vector<BeliefState> simulation_beliefs = {})
        : strategy_(strategy),
          grid_size_(grid_size),
          num_states_(num_states),
          rng_(seed),
          sims_(std::move(simulation_beliefs)) {
        if (grid_size_ < 1) throw ConfigError("grid size must be positive");
        if (uses_simulation(strategy_) && sims_.empty()) {
            throw ConfigError(std::string(to_string(strategy_)) + " strategy needs simulation beliefs");
        }
        for (const auto& b : sims_) {
            if (b.size() != num_states_) throw DimensionError("simulation belief has wrong dimension");
        }
    }

    std::vector<BeliefState> next() {
        switch (strategy_) {
        case GridStrategy::Fixed: {
            std::vector<BeliefState> out;
            for (std::size_t s = 0; s < num_states_; ++s) out.push_back(BeliefState::corner(num_states_, s));
            return out;
        }
        case GridStrategy::Random: {
            std::vector<BeliefState> out;
            for (std::size_t i = 0; i < grid_size_; ++i) out.push_back(sample_simplex(rng_, num_states_));
            return out;
        }
        case GridStrategy::RandomSGrid: {
            std::vector<std::size_t> idx(sims_.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            const std::size_t take = std::min(grid_size_, idx.size());
            // Partial Fisher-Yates: first `take` slots are a uniform sample without replacement.
            for (std::size_t i = 0; i < take; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
                std::swap(idx[i], idx[pick(rng_)]);
            }
            std::vector<BeliefState> out;
            for (std::size_t i = 0; i < take; ++i) out.push_back(sims_[idx[i]]);
            return out;
        }
        case GridStrategy::ClusterSGrid: {
            if (!clustered_) {
                std::vector<BeliefState> out;
                for (std::size_t i : cluster_medoids(sims_, grid_size_)) out.push_back(sims_[i]);
                clustered_ = std::move(out);
            }
            return *clustered_;
        }
        }
        return {};
    }

private:
    GridStrategy strategy_;
    std::size_t grid_size_;
    std::size_t num_states_;
    Rng rng_;
    std::vector<BeliefState> sims_;
    std::optional<std::vector<BeliefState>> clustered_;
};

inline std::vector<BeliefState> select_grid_points(GridStrategy strategy, std::size_t grid_size, std::uint64_t seed,
                                                   std::size_t num_states,
                                                   const std::vector<BeliefState>& simulation_beliefs = {}) {
    return GridPointSelector(strategy, grid_size, seed, num_states, simulation_beliefs).next();
}

} // namespace pomdp
