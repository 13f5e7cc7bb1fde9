#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance runner. They share no code with the library beyond the data
// types, and favour obviousness over speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pomdp/pomdp.hpp"

namespace oracle {

using pomdp::BeliefState;
using pomdp::PomdpModel;

// Random distribution with occasional exact zeros, so sparse rows and
// impossible observations are exercised.
inline std::vector<double> random_row(std::mt19937_64& rng, std::size_t n, double zero_chance = 0.2) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> row(n);
    double sum = 0.0;
    for (auto& x : row) {
        x = u(rng) < zero_chance ? 0.0 : u(rng) + 1e-3;
        sum += x;
    }
    if (sum == 0.0) {
        row[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1.0;
        return row;
    }
    for (auto& x : row) x /= sum;
    return row;
}

inline PomdpModel random_model(std::mt19937_64& rng, std::size_t ns, std::size_t na, std::size_t no,
                               double discount) {
    std::vector<std::string> states, actions, observations;
    for (std::size_t i = 0; i < ns; ++i) states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < na; ++i) actions.push_back("a" + std::to_string(i));
    for (std::size_t i = 0; i < no; ++i) observations.push_back("o" + std::to_string(i));
    std::vector<double> T, O, R;
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < ns; ++s) {
            const auto row = random_row(rng, ns);
            T.insert(T.end(), row.begin(), row.end());
        }
    }
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < ns; ++s) {
            const auto row = random_row(rng, no);
            O.insert(O.end(), row.begin(), row.end());
        }
    }
    std::uniform_real_distribution<double> r(-10.0, 10.0);
    for (std::size_t i = 0; i < na * ns; ++i) R.push_back(std::round(r(rng) * 4.0) / 4.0);
    return PomdpModel(states, actions, observations, T, O, R, discount, std::vector<double>(ns, 1.0 / ns));
}

inline BeliefState random_belief(std::mt19937_64& rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& x : p) sum += (x = e(rng));
    for (auto& x : p) x /= sum;
    return BeliefState(p);
}

inline double dot(const std::vector<double>& a, std::span<const double> b) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
    return v;
}

// Alpha vectors of every depth-h conditional plan (no pruning). The optimal
// h-step value at b is the max of b·α over this list.
inline std::vector<std::vector<double>> policy_tree_vectors(const PomdpModel& m, std::size_t h) {
    const std::size_t ns = m.num_states(), na = m.num_actions(), no = m.num_observations();
    std::vector<std::vector<double>> prev = {std::vector<double>(ns, 0.0)};
    for (std::size_t depth = 1; depth <= h; ++depth) {
        std::vector<std::vector<double>> next;
        // Subtree choice per observation, enumerated as a mixed-radix counter.
        std::vector<std::size_t> pick(no, 0);
        for (std::size_t a = 0; a < na; ++a) {
            std::fill(pick.begin(), pick.end(), 0);
            while (true) {
                std::vector<double> alpha(ns);
                for (std::size_t s = 0; s < ns; ++s) {
                    double future = 0.0;
                    for (std::size_t s2 = 0; s2 < ns; ++s2) {
                        for (std::size_t o = 0; o < no; ++o) future += m.t(a, s, s2) * m.o(a, s2, o) * prev[pick[o]][s2];
                    }
                    alpha[s] = m.r(a, s) + m.discount() * future;
                }
                next.push_back(std::move(alpha));
                std::size_t k = 0;
                while (k < no && ++pick[k] == prev.size()) pick[k++] = 0;
                if (k == no) break;
            }
        }
        prev = std::move(next);
    }
    return prev;
}

inline double best_tree_value(const std::vector<std::vector<double>>& trees, std::span<const double> b) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& t : trees) best = std::max(best, dot(t, b));
    return best;
}

// Optimal h-step value by expectimax over the belief tree.
inline double expectimax(const PomdpModel& m, const std::vector<double>& b, std::size_t h) {
    if (h == 0) return 0.0;
    const std::size_t ns = m.num_states(), na = m.num_actions(), no = m.num_observations();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < na; ++a) {
        double v = 0.0;
        for (std::size_t s = 0; s < ns; ++s) v += b[s] * m.r(a, s);
        for (std::size_t o = 0; o < no; ++o) {
            std::vector<double> next(ns, 0.0);
            double z = 0.0;
            for (std::size_t s2 = 0; s2 < ns; ++s2) {
                double p = 0.0;
                for (std::size_t s = 0; s < ns; ++s) p += b[s] * m.t(a, s, s2);
                next[s2] = p * m.o(a, s2, o);
                z += next[s2];
            }
            if (z <= 0.0) continue;
            for (auto& x : next) x /= z;
            v += m.discount() * z * expectimax(m, next, h - 1);
        }
        best = std::max(best, v);
    }
    return best;
}

// One-step look-ahead written directly from the definition, using only the
// library's public belief arithmetic. Returns the action and its score.
inline std::pair<std::size_t, double> hand_lookahead(const PomdpModel& m, const pomdp::VectorSet& vs,
                                                     const BeliefState& b) {
    std::size_t best_a = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
        double q = pomdp::belief_reward(m, b, a);
        for (std::size_t o = 0; o < m.num_observations(); ++o) {
            const double p = pomdp::obs_likelihood(m, b, a, o);
            if (p <= 0.0) continue;
            q += m.discount() * p * pomdp::value_of(vs, pomdp::belief_update(m, b, a, o)).value;
        }
        if (q > best) {
            best = q;
            best_a = a;
        }
    }
    return {best_a, best};
}

// ---------------------------------------------------------------------------
// Bayesian networks

// Random net over up to `max_nodes` nodes with domains of 2..4 values. Parents
// come from a random topological order, then nodes are declared in shuffled
// order so the library's own ordering is exercised.
inline pomdp::DiscreteBayesNet random_net(std::mt19937_64& rng, std::size_t max_nodes) {
    std::uniform_int_distribution<std::size_t> count(1, max_nodes), dom(2, 4);
    const std::size_t n = count(rng);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);  // order[k] = declared index of the k-th node in topo order
    std::vector<pomdp::BnNode> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].name = "N" + std::to_string(i);
        const std::size_t d = dom(rng);
        for (std::size_t v = 0; v < d; ++v) nodes[i].domain.push_back("v" + std::to_string(v));
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        auto& node = nodes[order[k]];
        for (std::size_t j = 0; j < k && node.parents.size() < 3; ++j) {
            if (u(rng) < 0.4) node.parents.push_back(order[j]);
        }
        std::size_t rows = 1;
        for (std::size_t p : node.parents) rows *= nodes[p].domain.size();
        for (std::size_t r = 0; r < rows; ++r) {
            const auto row = random_row(rng, node.domain.size(), 0.1);
            node.cpt.insert(node.cpt.end(), row.begin(), row.end());
        }
    }
    return pomdp::DiscreteBayesNet(std::move(nodes));
}

// Posterior of `query` by summing the full joint table.
inline std::vector<double> brute_posterior(const pomdp::DiscreteBayesNet& net, const pomdp::Evidence& ev,
                                           std::size_t query) {
    const std::size_t n = net.size();
    std::vector<std::size_t> x(n, 0);
    std::vector<double> post(net.node(query).domain.size(), 0.0);
    while (true) {
        bool consistent = true;
        for (const auto& [node, value] : ev) consistent = consistent && x[node] == value;
        if (consistent) {
            double p = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t row = 0;
                for (std::size_t par : net.node(i).parents) row = row * net.node(par).domain.size() + x[par];
                p *= net.node(i).cpt[row * net.node(i).domain.size() + x[i]];
            }
            post[x[query]] += p;
        }
        std::size_t k = 0;
        while (k < n && ++x[k] == net.node(k).domain.size()) x[k++] = 0;
        if (k == n) break;
    }
    double z = 0.0;
    for (double p : post) z += p;
    for (auto& p : post) p /= z;
    return post;
}

// Evidence drawn by forward-sampling the net, so it always has positive
// probability.
inline pomdp::Evidence sampled_evidence(std::mt19937_64& rng, const pomdp::DiscreteBayesNet& net,
                                        std::size_t max_observed) {
    std::vector<std::size_t> x(net.size(), 0);
    for (std::size_t i : net.topological()) {
        const auto& node = net.node(i);
        std::size_t row = 0;
        for (std::size_t par : node.parents) row = row * net.node(par).domain.size() + x[par];
        std::discrete_distribution<std::size_t> d(node.cpt.begin() + static_cast<std::ptrdiff_t>(row * node.domain.size()),
                                                  node.cpt.begin() + static_cast<std::ptrdiff_t>((row + 1) * node.domain.size()));
        x[i] = d(rng);
    }
    std::vector<std::size_t> idx(net.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, std::min(max_observed, net.size()))(rng);
    pomdp::Evidence ev;
    for (std::size_t i = 0; i < k; ++i) ev[idx[i]] = x[idx[i]];
    return ev;
}

} // namespace oracle
