#pragma once

// Dense kernels shared by the point-based backup and the look-ahead policy.
// Both need, for a belief b and action a, the per-observation scores
//   score(j, o) = Σ_s' Pr(s'|b,a) O(s',a,o) α_j(s')
// which is one matrix product Γ · diag(pred) · O_a.

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pomdp/model.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp::detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline RowMatrix stack_vectors(const std::vector<AlphaVector>& vs) {
    const std::size_t rows = vs.size(), cols = vs.empty() ? 0 : vs.front().size();
    RowMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t s = 0; s < cols; ++s) g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s)) = vs[j].values[s];
    }
    return g;
}

/// Per-action T and O as matrices, plus a grouping of actions whose T and O
/// tables are identical (their scores coincide; only rewards differ).
class ModelMatrices {
public:
    explicit ModelMatrices(const PomdpModel& m) : ns_(m.num_states()), no_(m.num_observations()) {
        const auto n = static_cast<Eigen::Index>(ns_), k = static_cast<Eigen::Index>(no_);
        for (std::size_t a = 0; a < m.num_actions(); ++a) {
            RowMatrix t(n, n), o(n, k);
            for (std::size_t s = 0; s < ns_; ++s) {
                for (std::size_t s2 = 0; s2 < ns_; ++s2) t(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s2)) = m.t(a, s, s2);
                for (std::size_t z = 0; z < no_; ++z) o(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(z)) = m.o(a, s, z);
            }
            std::size_t rep = a;
            for (std::size_t b = 0; b < a; ++b) {
                if (group_[b] == b && t_[b] == t && o_[b] == o) {
                    rep = b;
                    break;
                }
            }
            t_.push_back(std::move(t));
            o_.push_back(std::move(o));
            group_.push_back(rep);
        }
    }

    std::size_t num_states() const noexcept { return ns_; }
    std::size_t num_observations() const noexcept { return no_; }
    /// Lowest-index action with the same T and O as a.
    std::size_t representative(std::size_t a) const { return group_[a]; }
    const RowMatrix& t(std::size_t a) const { return t_[a]; }
    const RowMatrix& o(std::size_t a) const { return o_[a]; }

    /// Γ · diag(T_aᵀ b) · O_a, shape |Γ| x |Ω|.
    RowMatrix scores(const RowMatrix& gamma, std::span<const double> b, std::size_t a) const {
        const Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
        const Eigen::VectorXd pred = t_[a].transpose() * bv;
        const RowMatrix w = pred.asDiagonal() * o_[a];
        return gamma * w;
    }

private:
    std::size_t ns_, no_;
    std::vector<RowMatrix> t_, o_;
    std::vector<std::size_t> group_;
};

/// Column-wise argmax, lowest row on ties.
inline std::vector<std::size_t> column_argmax(const RowMatrix& scores) {
    std::vector<std::size_t> arg(static_cast<std::size_t>(scores.cols()), 0);
    std::vector<double> best(arg.size(), -std::numeric_limits<double>::infinity());
    for (Eigen::Index j = 0; j < scores.rows(); ++j) {
        for (Eigen::Index o = 0; o < scores.cols(); ++o) {
            const double v = scores(j, o);
            const auto k = static_cast<std::size_t>(o);
            if (v > best[k]) {
                best[k] = v;
                arg[k] = static_cast<std::size_t>(j);
            }
        }
    }
    return arg;
}

} // namespace pomdp::detail
