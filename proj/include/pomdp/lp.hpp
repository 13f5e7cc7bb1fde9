#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "pomdp/error.hpp"

namespace pomdp::lp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

/// maximize objective·x subject to the constraints and x >= 0.
struct Problem {
    std::vector<double> objective;
    std::vector<Constraint> constraints;
};

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

namespace detail {

// Dense tableau. Row 0..m-1 are constraints, the last column is the rhs.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

inline constexpr double kPivotEps = 1e-11;

// Pivot the tableau (constraint rows plus one objective row at index m) on (pr, pc).
inline void pivot(Tableau& t, std::vector<std::size_t>& basis, std::size_t pr, std::size_t pc) {
    const std::size_t cols = t.cols();
    const double inv = 1.0 / t.at(pr, pc);
    for (std::size_t c = 0; c < cols; ++c) t.at(pr, c) *= inv;
    t.at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (r == pr) continue;
        const double f = t.at(r, pc);
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < cols; ++c) t.at(r, c) -= f * t.at(pr, c);
        t.at(r, pc) = 0.0;
    }
    basis[pr] = pc;
}

// Maximizes the objective row (stored as reduced costs: row m holds -c, so a
// negative entry means the column improves the objective). Columns at or past
// `allowed` may not enter.
inline Status optimize(Tableau& t, std::vector<std::size_t>& basis, std::size_t m, std::size_t allowed) {
    const std::size_t rhs = t.cols() - 1;
    std::size_t degenerate = 0;
    const std::size_t max_iter = 50 * (m + allowed) + 1000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const bool bland = degenerate > 2 * (m + 1);
        std::size_t pc = allowed;
        double best = -kPivotEps;
        for (std::size_t c = 0; c < allowed; ++c) {
            const double rc = t.at(m, c);
            if (rc < best) {
                pc = c;
                if (bland) break;
                best = rc;
            }
        }
        if (pc == allowed) return Status::Optimal;

        std::size_t pr = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            const double a = t.at(r, pc);
            if (a <= kPivotEps) continue;
            const double ratio = t.at(r, rhs) / a;
            if (ratio < best_ratio - 1e-13 ||
                (ratio <= best_ratio + 1e-13 && pr < m && basis[r] < basis[pr])) {
                best_ratio = ratio;
                pr = r;
            }
        }
        if (pr == m) return Status::Unbounded;
        if (best_ratio < 1e-13) ++degenerate; else degenerate = 0;
        pivot(t, basis, pr, pc);
    }
    throw Error("simplex: iteration limit exceeded");
}

} // namespace detail

/// Two-phase dense simplex. Intended for the small feasibility problems that
/// arise in alpha-vector pruning, not for general use.
inline Solution solve(const Problem& p) {
    const std::size_t n = p.objective.size();
    const std::size_t m = p.constraints.size();
    for (const auto& c : p.constraints) {
        if (c.coeffs.size() != n) throw DimensionError("lp: constraint width does not match objective");
    }

    // Column layout: [x (n)] [slack/surplus (one per inequality)] [artificial] [rhs]
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& c : p.constraints) {
        const bool flip = c.rhs < 0.0;
        Relation rel = c.rel;
        if (flip && rel != Relation::Equal) rel = (rel == Relation::LessEq) ? Relation::GreaterEq : Relation::LessEq;
        if (rel != Relation::Equal) ++n_slack;
        if (rel != Relation::LessEq) ++n_art;
    }
    const std::size_t art0 = n + n_slack;
    const std::size_t total = art0 + n_art;
    detail::Tableau t(m + 1, total + 1);
    std::vector<std::size_t> basis(m, 0);

    std::size_t next_slack = n, next_art = art0;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& c = p.constraints[r];
        const double sign = c.rhs < 0.0 ? -1.0 : 1.0;
        Relation rel = c.rel;
        if (sign < 0.0 && rel != Relation::Equal) rel = (rel == Relation::LessEq) ? Relation::GreaterEq : Relation::LessEq;
        for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign * c.coeffs[j];
        t.at(r, total) = sign * c.rhs;
        if (rel == Relation::LessEq) {
            t.at(r, next_slack) = 1.0;
            basis[r] = next_slack++;
        } else if (rel == Relation::GreaterEq) {
            t.at(r, next_slack++) = -1.0;
            t.at(r, next_art) = 1.0;
            basis[r] = next_art++;
        } else {
            t.at(r, next_art) = 1.0;
            basis[r] = next_art++;
        }
    }

    Solution sol;
    if (n_art > 0) {
        // Phase 1: maximize -Σ artificials.
        for (std::size_t c = art0; c < total; ++c) t.at(m, c) = 1.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] >= art0) {
                for (std::size_t c = 0; c <= total; ++c) t.at(m, c) -= t.at(r, c);
            }
        }
        detail::optimize(t, basis, m, total);
        if (-t.at(m, total) > 1e-9) {
            sol.status = Status::Infeasible;
            return sol;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] < art0) continue;
            for (std::size_t c = 0; c < art0; ++c) {
                if (std::abs(t.at(r, c)) > detail::kPivotEps) {
                    detail::pivot(t, basis, r, c);
                    break;
                }
            }
        }
    }

    // Phase 2 objective row: -c, then eliminate basic columns.
    for (std::size_t c = 0; c <= total; ++c) t.at(m, c) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.at(m, j) = -p.objective[j];
    for (std::size_t r = 0; r < m; ++r) {
        const double f = t.at(m, basis[r]);
        if (f == 0.0) continue;
        for (std::size_t c = 0; c <= total; ++c) t.at(m, c) -= f * t.at(r, c);
    }
    const Status st = detail::optimize(t, basis, m, art0);
    sol.status = st;
    if (st != Status::Optimal) return sol;
    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] < n) sol.x[basis[r]] = t.at(r, total);
    }
    sol.objective = t.at(m, total);
    return sol;
}

} // namespace pomdp::lp
