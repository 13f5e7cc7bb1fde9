#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

struct SolverConfig {
    std::size_t max_epochs = 10000;
    double residual_tolerance = 1e-6;
    std::uint64_t seed = 0;
    // Working-set guard for the exact solver.
    std::size_t max_vectors = 100000;
    // Exact solver: also drop vectors whose best margin is at most this. Each
    // backup then undershoots the exact one by at most 2|Ω| times it.
    double prune_tolerance = 0.0;

    void validate() const {
        if (max_epochs < 1) throw ConfigError("max_epochs must be at least 1");
        if (!(residual_tolerance > 0.0)) throw ConfigError("residual tolerance must be positive");
        if (!(prune_tolerance >= 0.0)) throw ConfigError("prune tolerance must be non-negative");
    }
};

enum class Termination { Epochs, Tolerance };

inline const char* to_string(Termination t) { return t == Termination::Epochs ? "epochs" : "tolerance"; }

struct EpochStats {
    std::size_t vector_count = 0;
    double residual = 0.0;
    double wall_ms = 0.0;
};

struct SolveResult {
    VectorSet vector_set;
    std::vector<EpochStats> stats;
    Termination terminated_by = Termination::Epochs;

    std::size_t epochs() const noexcept { return stats.size(); }
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

} // namespace pomdp
