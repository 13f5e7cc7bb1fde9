#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/model.hpp"

namespace pomdp {

/// Linear piece of a PWLC value function, optionally tagged with the action
/// whose backup produced it.
struct AlphaVector {
    std::vector<double> values;
    std::optional<std::size_t> action;

    std::size_t size() const noexcept { return values.size(); }
    double dot(std::span<const double> b) const {
        double v = 0.0;
        for (std::size_t s = 0; s < values.size(); ++s) v += values[s] * b[s];
        return v;
    }

    friend bool operator==(const AlphaVector&, const AlphaVector&) = default;
};

struct VectorSetInfo {
    std::string solver;
    std::size_t epochs = 0;
};

/// Non-empty collection of equally sized alpha vectors; V(b) = max_α b·α.
class VectorSet {
public:
    VectorSet() = default;

    explicit VectorSet(std::vector<AlphaVector> vectors, VectorSetInfo info = {})
        : vectors_(std::move(vectors)), info_(std::move(info)) {
        if (vectors_.empty()) throw DimensionError("vector set: empty");
        const std::size_t n = vectors_.front().size();
        if (n == 0) throw DimensionError("vector set: zero-length vectors");
        for (const auto& v : vectors_) {
            if (v.size() != n) throw DimensionError("vector set: vectors differ in length");
        }
    }

    static VectorSet constant(std::size_t dim, double value, std::string solver = "init") {
        return VectorSet({AlphaVector{std::vector<double>(dim, value), std::nullopt}}, {std::move(solver), 0});
    }

    std::size_t size() const noexcept { return vectors_.size(); }
    std::size_t dimension() const noexcept { return vectors_.empty() ? 0 : vectors_.front().size(); }
    const AlphaVector& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<AlphaVector>& vectors() const noexcept { return vectors_; }
    auto begin() const noexcept { return vectors_.begin(); }
    auto end() const noexcept { return vectors_.end(); }

    const VectorSetInfo& info() const noexcept { return info_; }
    VectorSet with_info(VectorSetInfo info) const {
        VectorSet copy = *this;
        copy.info_ = std::move(info);
        return copy;
    }

    bool all_labeled() const {
        return std::all_of(vectors_.begin(), vectors_.end(), [](const AlphaVector& v) { return v.action.has_value(); });
    }

    friend bool operator==(const VectorSet& a, const VectorSet& b) { return a.vectors_ == b.vectors_; }

private:
    std::vector<AlphaVector> vectors_;
    VectorSetInfo info_;
};

struct ValueAt {
    double value;
    std::size_t index;
};

/// max_α b·α and its index; ties go to the lowest index.
inline ValueAt value_of(const VectorSet& vs, std::span<const double> b) {
    if (vs.size() == 0) throw DimensionError("value_of: empty vector set");
    if (vs.dimension() != b.size()) throw DimensionError("value_of: belief dimension does not match vector set");
    ValueAt best{vs[0].dot(b), 0};
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const double v = vs[i].dot(b);
        if (v > best.value) best = {v, i};
    }
    return best;
}

inline ValueAt value_of(const VectorSet& vs, const BeliefState& b) { return value_of(vs, b.probs()); }

inline bool pointwise_dominates(const AlphaVector& a, const AlphaVector& b) {
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (a.values[s] < b.values[s]) return false;
    }
    return true;
}

inline bool nearly_equal(const AlphaVector& a, const AlphaVector& b, double tol = 1e-12) {
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (std::abs(a.values[s] - b.values[s]) > tol) return false;
    }
    return true;
}

/// Collapse vectors equal within `tol` componentwise; the first occurrence wins.
inline std::vector<AlphaVector> remove_duplicates(std::vector<AlphaVector> vectors, double tol = 1e-12) {
    std::vector<AlphaVector> out;
    out.reserve(vectors.size());
    for (auto& v : vectors) {
        bool dup = false;
        for (const auto& kept : out) {
            if (nearly_equal(kept, v, tol)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(v));
    }
    return out;
}

/// Drop every vector that is pointwise dominated by another one. Among
/// equal vectors the lowest index survives. Order of survivors is preserved.
inline std::vector<AlphaVector> prune_pointwise(std::vector<AlphaVector> vectors, double tol = 1e-12) {
    vectors = remove_duplicates(std::move(vectors), tol);
    const std::size_t n = vectors.size();
    std::vector<char> dead(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (dead[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || dead[j]) continue;
            if (pointwise_dominates(vectors[j], vectors[i])) {
                dead[i] = 1;
                break;
            }
        }
    }
    std::vector<AlphaVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!dead[i]) out.push_back(std::move(vectors[i]));
    }
    return out;
}

} // namespace pomdp
