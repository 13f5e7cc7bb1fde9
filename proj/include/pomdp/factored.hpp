#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/model.hpp"

namespace pomdp {

struct StateVariable {
    std::string name;
    std::vector<std::string> domain;

    std::size_t value_index(std::string_view v) const {
        auto it = std::find(domain.begin(), domain.end(), v);
        if (it == domain.end()) throw LookupError("variable '" + name + "' has no value '" + std::string(v) + "'");
        return static_cast<std::size_t>(it - domain.begin());
    }
};

/// Conditional table of one child given a parent list. Rows enumerate parent
/// assignments in mixed radix (first parent most significant); each row is a
/// dense distribution over the child's values.
struct Cpt {
    std::vector<std::size_t> parents;
    std::size_t child_size = 0;
    std::vector<double> table;

    std::size_t row_count(const std::vector<std::size_t>& radix) const {
        std::size_t n = 1;
        for (std::size_t p : parents) n *= radix[p];
        return n;
    }
    // Row index for a full assignment of the parent-side variables.
    std::size_t row_of(const std::vector<std::size_t>& assignment, const std::vector<std::size_t>& radix) const {
        std::size_t r = 0;
        for (std::size_t p : parents) r = r * radix[p] + assignment[p];
        return r;
    }
    double at(std::size_t row, std::size_t child) const { return table[row * child_size + child]; }
};

/// Two-stage net for transitions: one CPT per post-state variable (in
/// variable order), parents drawn from the pre-state variables.
struct TransitionNet {
    std::string name;
    std::vector<std::string> actions;
    std::vector<Cpt> cpts;
};

/// Observation distribution conditioned on post-state variables.
struct ObservationNet {
    std::string name;
    std::vector<std::string> actions;
    Cpt cpt;
};

struct RewardEntry {
    std::string action;                                          // "*" matches every action
    std::vector<std::pair<std::size_t, std::size_t>> condition;  // (variable, value) conjunction; empty = any
    double value = 0.0;
    std::string category;                                        // optional label
};

/// Factored POMDP. Reward entries are applied in order and later matches
/// overwrite earlier ones; unmatched cells are zero. The initial belief is the
/// product of the per-variable start marginals.
struct FactoredSpec {
    std::vector<StateVariable> variables;
    std::vector<std::string> actions;
    std::vector<std::string> observations;
    std::vector<TransitionNet> transition_nets;
    std::vector<ObservationNet> observation_nets;
    std::vector<RewardEntry> rewards;
    double discount = 0.95;
    std::vector<std::vector<double>> start;
    // Optional declared order of reward categories; categories not listed
    // follow in order of first use.
    std::vector<std::string> category_order;

    std::size_t variable_index(std::string_view name) const {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (variables[i].name == name) return i;
        }
        throw LookupError("unknown variable '" + std::string(name) + "'");
    }

    std::vector<std::size_t> radix() const {
        std::vector<std::size_t> r;
        for (const auto& v : variables) r.push_back(v.domain.size());
        return r;
    }

    std::size_t num_states() const {
        std::size_t n = 1;
        for (const auto& v : variables) n *= v.domain.size();
        return n;
    }
};

namespace detail {

inline void decode_state(std::size_t s, const std::vector<std::size_t>& radix, std::vector<std::size_t>& out) {
    out.resize(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
        out[i] = s % radix[i];
        s /= radix[i];
    }
}

inline void check_cpt(const Cpt& cpt, const std::vector<std::size_t>& parent_radix, std::size_t child_size,
                      const std::string& where) {
    for (std::size_t p : cpt.parents) {
        if (p >= parent_radix.size()) throw ValidationError(where + ": parent index out of range");
    }
    if (cpt.child_size != child_size) throw ValidationError(where + ": child domain size mismatch");
    const std::size_t rows = cpt.row_count(parent_radix);
    if (cpt.table.size() != rows * child_size) {
        throw ValidationError(where + ": expected " + std::to_string(rows) + " rows");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < child_size; ++c) {
            const double p = cpt.at(r, c);
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ValidationError(where + ": row " + std::to_string(r) + " has an entry outside [0,1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbTolerance) {
            throw ValidationError(where + ": row " + std::to_string(r) + " sums to " + std::to_string(sum));
        }
    }
}

template <class Net>
std::vector<const Net*> cover_actions(const FactoredSpec& spec, const std::vector<Net>& nets, const char* kind) {
    std::vector<const Net*> by_action(spec.actions.size(), nullptr);
    for (const auto& net : nets) {
        for (const auto& a : net.actions) {
            auto it = std::find(spec.actions.begin(), spec.actions.end(), a);
            if (it == spec.actions.end()) {
                throw LookupError(std::string(kind) + " net '" + net.name + "' names unknown action '" + a + "'");
            }
            auto& slot = by_action[static_cast<std::size_t>(it - spec.actions.begin())];
            if (slot) throw ValidationError("action '" + a + "' is covered by two " + kind + " nets");
            slot = &net;
        }
    }
    for (std::size_t a = 0; a < by_action.size(); ++a) {
        if (!by_action[a]) throw ValidationError("action '" + spec.actions[a] + "' has no " + kind + " net");
    }
    return by_action;
}

} // namespace detail

/// Flat state name: variable values joined with '.'.
inline std::string factored_state_name(const FactoredSpec& spec, const std::vector<std::size_t>& assignment) {
    std::string name;
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
        if (i) name += '.';
        name += spec.variables[i].domain[assignment[i]];
    }
    return name;
}

/// Flatten a factored specification over the cartesian product of the
/// variable domains (first variable most significant).
inline PomdpModel compile_factored(const FactoredSpec& spec) {
    if (spec.variables.empty()) throw ValidationError("factored spec: no variables");
    for (const auto& v : spec.variables) {
        if (v.domain.empty()) throw ValidationError("variable '" + v.name + "' has an empty domain");
        std::unordered_set<std::string> seen(v.domain.begin(), v.domain.end());
        if (seen.size() != v.domain.size()) throw ValidationError("variable '" + v.name + "' repeats a value");
    }
    const auto radix = spec.radix();
    const std::size_t nv = radix.size();
    const std::size_t ns = spec.num_states(), na = spec.actions.size(), no = spec.observations.size();
    if (na == 0 || no == 0) throw ValidationError("factored spec: no actions or observations");

    for (const auto& net : spec.transition_nets) {
        if (net.cpts.size() != nv) throw ValidationError("transition net '" + net.name + "' needs one cpt per variable");
        for (std::size_t v = 0; v < nv; ++v) {
            detail::check_cpt(net.cpts[v], radix, radix[v],
                              "transition net '" + net.name + "' variable '" + spec.variables[v].name + "'");
        }
    }
    for (const auto& net : spec.observation_nets) {
        detail::check_cpt(net.cpt, radix, no, "observation net '" + net.name + "'");
    }
    const auto tnet = detail::cover_actions(spec, spec.transition_nets, "transition");
    const auto onet = detail::cover_actions(spec, spec.observation_nets, "observation");

    std::vector<std::vector<std::size_t>> assign(ns);
    for (std::size_t s = 0; s < ns; ++s) detail::decode_state(s, radix, assign[s]);

    std::vector<double> T(na * ns * ns, 0.0), O(na * ns * no, 0.0), R(na * ns, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
        const TransitionNet& net = *tnet[a];
        for (std::size_t s = 0; s < ns; ++s) {
            std::vector<std::size_t> rows(nv);
            for (std::size_t v = 0; v < nv; ++v) rows[v] = net.cpts[v].row_of(assign[s], radix);
            for (std::size_t s2 = 0; s2 < ns; ++s2) {
                double p = 1.0;
                for (std::size_t v = 0; v < nv && p != 0.0; ++v) p *= net.cpts[v].at(rows[v], assign[s2][v]);
                T[(a * ns + s) * ns + s2] = p;
            }
        }
        const Cpt& ocpt = onet[a]->cpt;
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
            const std::size_t row = ocpt.row_of(assign[s2], radix);
            for (std::size_t o = 0; o < no; ++o) O[(a * ns + s2) * no + o] = ocpt.at(row, o);
        }
    }

    std::vector<std::string> cat_names = spec.category_order;
    std::vector<double> cat_values(cat_names.size(), 0.0);
    std::vector<char> cat_seen(cat_names.size(), 0);
    std::vector<std::size_t> cells(na * ns, 0);
    bool labelled = false;
    std::vector<char> has_cat(na * ns, 0);
    for (const auto& e : spec.rewards) {
        std::optional<std::size_t> only;
        if (e.action != "*") {
            auto it = std::find(spec.actions.begin(), spec.actions.end(), e.action);
            if (it == spec.actions.end()) throw LookupError("reward entry names unknown action '" + e.action + "'");
            only = static_cast<std::size_t>(it - spec.actions.begin());
        }
        for (const auto& [var, val] : e.condition) {
            if (var >= nv || val >= radix[var]) throw LookupError("reward entry references an unknown value");
        }
        std::size_t cat = 0;
        if (!e.category.empty()) {
            labelled = true;
            auto it = std::find(cat_names.begin(), cat_names.end(), e.category);
            if (it == cat_names.end()) {
                cat_names.push_back(e.category);
                cat_values.push_back(e.value);
                cat_seen.push_back(1);
                cat = cat_names.size() - 1;
            } else {
                cat = static_cast<std::size_t>(it - cat_names.begin());
                if (!cat_seen[cat]) {
                    cat_values[cat] = e.value;
                    cat_seen[cat] = 1;
                }
            }
        }
        for (std::size_t a = 0; a < na; ++a) {
            if (only && *only != a) continue;
            for (std::size_t s = 0; s < ns; ++s) {
                const bool match = std::all_of(e.condition.begin(), e.condition.end(),
                                               [&](const auto& c) { return assign[s][c.first] == c.second; });
                if (!match) continue;
                R[a * ns + s] = e.value;
                if (!e.category.empty()) {
                    cells[a * ns + s] = cat;
                    has_cat[a * ns + s] = 1;
                }
            }
        }
    }

    std::vector<double> start(ns, 1.0);
    if (!spec.start.empty()) {
        if (spec.start.size() != nv) throw ValidationError("start: one marginal per variable required");
        for (std::size_t v = 0; v < nv; ++v) {
            if (spec.start[v].size() != radix[v]) {
                throw ValidationError("start: marginal for '" + spec.variables[v].name + "' has wrong length");
            }
        }
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t v = 0; v < nv; ++v) start[s] *= spec.start[v][assign[s][v]];
        }
    } else {
        std::fill(start.begin(), start.end(), 1.0 / static_cast<double>(ns));
    }

    std::vector<std::string> names(ns);
    for (std::size_t s = 0; s < ns; ++s) names[s] = factored_state_name(spec, assign[s]);

    PomdpModel model(std::move(names), spec.actions, spec.observations, std::move(T), std::move(O), std::move(R),
                     spec.discount, std::move(start));
    if (labelled) {
        // Unlabelled cells fall into a catch-all category keyed by value.
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (has_cat[i]) continue;
            const double v = model.reward_table()[i];
            const std::string nm = "unlabelled";
            std::size_t c = cat_names.size();
            for (std::size_t k = 0; k < cat_names.size(); ++k) {
                if (cat_names[k] == nm && cat_values[k] == v) c = k;
            }
            if (c == cat_names.size()) {
                cat_names.push_back(nm);
                cat_values.push_back(v);
            }
            cells[i] = c;
        }
        model = model.with_reward_categories({std::move(cat_names), std::move(cat_values), std::move(cells)});
    }
    require_valid(model);
    return model;
}

/// Unordered pairs of behaviourally equivalent states: both lie in the same
/// block of the coarsest partition on which, for every action, rewards and
/// observation rows agree and transition mass into each block agrees (all
/// within `tol`). Swapping every such pair at once leaves the tables intact
/// whenever each block has two members, and any value function built from
/// block-constant vectors stays block-constant under the Bellman backup.
inline std::vector<std::pair<std::size_t, std::size_t>> find_equivalent_states(const PomdpModel& m,
                                                                              double tol = 1e-9) {
    const std::size_t ns = m.num_states(), na = m.num_actions(), no = m.num_observations();
    auto same_local = [&](std::size_t i, std::size_t j) {
        for (std::size_t a = 0; a < na; ++a) {
            if (std::abs(m.r(a, i) - m.r(a, j)) > tol) return false;
            for (std::size_t o = 0; o < no; ++o) {
                if (std::abs(m.o(a, i, o) - m.o(a, j, o)) > tol) return false;
            }
        }
        return true;
    };
    // block[s] is the index of the block holding s; blocks are numbered by
    // their lowest member so the result is order-independent of refinement.
    std::vector<std::size_t> block(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        block[s] = s;
        for (std::size_t r = 0; r < s; ++r) {
            if (block[r] == r && same_local(r, s)) {
                block[s] = r;
                break;
            }
        }
    }
    std::vector<double> mass_i(ns), mass_j(ns);
    auto same_flow = [&](std::size_t i, std::size_t j) {
        for (std::size_t a = 0; a < na; ++a) {
            std::fill(mass_i.begin(), mass_i.end(), 0.0);
            std::fill(mass_j.begin(), mass_j.end(), 0.0);
            for (std::size_t s2 = 0; s2 < ns; ++s2) {
                mass_i[block[s2]] += m.t(a, i, s2);
                mass_j[block[s2]] += m.t(a, j, s2);
            }
            for (std::size_t b = 0; b < ns; ++b) {
                if (std::abs(mass_i[b] - mass_j[b]) > tol) return false;
            }
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::size_t> next(ns);
        for (std::size_t s = 0; s < ns; ++s) {
            next[s] = s;
            for (std::size_t r = 0; r < s; ++r) {
                if (next[r] == r && block[r] == block[s] && same_flow(r, s)) {
                    next[s] = r;
                    break;
                }
            }
            if (next[s] != block[s]) changed = true;
        }
        block = std::move(next);
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = i + 1; j < ns; ++j) {
            if (block[i] == block[j]) out.emplace_back(i, j);
        }
    }
    return out;
}

} // namespace pomdp
