#include <cmath>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "pomdp/pomdp.hpp"
#include "support/oracles.hpp"

namespace {

using namespace pomdp;

// Dialogue state layout: ((type * 2 + place) * 2 + property) * 5 + hidden.
struct DialogueState {
    std::size_t type, place, property, hidden;
};

DialogueState decode(std::size_t s) {
    return {s / 20, (s / 10) % 2, (s / 5) % 2, s % 5};
}

std::size_t intention_of(std::size_t s) { return s / 5; }

FactoredSpec one_binary_identity() {
    FactoredSpec s;
    s.variables = {{"x", {"a", "b"}}};
    s.actions = {"noop"};
    s.observations = {"o"};
    s.transition_nets.push_back({"id", {"noop"}, {Cpt{{0}, 2, {1, 0, 0, 1}}}});
    s.observation_nets.push_back({"flat", {"noop"}, Cpt{{}, 1, {1}}});
    s.discount = 0.9;
    return s;
}

FactoredSpec two_independent_binaries() {
    FactoredSpec s;
    s.variables = {{"x", {"x0", "x1"}}, {"y", {"y0", "y1"}}};
    s.actions = {"go"};
    s.observations = {"lo", "hi"};
    s.transition_nets.push_back({"t", {"go"}, {Cpt{{0}, 2, {0.9, 0.1, 0.3, 0.7}}, Cpt{{1}, 2, {0.6, 0.4, 0.25, 0.75}}}});
    s.observation_nets.push_back({"o", {"go"}, Cpt{{0}, 2, {0.8, 0.2, 0.1, 0.9}}});
    s.discount = 0.95;
    return s;
}

// Random spec over two variables with random parent sets, several nets and
// reward patterns. Parents are drawn independently per CPT.
FactoredSpec random_two_variable_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dom(2, 3), coin(0, 1);
    FactoredSpec s;
    for (std::size_t v = 0; v < 2; ++v) {
        StateVariable var{"v" + std::to_string(v), {}};
        const std::size_t d = dom(rng);
        for (std::size_t i = 0; i < d; ++i) var.domain.push_back("v" + std::to_string(v) + "_" + std::to_string(i));
        s.variables.push_back(var);
    }
    s.actions = {"a0", "a1", "a2"};
    s.observations = {"o0", "o1", "o2"};
    const auto radix = s.radix();
    auto random_cpt = [&](std::size_t child) {
        Cpt c;
        c.child_size = child;
        for (std::size_t p = 0; p < 2; ++p) {
            if (coin(rng)) c.parents.push_back(p);
        }
        if (coin(rng) && c.parents.size() == 2) std::swap(c.parents[0], c.parents[1]);
        for (std::size_t r = 0; r < c.row_count(radix); ++r) {
            const auto row = oracle::random_row(rng, child, 0.3);
            c.table.insert(c.table.end(), row.begin(), row.end());
        }
        return c;
    };
    s.transition_nets.push_back({"t0", {"a0", "a2"}, {random_cpt(radix[0]), random_cpt(radix[1])}});
    s.transition_nets.push_back({"t1", {"a1"}, {random_cpt(radix[0]), random_cpt(radix[1])}});
    s.observation_nets.push_back({"o0", {"a1"}, random_cpt(3)});
    s.observation_nets.push_back({"o1", {"a0", "a2"}, random_cpt(3)});
    s.rewards.push_back({"*", {}, -1.0, ""});
    s.rewards.push_back({"a0", {{0, 1}}, 4.0, ""});
    s.rewards.push_back({"*", {{0, 0}, {1, 1}}, 2.5, ""});
    s.discount = 0.9;
    return s;
}

// Entry of a CPT computed from first principles: the row index is the
// mixed-radix number formed by the parent values in listed order.
double cpt_entry(const FactoredSpec& spec, const Cpt& c, const std::vector<std::size_t>& x, std::size_t child) {
    std::size_t row = 0;
    for (std::size_t p : c.parents) row = row * spec.variables[p].domain.size() + x[p];
    return c.table[row * c.child_size + child];
}

TEST(CompileFactored, OneBinaryIdentityNet) {
    const auto m = compile_factored(one_binary_identity());
    ASSERT_EQ(m.num_states(), 2u);
    EXPECT_EQ(m.states(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(m.t(0, 0, 0), 1.0);
    EXPECT_EQ(m.t(0, 0, 1), 0.0);
    EXPECT_EQ(m.t(0, 1, 0), 0.0);
    EXPECT_EQ(m.t(0, 1, 1), 1.0);
    EXPECT_EQ(m.initial_probs(), (std::vector<double>{0.5, 0.5}));
}

TEST(CompileFactored, IndependentVariablesFactorize) {
    const double tx[2][2] = {{0.9, 0.1}, {0.3, 0.7}};
    const double ty[2][2] = {{0.6, 0.4}, {0.25, 0.75}};
    const auto m = compile_factored(two_independent_binaries());
    ASSERT_EQ(m.num_states(), 4u);
    EXPECT_EQ(m.states()[2], "x1.y0");
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            for (std::size_t x2 = 0; x2 < 2; ++x2) {
                for (std::size_t y2 = 0; y2 < 2; ++y2) {
                    EXPECT_DOUBLE_EQ(m.t(0, x * 2 + y, x2 * 2 + y2), tx[x][x2] * ty[y][y2]);
                }
            }
        }
    }
    EXPECT_DOUBLE_EQ(m.o(0, 3, 1), 0.9);
    EXPECT_DOUBLE_EQ(m.o(0, 1, 0), 0.8);
}

TEST(CompileFactored, StartIsProductOfMarginals) {
    auto spec = two_independent_binaries();
    spec.start = {{0.25, 0.75}, {1.0, 0.0}};
    const auto m = compile_factored(spec);
    EXPECT_EQ(m.initial_probs(), (std::vector<double>{0.25, 0.0, 0.75, 0.0}));
}

TEST(CompileFactored, LaterRewardEntriesOverwrite) {
    auto spec = two_independent_binaries();
    spec.rewards = {{"*", {}, -1.0, ""}, {"go", {{0, 1}}, 3.0, ""}, {"go", {{0, 1}, {1, 1}}, 7.0, ""}};
    const auto m = compile_factored(spec);
    EXPECT_EQ(m.reward_table(), (std::vector<double>{-1, -1, 3, 7}));
}

TEST(CompileFactored, UncoveredActionIsRejected) {
    auto spec = two_independent_binaries();
    spec.actions.push_back("extra");
    EXPECT_THROW(compile_factored(spec), ValidationError);
}

TEST(CompileFactored, ActionCoveredTwiceIsRejected) {
    auto spec = two_independent_binaries();
    spec.transition_nets.push_back(spec.transition_nets.front());
    EXPECT_THROW(compile_factored(spec), ValidationError);
}

TEST(CompileFactored, RowSumViolationIsRejected) {
    auto spec = two_independent_binaries();
    spec.transition_nets[0].cpts[1].table[2] = 0.3;
    EXPECT_THROW(compile_factored(spec), ValidationError);
}

TEST(CompileFactored, PatternWithUnknownValueIsRejected) {
    auto spec = two_independent_binaries();
    spec.rewards.push_back({"go", {{1, 2}}, 1.0, ""});
    EXPECT_THROW(compile_factored(spec), LookupError);
    spec.rewards.back() = {"jump", {}, 1.0, ""};
    EXPECT_THROW(compile_factored(spec), LookupError);
}

TEST(CompileFactored, MatchesBruteForceOnRandomSpecs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_two_variable_spec(rng);
        const auto m = compile_factored(spec);
        const std::size_t n1 = spec.variables[1].domain.size();
        ASSERT_EQ(m.num_states(), spec.variables[0].domain.size() * n1);
        for (std::size_t a = 0; a < m.num_actions(); ++a) {
            const std::size_t tn = a == 1 ? 1 : 0, on = a == 1 ? 0 : 1;
            for (std::size_t s = 0; s < m.num_states(); ++s) {
                const std::vector<std::size_t> x = {s / n1, s % n1};
                double r = -1.0;
                if (a == 0 && x[0] == 1) r = 4.0;
                if (x[0] == 0 && x[1] == 1) r = 2.5;
                EXPECT_EQ(m.r(a, s), r);
                for (std::size_t s2 = 0; s2 < m.num_states(); ++s2) {
                    const std::vector<std::size_t> y = {s2 / n1, s2 % n1};
                    const double p = cpt_entry(spec, spec.transition_nets[tn].cpts[0], x, y[0]) *
                                     cpt_entry(spec, spec.transition_nets[tn].cpts[1], x, y[1]);
                    EXPECT_NEAR(m.t(a, s, s2), p, 1e-12);
                }
                for (std::size_t o = 0; o < 3; ++o) {
                    EXPECT_NEAR(m.o(a, s, o), cpt_entry(spec, spec.observation_nets[on].cpt, x, o), 1e-12);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dialogue model

TEST(DialogueModel, CountsDiscountAndStart) {
    const auto m = dialogue::build_dialogue_model("standard");
    EXPECT_EQ(m.num_states(), 40u);
    EXPECT_EQ(m.num_actions(), 18u);
    EXPECT_EQ(m.num_observations(), 25u);
    EXPECT_EQ(m.discount(), 0.9);
    for (std::size_t s = 0; s < 40; ++s) {
        EXPECT_DOUBLE_EQ(m.initial_probs()[s], decode(s).hidden == 0 ? 0.125 : 0.0) << m.states()[s];
    }
    EXPECT_EQ(m.states()[0], "visit.gate.height.normal");
    EXPECT_EQ(m.states()[39], "ask.hall.size.overheard");
}

TEST(DialogueModel, ActionRoster) {
    const auto names = dialogue::action_names();
    const std::vector<std::string> expected = {
        "answer-gate-height", "answer-gate-size", "answer-hall-height", "answer-hall-size", "goto-gate", "goto-hall",
        "ask-repeat", "ask-type", "ask-place", "ask-property", "declare-visit", "declare-ask", "declare-gate",
        "declare-hall", "declare-height", "declare-size", "ignore", "troubleshoot"};
    EXPECT_EQ(names, expected);
}

TEST(DialogueModel, ObservationRosterAndCategories) {
    const auto names = dialogue::observation_names();
    ASSERT_EQ(names.size(), 25u);
    std::map<std::string, int> count;
    for (const auto& n : names) ++count[dialogue::observation_category(n)];
    EXPECT_EQ(count["no-info"], 3);
    EXPECT_EQ(count["yes-no"], 2);
    // Complete requests: visit × place (2) and ask × place × property (4).
    EXPECT_EQ(count["full"], 6);
    EXPECT_EQ(count["partial"], 14);
    EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), 25u);
    EXPECT_EQ(dialogue::observation_category("hello"), "other");
}

TEST(DialogueModel, RewardCategoryValues) {
    const auto m = dialogue::build_dialogue_model("standard");
    ASSERT_TRUE(m.reward_categories().has_value());
    const auto& cats = *m.reward_categories();
    const std::map<std::string, double> expected = {
        {"ask-repeat", -4},          {"ignore-wrong", -3},       {"ask-intention", -2},
        {"declare", -1},             {"ignore-right", 0},        {"troubleshoot-wrong", -20},
        {"action-wrong", -20},       {"right-type-no-param", -15}, {"right-type-has-param", -10},
        {"domain-right", 10},        {"troubleshoot-right", 20}};
    ASSERT_EQ(cats.names.size(), 11u);
    for (std::size_t i = 0; i < cats.names.size(); ++i) {
        EXPECT_EQ(cats.names[i], dialogue::kRewardCategories[i]);
        EXPECT_EQ(cats.values[i], expected.at(cats.names[i]));
    }
    for (std::size_t c = 0; c < cats.cell.size(); ++c) {
        EXPECT_EQ(m.reward_table()[c], cats.values[cats.cell[c]]);
    }
}

TEST(DialogueModel, RewardCells) {
    const auto m = dialogue::build_dialogue_model("standard");
    auto r = [&m](const char* a, const char* s) { return m.r(m.action_index(a), m.state_index(s)); };
    EXPECT_EQ(r("goto-gate", "visit.gate.size.silent"), 10);
    EXPECT_EQ(r("goto-gate", "visit.hall.height.normal"), -15);
    EXPECT_EQ(r("goto-gate", "ask.gate.height.normal"), -20);
    EXPECT_EQ(r("answer-gate-height", "ask.gate.height.normal"), 10);
    EXPECT_EQ(r("answer-gate-height", "ask.gate.size.normal"), -10);
    EXPECT_EQ(r("answer-gate-height", "ask.hall.height.normal"), -10);
    EXPECT_EQ(r("answer-gate-height", "ask.hall.size.normal"), -15);
    EXPECT_EQ(r("answer-gate-height", "visit.gate.height.normal"), -20);
    EXPECT_EQ(r("troubleshoot", "ask.hall.size.error-noisy"), 20);
    EXPECT_EQ(r("troubleshoot", "ask.hall.size.error-silent"), 20);
    EXPECT_EQ(r("troubleshoot", "ask.hall.size.silent"), -20);
    EXPECT_EQ(r("ignore", "visit.gate.height.overheard"), 0);
    EXPECT_EQ(r("ignore", "visit.gate.height.silent"), 0);
    EXPECT_EQ(r("ignore", "visit.gate.height.normal"), -3);
    EXPECT_EQ(r("ask-repeat", "visit.gate.height.normal"), -4);
    EXPECT_EQ(r("ask-place", "visit.gate.height.normal"), -2);
    EXPECT_EQ(r("declare-size", "visit.gate.height.normal"), -1);
}

TEST(DialogueModel, EveryPresetIsValid) {
    for (const auto& preset : dialogue::kPresets) {
        const auto m = dialogue::build_dialogue_model(preset);
        EXPECT_TRUE(validate_model(m).empty()) << preset;
    }
    EXPECT_THROW(dialogue::build_dialogue_model("quiet"), ConfigError);
}

TEST(DialogueModel, RepairActionsFreezeTheIntention) {
    for (const auto& preset : dialogue::kPresets) {
        const auto m = dialogue::build_dialogue_model(preset);
        for (std::size_t a = 6; a < 18; ++a) {
            for (std::size_t s = 0; s < 40; ++s) {
                for (std::size_t s2 = 0; s2 < 40; ++s2) {
                    if (intention_of(s) != intention_of(s2)) {
                        EXPECT_EQ(m.t(a, s, s2), 0.0);
                    }
                }
            }
        }
    }
}

TEST(DialogueModel, DomainActionsResampleTheIntention) {
    const auto m = dialogue::build_dialogue_model("standard");
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t s = 0; s < 40; ++s) {
            std::vector<double> intention(8, 0.0);
            for (std::size_t s2 = 0; s2 < 40; ++s2) intention[intention_of(s2)] += m.t(a, s, s2);
            for (double p : intention) EXPECT_NEAR(p, 0.125, 1e-12);
        }
    }
}

TEST(DialogueModel, OnlyTroubleshootChangesHiddenDynamics) {
    for (const auto& preset : dialogue::kPresets) {
        const auto m = dialogue::build_dialogue_model(preset);
        auto hidden_marginal = [&m](std::size_t a, std::size_t s) {
            std::vector<double> h(5, 0.0);
            for (std::size_t s2 = 0; s2 < 40; ++s2) h[decode(s2).hidden] += m.t(a, s, s2);
            return h;
        };
        const std::size_t troubleshoot = m.action_index("troubleshoot");
        for (std::size_t s = 0; s < 40; ++s) {
            const auto ref = hidden_marginal(0, s);
            for (std::size_t a = 1; a < 18; ++a) {
                if (a == troubleshoot) continue;
                const auto h = hidden_marginal(a, s);
                for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(h[k], ref[k], 1e-12) << preset << " a=" << a;
            }
        }
        // Troubleshooting an error state mostly repairs it.
        const auto fixed = hidden_marginal(troubleshoot, m.state_index("ask.gate.size.error-noisy"));
        const auto drift = hidden_marginal(0, m.state_index("ask.gate.size.error-noisy"));
        EXPECT_GT(fixed[0], drift[0]) << preset;
    }
}

TEST(DialogueModel, PresetsChangeOnlyTheirOwnTables) {
    const auto standard = dialogue::build_dialogue_model("standard");
    const auto cheap = dialogue::build_dialogue_model("lower-cost");
    const auto noisy = dialogue::build_dialogue_model("noisy");
    const auto both = dialogue::build_dialogue_model("noisy-lower-cost");

    EXPECT_EQ(cheap.transition_table(), standard.transition_table());
    EXPECT_EQ(cheap.observation_table(), standard.observation_table());
    EXPECT_NE(cheap.reward_table(), standard.reward_table());

    EXPECT_EQ(noisy.reward_table(), standard.reward_table());
    EXPECT_NE(noisy.transition_table(), standard.transition_table());
    EXPECT_NE(noisy.observation_table(), standard.observation_table());

    EXPECT_EQ(both.reward_table(), cheap.reward_table());
    EXPECT_EQ(both.transition_table(), noisy.transition_table());
    EXPECT_EQ(both.observation_table(), noisy.observation_table());
}

TEST(DialogueModel, LowerCostHalvesTheWrongActionCosts) {
    const auto p = dialogue::preset_params("lower-cost");
    const std::array<double, 11> expected = {-4, -3, -2, -1, 0, -10, -10, -7.5, -5, 10, 20};
    EXPECT_EQ(p.rewards, expected);
}

TEST(DialogueModel, NoisyRaisesAbnormalEntryAndFalseObservations) {
    const auto s = dialogue::preset_params("standard");
    const auto n = dialogue::preset_params("noisy");
    EXPECT_DOUBLE_EQ(n.enter_silent, 2 * s.enter_silent);
    EXPECT_DOUBLE_EQ(n.enter_overheard, 2 * s.enter_overheard);
    EXPECT_DOUBLE_EQ(n.full_request, s.full_request / 2);
    EXPECT_DOUBLE_EQ(n.answer_correct, s.answer_correct / 2);
    EXPECT_GT(n.wrong_request, s.wrong_request);
    EXPECT_GT(n.confirm_wrong, s.confirm_wrong);
}

TEST(DialogueParams, OverridesThenPreset) {
    const auto p = dialogue::parse_params("# tuned\nfull_request = 0.4\nreward.declare = -2\n", "noisy");
    EXPECT_DOUBLE_EQ(p.full_request, 0.2);
    EXPECT_EQ(p.rewards[3], -2);
    EXPECT_EQ(p.preset, "noisy");
}

TEST(DialogueParams, Errors) {
    try {
        dialogue::parse_params("full_request = 0.4\nloudness = 3\n", "standard");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(dialogue::parse_params("leave_silent = 1.5\n", "standard"), ConfigError);
    EXPECT_THROW(dialogue::parse_params("wrong_request = 0.6\n", "standard"), ConfigError);
    EXPECT_THROW(dialogue::parse_params("", "loud"), ConfigError);
}

// ---------------------------------------------------------------------------
// Equivalent states

TEST(EquivalentStates, DialogueHasTenVisitPropertyPairs) {
    for (const auto& preset : dialogue::kPresets) {
        const auto m = dialogue::build_dialogue_model(preset);
        const auto pairs = find_equivalent_states(m);
        ASSERT_EQ(pairs.size(), 10u) << preset;
        for (const auto& [i, j] : pairs) {
            const auto a = decode(i), b = decode(j);
            EXPECT_EQ(a.type, 0u);
            EXPECT_EQ(b.type, 0u);
            EXPECT_EQ(a.place, b.place);
            EXPECT_EQ(a.hidden, b.hidden);
            EXPECT_NE(a.property, b.property);
        }
    }
}

TEST(EquivalentStates, SwappingAllDialoguePairsAtOnceIsASymmetry) {
    const auto m = dialogue::build_dialogue_model("noisy");
    std::vector<std::size_t> perm(40);
    for (std::size_t s = 0; s < 40; ++s) perm[s] = s;
    for (const auto& [i, j] : find_equivalent_states(m)) std::swap(perm[i], perm[j]);
    for (std::size_t a = 0; a < 18; ++a) {
        for (std::size_t s = 0; s < 40; ++s) {
            EXPECT_EQ(m.r(a, perm[s]), m.r(a, s));
            for (std::size_t o = 0; o < 25; ++o) EXPECT_NEAR(m.o(a, perm[s], o), m.o(a, s, o), 1e-12);
            for (std::size_t s2 = 0; s2 < 40; ++s2) EXPECT_NEAR(m.t(a, perm[s], perm[s2]), m.t(a, s, s2), 1e-12);
        }
    }
}

TEST(EquivalentStates, UnevenSplitIntoACopyStillCounts) {
    // Mass entering the duplicated state may be split in any proportion: the
    // copies stay interchangeable for every value computed by backups.
    const PomdpModel m({"x", "y", "y2"}, {"a"}, {"o", "p"},
                       {0.5, 0.1, 0.4, 0.2, 0.2, 0.6, 0.2, 0.7, 0.1}, {1, 0, 0.3, 0.7, 0.3, 0.7}, {1, 2, 2}, 0.9,
                       {1, 0, 0});
    ASSERT_TRUE(validate_model(m).empty());
    EXPECT_EQ(find_equivalent_states(m), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}}));
}

TEST(EquivalentStates, TigerHasNone) { EXPECT_TRUE(find_equivalent_states(fixtures::tiger85()).empty()); }

TEST(EquivalentStates, DuplicatedStateGivesOnePair) {
    // tiger85 plus a verbatim copy of tiger-left: rows and columns of the copy
    // match the original, and mass entering "left" is split between the two.
    const auto t = fixtures::tiger85();
    const std::size_t na = 3, no = 2;
    std::vector<double> T, O, R;
    auto src = [](std::size_t s) { return s == 2 ? std::size_t{0} : s; };
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t s2 = 0; s2 < 3; ++s2) {
                const double p = t.t(a, src(s), src(s2));
                T.push_back(src(s2) == 0 ? p / 2 : p);
            }
        }
    }
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < 3; ++s) {
            for (std::size_t o = 0; o < no; ++o) O.push_back(t.o(a, src(s), o));
        }
    }
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t s = 0; s < 3; ++s) R.push_back(t.r(a, src(s)));
    }
    const PomdpModel m({"left", "right", "left-copy"}, t.actions(), t.observations(), T, O, R, t.discount(),
                       {0.25, 0.5, 0.25});
    ASSERT_TRUE(validate_model(m).empty());
    const auto pairs = find_equivalent_states(m);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0], (std::pair<std::size_t, std::size_t>{0, 2}));
}

TEST(EquivalentStates, SolversPreserveDialogueEquivalence) {
    const auto m = dialogue::build_dialogue_model("standard");
    const auto pairs = find_equivalent_states(m);
    ASSERT_EQ(pairs.size(), 10u);
    SolverConfig cfg;
    cfg.seed = 3;
    std::vector<std::pair<std::string, VectorSet>> sets = {
        {"mdp", solve_mdp(m, cfg).vector_set},
        {"qmdp", solve_qmdp(m, cfg).vector_set},
        {"fib", solve_fib(m, cfg).vector_set},
    };
    SolverConfig gcfg = cfg;
    gcfg.max_epochs = 10;
    const auto sims = qmdp_trace(m, 300, 3);
    for (auto strategy : {GridStrategy::Fixed, GridStrategy::Random, GridStrategy::RandomSGrid,
                          GridStrategy::ClusterSGrid}) {
        GridConfig g{strategy, 24, strategy == GridStrategy::Random, sims};
        sets.emplace_back(to_string(strategy), solve_grid(m, gcfg, g).vector_set);
    }
    for (const auto& [name, vs] : sets) {
        for (const auto& alpha : vs) {
            for (const auto& [i, j] : pairs) EXPECT_NEAR(alpha.values[i], alpha.values[j], 1e-9) << name;
        }
    }
}

// ---------------------------------------------------------------------------
// Factored file format

TEST(FactoredFormat, RoundTripIsExact) {
    std::mt19937_64 rng(11);
    std::vector<FactoredSpec> specs = {dialogue::dialogue_spec(dialogue::preset_params("noisy")),
                                       two_independent_binaries()};
    for (int i = 0; i < 20; ++i) specs.push_back(random_two_variable_spec(rng));
    specs.back().start = {std::vector<double>(specs.back().variables[0].domain.size(), 0.0),
                          oracle::random_row(rng, specs.back().variables[1].domain.size(), 0.0)};
    specs.back().start[0][0] = 1.0;
    for (const auto& spec : specs) {
        const std::string text = write_factored_spec(spec);
        const auto again = parse_factored_spec(text);
        EXPECT_EQ(write_factored_spec(again), text);
        const auto a = compile_factored(spec), b = compile_factored(again);
        EXPECT_EQ(a.transition_table(), b.transition_table());
        EXPECT_EQ(a.observation_table(), b.observation_table());
        EXPECT_EQ(a.reward_table(), b.reward_table());
        EXPECT_EQ(a.initial_probs(), b.initial_probs());
        EXPECT_EQ(a.states(), b.states());
    }
}

TEST(FactoredFormat, AutoDetection) {
    const std::string factored = write_factored_spec(two_independent_binaries());
    EXPECT_TRUE(is_factored_text(factored));
    EXPECT_EQ(parse_any_model(factored).num_states(), 4u);
    const std::string flat = write_model_file(fixtures::tiger85());
    EXPECT_FALSE(is_factored_text(flat));
    EXPECT_EQ(parse_any_model(flat).states(), fixtures::tiger85().states());
}

constexpr const char* kSmallFactored = R"(discount: 0.9
variables:
  x: a b
actions: go
observations: lo hi
tnet t: go
  cpt x | x
    a : 0.9 0.1
    b : 0.2 0.8
onet o: go
  cpt | x
    a : 0.7 0.3
    b : 0.4 0.6
reward:
  go : x=b 5
)";

TEST(FactoredFormat, ParsesHandWrittenFile) {
    const auto m = compile_factored(parse_factored_spec(kSmallFactored));
    EXPECT_EQ(m.states(), (std::vector<std::string>{"a", "b"}));
    EXPECT_DOUBLE_EQ(m.t(0, 1, 0), 0.2);
    EXPECT_DOUBLE_EQ(m.o(0, 0, 1), 0.3);
    EXPECT_EQ(m.reward_table(), (std::vector<double>{0, 5}));
}

std::size_t parse_error_line(const std::string& text) {
    try {
        parse_factored_spec(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

TEST(FactoredFormat, ErrorsCarryLineNumbers) {
    std::string text = kSmallFactored;
    EXPECT_EQ(parse_error_line(std::string(text).replace(text.find("    b : 0.2"), 5, "    c")), 9u);
    EXPECT_EQ(parse_error_line(std::string(text).replace(text.find("0.4 0.6"), 7, "0.4")), 13u);
    EXPECT_EQ(parse_error_line(std::string(text).replace(text.find("go : x=b"), 2, "up")), 15u);
    EXPECT_EQ(parse_error_line(std::string(text).replace(text.find("x=b"), 3, "y=b")), 15u);
    EXPECT_NE(parse_error_line(text.substr(text.find('\n') + 1)), 0u);
}

} // namespace
