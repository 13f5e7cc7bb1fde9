#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pomdp/pomdp.hpp"
#include "support/oracles.hpp"

namespace {

using namespace pomdp;

const PomdpModel& tiger() {
    static const PomdpModel m = fixtures::tiger85();
    return m;
}

const PomdpModel& dialogue_standard() {
    static const PomdpModel m = dialogue::build_dialogue_model("standard");
    return m;
}

VectorSet constant_action(std::size_t dim, std::size_t action) {
    return VectorSet({AlphaVector{std::vector<double>(dim, 0.0), action}});
}

// ---------------------------------------------------------------------------
// Action selection

TEST(ActDirect, TigerQmdpExamples) {
    const Policy p(PolicyMode::Direct, solve_qmdp(tiger()).vector_set, tiger());
    EXPECT_EQ(act_direct(p, BeliefState::uniform(2)), tiger().action_index("listen"));
    EXPECT_EQ(act_direct(p, BeliefState({0.0, 1.0})), tiger().action_index("open-left"));
    EXPECT_EQ(act_direct(p, BeliefState({1.0, 0.0})), tiger().action_index("open-right"));
}

TEST(ActDirect, SingleUnlabelledVectorIsRejected) {
    const auto mdp = solve_mdp(tiger()).vector_set;
    EXPECT_THROW(Policy(PolicyMode::Direct, mdp, tiger()), PolicyError);
    const Policy la(PolicyMode::Lookahead, mdp, tiger());
    EXPECT_THROW(act_direct(la, BeliefState::uniform(2)), PolicyError);
}

TEST(ActDirect, TiesGoToTheLowestIndex) {
    const VectorSet vs({AlphaVector{{1.0, 1.0}, 2}, AlphaVector{{1.0, 1.0}, 1}});
    const Policy p(PolicyMode::Direct, vs, tiger());
    EXPECT_EQ(act_direct(p, BeliefState::uniform(2)), 2u);
}

TEST(ActLookahead, ZeroVectorIsMyopic) {
    const Policy p(PolicyMode::Lookahead, VectorSet::constant(2, 0.0), tiger());
    EXPECT_EQ(act_lookahead(p, BeliefState::uniform(2)), tiger().action_index("listen"));
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto b = oracle::random_belief(rng, 2);
        std::size_t best = 0;
        for (std::size_t a = 1; a < 3; ++a) {
            if (belief_reward(tiger(), b, a) > belief_reward(tiger(), b, best)) best = a;
        }
        EXPECT_EQ(act_lookahead(p, b), best);
    }
}

TEST(ActLookahead, MatchesHandEvaluation) {
    const auto qmdp = solve_qmdp(tiger()).vector_set;
    const Policy p(PolicyMode::Lookahead, qmdp, tiger());
    const BeliefState b({0.85, 0.15});
    const auto [a, score] = oracle::hand_lookahead(tiger(), qmdp, b);
    EXPECT_EQ(act_lookahead(p, b), a);
    EXPECT_NEAR(lookahead_value(p, b, a), score, 1e-9);
}

TEST(ActLookahead, MatchesHandEvaluationOnRandomModels) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = oracle::random_model(rng, 4, 3, 3, 0.9);
        const auto fib = solve_fib(m).vector_set;
        const Policy p(PolicyMode::Lookahead, fib, m);
        for (int i = 0; i < 50; ++i) {
            const auto b = oracle::random_belief(rng, 4);
            const auto [a, score] = oracle::hand_lookahead(m, fib, b);
            EXPECT_NEAR(lookahead_value(p, b, act_lookahead(p, b)), score, 1e-9);
            for (std::size_t a2 = 0; a2 < m.num_actions(); ++a2) EXPECT_LE(lookahead_value(p, b, a2), score + 1e-9);
            (void)a;
        }
    }
}

TEST(ActLookahead, AgreesWithDirectAtCornersOnExactSet) {
    SolverConfig cfg;
    cfg.max_epochs = 15;
    const auto exact = solve_exact_vi(tiger(), cfg).vector_set;
    const Policy dr(PolicyMode::Direct, exact, tiger());
    const Policy la(PolicyMode::Lookahead, exact, tiger());
    for (std::size_t s = 0; s < 2; ++s) {
        const auto b = BeliefState::corner(2, s);
        EXPECT_EQ(act_direct(dr, b), act_lookahead(la, b));
    }
}

TEST(Policy, DimensionMismatchIsRejected) {
    EXPECT_THROW(Policy(PolicyMode::Lookahead, VectorSet::constant(3, 0.0), tiger()), DimensionError);
    EXPECT_THROW(Policy(PolicyMode::Direct, constant_action(2, 7), tiger()), DimensionError);
}

// ---------------------------------------------------------------------------
// Simulation

TEST(Simulate, ConstantListenCostsOnePerStep) {
    const Policy p(PolicyMode::Direct, constant_action(2, 0), tiger());
    SimConfig cfg;
    cfg.steps = 100;
    cfg.seed = 5;
    const auto r = simulate(tiger(), p, cfg);
    EXPECT_EQ(r.total_reward, -100.0);
    EXPECT_EQ(r.action_counts[0], 100u);
}

TEST(Simulate, AccountingIdentities) {
    const auto& m = dialogue_standard();
    const Policy p(PolicyMode::Lookahead, solve_fib(m).vector_set, m);
    SimConfig cfg;
    cfg.steps = 3000;
    cfg.seed = 12;
    const auto r = simulate(m, p, cfg);
    std::size_t reward_total = 0, obs_total = 0, action_total = 0;
    double from_counts = 0.0;
    for (const auto& c : r.reward_counts) {
        reward_total += c.count;
        from_counts += static_cast<double>(c.count) * c.reward;
    }
    for (const auto& c : r.observation_counts) obs_total += c.count;
    for (std::size_t c : r.action_counts) action_total += c;
    EXPECT_EQ(reward_total, cfg.steps);
    EXPECT_EQ(obs_total, cfg.steps);
    EXPECT_EQ(action_total, cfg.steps);
    EXPECT_EQ(from_counts, r.total_reward);
    EXPECT_EQ(r.reward_counts.size(), 11u);
    EXPECT_EQ(r.observation_counts.back().count, 0u);  // "other" never occurs in the dialogue alphabet
    EXPECT_GT(r.decision_ms_max, 0.0);
}

TEST(Simulate, SameSeedSameReport) {
    const auto& m = dialogue_standard();
    const Policy p(PolicyMode::Direct, solve_qmdp(m).vector_set, m);
    SimConfig cfg;
    cfg.steps = 1000;
    cfg.seed = 77;
    cfg.record_beliefs = true;
    const auto a = simulate(m, p, cfg), b = simulate(m, p, cfg);
    EXPECT_EQ(a.total_reward, b.total_reward);
    EXPECT_EQ(a.action_counts, b.action_counts);
    for (std::size_t i = 0; i < a.reward_counts.size(); ++i) EXPECT_EQ(a.reward_counts[i].count, b.reward_counts[i].count);
    for (std::size_t i = 0; i < a.observation_counts.size(); ++i) {
        EXPECT_EQ(a.observation_counts[i].count, b.observation_counts[i].count);
    }
    EXPECT_EQ(a.beliefs, b.beliefs);
    cfg.seed = 78;
    EXPECT_NE(simulate(m, p, cfg).beliefs, a.beliefs);
}

TEST(Simulate, Errors) {
    const Policy p(PolicyMode::Direct, constant_action(2, 0), tiger());
    SimConfig cfg;
    cfg.steps = 0;
    EXPECT_THROW(simulate(tiger(), p, cfg), ConfigError);
    cfg.steps = 5;
    cfg.initial = BeliefState::uniform(3);
    EXPECT_THROW(simulate(tiger(), p, cfg), DimensionError);
    const Policy other(PolicyMode::Lookahead, VectorSet::constant(40, 0.0), dialogue_standard());
    cfg.initial.reset();
    EXPECT_THROW(simulate(tiger(), other, cfg), DimensionError);
}

TEST(Simulate, InitialBeliefOverrideFixesTheStartState) {
    // Opening the right door from a known tiger-left state always pays +10.
    const Policy p(PolicyMode::Direct, constant_action(2, 2), tiger());
    SimConfig cfg;
    cfg.steps = 1;
    cfg.initial = BeliefState({1.0, 0.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        EXPECT_EQ(simulate(tiger(), p, cfg).total_reward, 10.0);
    }
}

TEST(Simulate, GridLookaheadBeatsMdpLookaheadOnDialogue) {
    const auto& m = dialogue_standard();
    SolverConfig cfg;
    cfg.max_epochs = 30;
    cfg.seed = 1;
    const GridConfig g{GridStrategy::RandomSGrid, 64, false, qmdp_trace(m, 2000, 1)};
    const Policy grid(PolicyMode::Lookahead, solve_grid(m, cfg, g).vector_set, m);
    const Policy mdp(PolicyMode::Lookahead, solve_mdp(m).vector_set, m);
    SimConfig sim;
    sim.steps = 10000;
    sim.seed = 1;
    EXPECT_GT(simulate(m, grid, sim).total_reward, simulate(m, mdp, sim).total_reward);
}

TEST(Simulate, DirectDecisionsAreFasterThanLookahead) {
    const auto& m = dialogue_standard();
    const auto fib = solve_fib(m).vector_set;
    const Policy dr(PolicyMode::Direct, fib, m), la(PolicyMode::Lookahead, fib, m);
    SimConfig cfg;
    cfg.steps = 3000;
    cfg.seed = 3;
    EXPECT_LT(simulate(m, dr, cfg).decision_ms_mean, simulate(m, la, cfg).decision_ms_mean);
}

TEST(SimReportFormat, Layout) {
    const Policy p(PolicyMode::Direct, constant_action(2, 0), tiger());
    SimConfig cfg;
    cfg.steps = 10;
    const auto text = write_sim_report(simulate(tiger(), p, cfg), tiger().actions());
    EXPECT_EQ(text.rfind("section\tname\tvalue\tcount\nsummary\tsteps\t10\t-\nsummary\ttotal_reward\t-10\t-\n", 0), 0u);
    EXPECT_NE(text.find("reward\t-1\t-1\t10\n"), std::string::npos);
    EXPECT_NE(text.find("action\tlisten\t-\t10\n"), std::string::npos);
    EXPECT_NE(text.find("observation\tother\t-\t10\n"), std::string::npos);
}

// ---------------------------------------------------------------------------
// Belief traces

TEST(SimBeliefs, CountValidityAndDeterminism) {
    const auto& m = dialogue_standard();
    const Policy p(PolicyMode::Lookahead, solve_qmdp(m).vector_set, m);
    SimConfig cfg;
    cfg.steps = 500;
    cfg.seed = 8;
    const auto trace = collect_sim_beliefs(m, p, cfg);
    ASSERT_EQ(trace.size(), 500u);
    for (const auto& b : trace) {
        double sum = 0.0;
        for (double x : b.probs()) sum += x;
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
    EXPECT_EQ(trace, collect_sim_beliefs(m, p, cfg));
    EXPECT_EQ(trace, qmdp_trace(m, 500, 8));
}

TEST(SimBeliefs, ListeningSharpensTheTigerBelief) {
    const Policy p(PolicyMode::Direct, constant_action(2, 0), tiger());
    SimConfig cfg;
    cfg.steps = 200;
    cfg.seed = 6;
    const auto trace = collect_sim_beliefs(tiger(), p, cfg);
    auto median_entropy = [&](std::size_t from, std::size_t to) {
        std::vector<double> h;
        for (std::size_t i = from; i < to; ++i) h.push_back(belief_entropy(trace[i]));
        std::nth_element(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(h.size() / 2), h.end());
        return h[h.size() / 2];
    };
    EXPECT_LT(median_entropy(150, 200), median_entropy(0, 50));
}

// ---------------------------------------------------------------------------
// Average value

TEST(AvgValue, ZeroVectorIsZero) { EXPECT_EQ(evaluate_avg_value(VectorSet::constant(5, 0.0), 100, 1), 0.0); }

TEST(AvgValue, SingleVectorMeanWithinThreeStandardErrors) {
    const std::vector<double> alpha = {3.0, -1.0, 7.5, 0.0};
    const double n = 4.0, N = 10000.0;
    double sum = 0.0, sq = 0.0;
    for (double x : alpha) {
        sum += x;
        sq += x * x;
    }
    // Flat Dirichlet: Var(α·b) = (n Σα² − (Σα)²) / (n² (n + 1)).
    const double var = (n * sq - sum * sum) / (n * n * (n + 1));
    const double got = evaluate_avg_value(VectorSet({AlphaVector{alpha, std::nullopt}}), 10000, 4);
    EXPECT_NEAR(got, sum / n, 3.0 * std::sqrt(var / N));
}

TEST(AvgValue, MonotoneInSetInclusion) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<AlphaVector> vs;
    for (int i = 0; i < 6; ++i) vs.push_back({{u(rng), u(rng), u(rng)}, std::nullopt});
    const VectorSet small(std::vector<AlphaVector>(vs.begin(), vs.begin() + 2)), big(vs);
    EXPECT_LE(evaluate_avg_value(small, 2000, 3), evaluate_avg_value(big, 2000, 3));
    EXPECT_THROW(evaluate_avg_value(big, 0, 3), ConfigError);
}

} // namespace
