// Command-line front end. Every subcommand exits 0 on success and 1 with a
// one-line diagnostic on failure; all randomness comes from --seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pomdp/pomdp.hpp"

namespace {

using namespace pomdp;

PomdpModel load_model(const std::string& path) { return parse_any_model(read_file(path)); }

// Policy file whose action names must match the model's.
VectorSet load_policy(const std::string& path, const PomdpModel& m) {
    PolicyFile pf = parse_policy_file(read_file(path));
    if (pf.vectors.dimension() != m.num_states()) {
        throw DimensionError("policy dimension " + std::to_string(pf.vectors.dimension()) + " does not match " +
                             std::to_string(m.num_states()) + " model states");
    }
    if (pf.vectors.all_labeled() || std::any_of(pf.vectors.begin(), pf.vectors.end(), [](const AlphaVector& v) {
            return v.action.has_value();
        })) {
        if (pf.actions != m.actions()) throw PolicyError("policy action names do not match the model");
    }
    return pf.vectors;
}

struct SolveOptions {
    std::string model, method, out, strategy = "fixed", sim_beliefs;
    std::size_t epochs = 0, grid_size = 64;
    double tolerance = 1e-6;
    bool incremental = false;
    std::uint64_t seed = 0;
};

const std::vector<std::string> kMethods = {"exact", "mdp", "qmdp", "fib", "grid"};
const std::vector<std::string> kStrategies = {"fixed", "random", "random-s-grid", "cluster-s-grid"};

SolveResult run_solver(const PomdpModel& m, const std::string& method, const SolverConfig& cfg,
                       const GridConfig& grid) {
    if (method == "exact") return solve_exact_vi(m, cfg);
    if (method == "mdp") return solve_mdp(m, cfg);
    if (method == "qmdp") return solve_qmdp(m, cfg);
    if (method == "fib") return solve_fib(m, cfg);
    if (method == "grid") return solve_grid(m, cfg, grid);
    throw ConfigError("unknown method '" + method + "'");
}

// Grid epochs default to 30, the other solvers run to tolerance.
SolverConfig solver_config(const std::string& method, std::size_t epochs, double tolerance, std::uint64_t seed) {
    SolverConfig cfg;
    cfg.max_epochs = epochs > 0 ? epochs : (method == "grid" ? 30 : cfg.max_epochs);
    cfg.residual_tolerance = tolerance;
    cfg.seed = seed;
    return cfg;
}

int cmd_solve(const SolveOptions& o) {
    const PomdpModel m = load_model(o.model);
    GridConfig grid;
    grid.strategy = parse_grid_strategy(o.strategy);
    grid.grid_size = o.grid_size;
    grid.incremental = o.incremental;
    if (!o.sim_beliefs.empty()) grid.simulation_beliefs = parse_beliefs(read_file(o.sim_beliefs));
    const auto result = run_solver(m, o.method, solver_config(o.method, o.epochs, o.tolerance, o.seed), grid);
    write_file(o.out, write_policy_file(result.vector_set, m.actions()));
    double ms = 0.0;
    for (const auto& st : result.stats) ms += st.wall_ms;
    std::cout << "method\t" << o.method << "\nepochs\t" << result.epochs() << "\nterminated_by\t"
              << to_string(result.terminated_by) << "\nvectors\t" << result.vector_set.size() << "\nresidual\t"
              << text::format_double(result.stats.back().residual) << "\nsolve_ms\t" << text::format_double(ms) << '\n';
    return 0;
}

struct SimOptions {
    std::string model, policy, mode, report, trace;
    std::size_t steps = 10000;
    std::uint64_t seed = 0;
};

int cmd_simulate(const SimOptions& o) {
    const PomdpModel m = load_model(o.model);
    const Policy policy(parse_policy_mode(o.mode), load_policy(o.policy, m), m);
    SimConfig cfg;
    cfg.steps = o.steps;
    cfg.seed = o.seed;
    cfg.record_beliefs = !o.trace.empty();
    const SimReport rep = simulate(m, policy, cfg);
    write_file(o.report, write_sim_report(rep, m.actions()));
    if (!o.trace.empty()) write_file(o.trace, write_beliefs(rep.beliefs));
    std::cout << "total_reward\t" << text::format_double(rep.total_reward) << '\n';
    return 0;
}

struct CompareOptions {
    std::string model, out, strategy = "random-s-grid";
    std::vector<std::string> methods = {"mdp", "qmdp", "fib", "grid"};
    std::vector<std::uint64_t> seeds = {1};
    std::size_t steps = 10000, points = 10000, epochs = 0, grid_size = 64, sim_steps = 2000;
    bool incremental = false;
};

// One row per (method, seed). Columns:
//   method seed vectors avg_value dr_total la_total solve_ms dr_ms la_ms
// dr_total is "N/A" when the direct policy is unavailable. Timing columns
// are the only nondeterministic ones.
int cmd_compare(const CompareOptions& o) {
    const PomdpModel m = load_model(o.model);
    std::ostringstream out;
    out << "method\tseed\tvectors\tavg_value\tdr_total\tla_total\tsolve_ms\tdr_ms\tla_ms\n";
    for (const auto& method : o.methods) {
        for (std::uint64_t seed : o.seeds) {
            GridConfig grid;
            grid.strategy = parse_grid_strategy(o.strategy);
            grid.grid_size = o.grid_size;
            grid.incremental = o.incremental;
            if (method == "grid" && uses_simulation(grid.strategy)) grid.simulation_beliefs = qmdp_trace(m, o.sim_steps, seed);
            detail::Stopwatch sw;
            const auto result = run_solver(m, method, solver_config(method, o.epochs, 1e-6, seed), grid);
            const double solve_ms = sw.elapsed_ms();
            const VectorSet& vs = result.vector_set;
            SimConfig sc;
            sc.steps = o.steps;
            sc.seed = seed;
            std::string dr_total = "N/A", dr_ms = "N/A";
            if (vs.all_labeled()) {
                const auto r = simulate(m, Policy(PolicyMode::Direct, vs, m), sc);
                dr_total = text::format_double(r.total_reward);
                dr_ms = text::format_double(r.decision_ms_mean);
            }
            const auto la = simulate(m, Policy(PolicyMode::Lookahead, vs, m), sc);
            out << method << '\t' << seed << '\t' << vs.size() << '\t'
                << text::format_double(evaluate_avg_value(vs, o.points, seed)) << '\t' << dr_total << '\t'
                << text::format_double(la.total_reward) << '\t' << text::format_double(solve_ms) << '\t' << dr_ms
                << '\t' << text::format_double(la.decision_ms_mean) << '\n';
        }
    }
    if (o.out.empty()) std::cout << out.str();
    else write_file(o.out, out.str());
    return 0;
}

int cmd_gen_model(const std::string& preset, const std::string& params, const std::string& out) {
    const auto p = params.empty() ? dialogue::preset_params(preset) : dialogue::parse_params(read_file(params), preset);
    const FactoredSpec spec = dialogue::dialogue_spec(p);
    const PomdpModel m = compile_factored(spec);
    write_file(out, write_factored_spec(spec));
    std::cout << "states\t" << m.num_states() << "\nactions\t" << m.num_actions() << "\nobservations\t"
              << m.num_observations() << "\ndiscount\t" << text::format_double(m.discount()) << '\n';
    return 0;
}

int cmd_bn_infer(const std::string& net_path, const std::vector<std::string>& evidence, const std::string& query) {
    const DiscreteBayesNet net = parse_bayes_net(read_file(net_path));
    const std::size_t q = net.index(query);
    const auto post = infer_posterior(net, parse_evidence(net, evidence), q);
    for (std::size_t v = 0; v < post.size(); ++v) {
        std::cout << net.node(q).domain[v] << '\t' << text::format_double(post[v]) << '\n';
    }
    return 0;
}

int cmd_bn_extract(const std::string& net_path, const std::string& rule_name, const std::vector<std::string>& evidence) {
    const DiscreteBayesNet net = parse_bayes_net(read_file(net_path));
    const auto e = extract_observation(net, parse_rule(rule_name), parse_evidence(net, evidence));
    std::cout << "observation\t" << e.label << "\nchannel\t" << text::format_double(e.p_channel) << "\nsignal\t"
              << text::format_double(e.p_signal) << "\ndefer_to_parser\t" << (e.defer_to_parser ? "yes" : "no") << '\n';
    return 0;
}

void print_belief(const PomdpModel& m, const BeliefState& b, std::size_t top) {
    std::vector<std::size_t> idx(b.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&b](std::size_t x, std::size_t y) { return b[x] > b[y]; });
    std::cout << "belief (entropy " << text::format_double(belief_entropy(b)) << "):\n";
    for (std::size_t k = 0; k < std::min(top, idx.size()); ++k) {
        std::cout << "  " << m.states()[idx[k]] << '\t' << text::format_double(b[idx[k]]) << '\n';
    }
}

int cmd_interact(const std::string& model_path, const std::string& policy_path, const std::string& mode) {
    const PomdpModel m = load_model(model_path);
    const Policy policy(parse_policy_mode(mode), load_policy(policy_path, m), m);
    BeliefState b = m.initial_belief();
    std::string line;
    while (true) {
        print_belief(m, b, 5);
        const std::size_t a = policy.act(b);
        std::cout << "action: " << m.actions()[a] << "\nobservation> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        const auto label = std::string(text::trim(line));
        if (label == "quit") break;
        try {
            b = belief_update(m, b, m.actions()[a], label);
        } catch (const LookupError& e) {
            std::cout << "unknown observation '" << label << "'; known:";
            for (const auto& o : m.observations()) std::cout << ' ' << o;
            std::cout << '\n';
        } catch (const ImpossibleObservation&) {
            std::cout << "observation '" << label << "' is impossible after " << m.actions()[a] << "; belief kept\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"POMDP planning toolkit"};
    app.require_subcommand(1);

    SolveOptions so;
    auto* solve = app.add_subcommand("solve", "Solve a model and write a policy file");
    solve->add_option("--model", so.model, "Model file (flat or factored)")->required();
    solve->add_option("--method", so.method, "Solver")->required()->check(CLI::IsMember(kMethods));
    solve->add_option("--epochs", so.epochs, "Epoch cap (grid default 30)");
    solve->add_option("--tolerance", so.tolerance, "Residual tolerance")->check(CLI::PositiveNumber);
    solve->add_option("--grid-strategy", so.strategy, "Grid point strategy")->check(CLI::IsMember(kStrategies));
    solve->add_option("--grid-size", so.grid_size, "Grid points per epoch")->check(CLI::PositiveNumber);
    solve->add_flag("--incremental", so.incremental, "Keep previous vectors (grid)");
    solve->add_option("--sim-beliefs", so.sim_beliefs, "Belief list for the s-grid strategies");
    solve->add_option("--seed", so.seed, "Random seed");
    solve->add_option("--out", so.out, "Policy file to write")->required();

    std::string policy_path;
    std::size_t points = 10000;
    std::uint64_t eval_seed = 0;
    auto* evaluate = app.add_subcommand("evaluate", "Average value over random beliefs");
    evaluate->add_option("--policy", policy_path, "Policy file")->required();
    evaluate->add_option("--points", points, "Number of random beliefs")->check(CLI::PositiveNumber);
    evaluate->add_option("--seed", eval_seed, "Random seed");

    SimOptions sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a policy and write a report");
    simulate_cmd->add_option("--model", sim.model, "Model file")->required();
    simulate_cmd->add_option("--policy", sim.policy, "Policy file")->required();
    simulate_cmd->add_option("--mode", sim.mode, "dr or la")->required()->check(CLI::IsMember({"dr", "la"}));
    simulate_cmd->add_option("--steps", sim.steps, "Simulation steps")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim.seed, "Random seed");
    simulate_cmd->add_option("--report", sim.report, "Report file")->required();
    simulate_cmd->add_option("--trace", sim.trace, "Also write the belief trace");

    CompareOptions co;
    auto* compare = app.add_subcommand("compare", "Solve and evaluate several methods");
    compare->add_option("--model", co.model, "Model file")->required();
    compare->add_option("--methods", co.methods, "Methods to compare")->check(CLI::IsMember(kMethods))->delimiter(',');
    compare->add_option("--seeds", co.seeds, "Seeds")->delimiter(',');
    compare->add_option("--steps", co.steps, "Simulation steps")->check(CLI::PositiveNumber);
    compare->add_option("--points", co.points, "Random beliefs for the average value")->check(CLI::PositiveNumber);
    compare->add_option("--epochs", co.epochs, "Epoch cap (grid default 30)");
    compare->add_option("--grid-strategy", co.strategy, "Grid point strategy")->check(CLI::IsMember(kStrategies));
    compare->add_option("--grid-size", co.grid_size, "Grid points per epoch")->check(CLI::PositiveNumber);
    compare->add_flag("--incremental", co.incremental, "Incremental grid variant");
    compare->add_option("--out", co.out, "Report file (default stdout)");

    std::string preset, params, gen_out;
    auto* gen = app.add_subcommand("gen-model", "Write the dialogue model in factored form");
    gen->add_option("--preset", preset, "Model variant")->required()->check(CLI::IsMember(
        std::vector<std::string>(dialogue::kPresets.begin(), dialogue::kPresets.end())));
    gen->add_option("--params", params, "key = value overrides");
    gen->add_option("--out", gen_out, "Output file")->required();

    std::string net_path, query, rule;
    std::vector<std::string> evidence;
    auto* bn_infer = app.add_subcommand("bn-infer", "Posterior of one node");
    bn_infer->add_option("--net", net_path, "Network file")->required();
    bn_infer->add_option("--evidence", evidence, "name=value pairs");
    bn_infer->add_option("--query", query, "Query node")->required();
    auto* bn_extract = app.add_subcommand("bn-extract", "Low-level observation from evidence");
    bn_extract->add_option("--net", net_path, "Network file")->required();
    bn_extract->add_option("--rule", rule, "Extraction rule")->required()->check(CLI::IsMember({"barge-in", "turn-taking"}));
    bn_extract->add_option("--evidence", evidence, "name=value pairs");

    std::string model_path, mode;
    auto* interact = app.add_subcommand("interact", "Track a belief interactively");
    interact->add_option("--model", model_path, "Model file")->required();
    interact->add_option("--policy", policy_path, "Policy file")->required();
    interact->add_option("--mode", mode, "dr or la")->required()->check(CLI::IsMember({"dr", "la"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*solve) return cmd_solve(so);
        if (*evaluate) {
            const PolicyFile pf = parse_policy_file(read_file(policy_path));
            std::cout << text::format_double(evaluate_avg_value(pf.vectors, points, eval_seed)) << '\n';
            return 0;
        }
        if (*simulate_cmd) return cmd_simulate(sim);
        if (*compare) return cmd_compare(co);
        if (*gen) return cmd_gen_model(preset, params, gen_out);
        if (*bn_infer) return cmd_bn_infer(net_path, evidence, query);
        if (*bn_extract) return cmd_bn_extract(net_path, rule, evidence);
        if (*interact) return cmd_interact(model_path, policy_path, mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
