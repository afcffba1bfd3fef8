// Command-line harness: instance I/O, experiment drivers, report and CSV
// emission. Reports are JSON ({config, seed, results, warnings}); traces are
// CSV. Exit codes: 0 success, 2 validation/parse error, 3 a stochastic run
// exhausted its budget and returned the incumbent.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qcardopt/admm.hpp"
#include "qcardopt/bits.hpp"
#include "qcardopt/dicke.hpp"
#include "qcardopt/grover.hpp"
#include "qcardopt/model.hpp"
#include "qcardopt/resources.hpp"

using nlohmann::json;
using namespace qcardopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct InstanceSpec {
    std::string path;
    std::vector<std::string> synth;  // key=value tokens: n=8 k=3 [lam=1.0]
    std::uint64_t seed = 0;

    bool present() const { return !path.empty() || !synth.empty(); }

    // Exactly one source must be given.
    void check() const {
        if (path.empty() == synth.empty())
            throw ValidationError("give exactly one of --instance or --synth");
    }

    model::BqpFcInstance resolve(double* lambda_out) const {
        check();
        if (!path.empty()) return model::load_instance(path, lambda_out);
        int n = -1, k = -1;
        double lam = 1.0;
        for (const auto& token : synth) {
            const auto eq = token.find('=');
            if (eq == std::string::npos)
                throw ValidationError("synth token '" + token + "' is not key=value");
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            try {
                if (key == "n")
                    n = std::stoi(value);
                else if (key == "k")
                    k = std::stoi(value);
                else if (key == "lam" || key == "lambda")
                    lam = std::stod(value);
                else
                    throw ValidationError("unknown synth key '" + key + "'");
            } catch (const std::invalid_argument&) {
                throw ValidationError("synth token '" + token + "' has a non-numeric value");
            }
        }
        if (n < 1 || k < 0) throw ValidationError("--synth needs n=<int> and k=<int>");
        if (lambda_out) *lambda_out = lam;
        return model::synth_instance(n, k, seed);
    }

    json echo() const {
        json j;
        if (!path.empty()) j["instance"] = path;
        if (!synth.empty()) j["synth"] = synth;
        return j;
    }
};

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw FileNotFound("cannot write " + path);
    out << content;
}

void emit_report(const std::optional<std::string>& out_path, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (out_path && !out_path->empty())
        write_text(*out_path, text);
    else
        std::cout << text;
}

json gas_result_json(const grover::GasResult& result, int n) {
    json j;
    j["best_x"] = bits::to_bit_string(result.best_x, n);
    j["best_value"] = result.best_value;
    j["best_value_scaled"] = result.best_value_scaled;
    j["scale_power"] = result.scale_power;
    j["oracle_queries"] = result.oracle_queries;
    j["grover_rotations"] = result.grover_rotations;
    j["iterations"] = result.iterations;
    j["budget_exhausted"] = result.budget_exhausted;
    j["precision_m"] = result.precision_m;
    j["has_feasible_incumbent"] = result.has_feasible_incumbent;
    return j;
}

// Deterministic fan-out over repeats: results keyed by repeat index.
template <typename F>
auto run_repeats(int repeats, F&& body) {
    using Result = decltype(body(0));
    std::vector<Result> results(static_cast<std::size_t>(repeats));
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (int i = static_cast<int>(w); i < repeats; i += static_cast<int>(workers))
                results[static_cast<std::size_t>(i)] = body(i);
        }));
    }
    for (auto& f : futures) f.get();
    return results;
}

int cmd_dicke_check(int n, int k, const std::optional<std::string>& out_path) {
    const auto state = dicke::prepare_constrained_superposition(n, k);
    const double expected = 1.0 / static_cast<double>(bits::binomial(n, k));
    double worst_on = 0.0, worst_off = 0.0;
    for (std::uint64_t x = 0; x < state.dim(); ++x) {
        const double p = state.probability(x);
        if (bits::popcount(x) == k)
            worst_on = std::max(worst_on, std::abs(p - expected));
        else
            worst_off = std::max(worst_off, p);
    }
    const auto plan = dicke::build_dicke_unitary(n, k);
    const bool pass = worst_on < 1e-10 && worst_off < 1e-18;
    json report;
    report["config"] = {{"command", "dicke-check"}, {"n", n}, {"k", k}};
    report["seed"] = nullptr;  // deterministic command
    report["results"] = {{"pass", pass},
                         {"max_probability_deviation", worst_on},
                         {"max_off_support_probability", worst_off},
                         {"support", bits::binomial(n, k)},
                         {"scs_blocks", plan.block_count()},
                         {"depth", qsim::circuit_depth(plan.ops)}};
    report["warnings"] = json::array();
    emit_report(out_path, report);
    std::printf("%s dicke-check n=%d k=%d max_dev=%.3g\n", pass ? "PASS" : "FAIL", n, k, worst_on);
    return pass ? kExitOk : 1;
}

int cmd_grover(const InstanceSpec& spec, const std::string& mode_name, double threshold,
               int rotations, std::uint64_t seed, const std::optional<std::string>& out_path) {
    double lambda = 1.0;
    const auto inst = spec.resolve(&lambda);
    const auto mode = mode_name == "soft" ? grover::Mode::SoftPenalty : grover::Mode::HardConstrained;
    const auto objective =
        mode == grover::Mode::HardConstrained ? grover::hard_objective(inst) : grover::soft_objective(inst);
    const int feasibility_k = mode == grover::Mode::HardConstrained ? inst.k : inst.n;
    const auto interval = qdict::feasible_interval(objective, feasibility_k);
    const int m = qdict::auto_precision(objective, interval, qsim::kMaxQubits - inst.n);
    const std::int64_t scaled_y = static_cast<std::int64_t>(
        std::llround(threshold * std::ldexp(1.0, objective.scale_power)));
    auto plan = grover::make_plan(inst.n, inst.k, mode, grover::DiagonalOracle{objective, m});

    double marked_before = 0.0, marked_after = 0.0;
    qsim::Statevector last(1);
    Rng rng(seed);
    bool first_probe = true;
    const std::uint64_t sample =
        grover::grover_search(plan, scaled_y, rotations, rng, [&](const qsim::Statevector& s) {
            double mass = 0.0;
            for (std::uint64_t x = 0; x < s.dim(); ++x)
                if (objective.eval_scaled(x) < scaled_y) mass += s.probability(x);
            if (first_probe) marked_before = mass;
            first_probe = false;
            marked_after = mass;
            last = s;
        });

    json report;
    report["config"] = spec.echo();
    report["config"]["command"] = "grover";
    report["config"]["mode"] = mode_name;
    report["config"]["threshold"] = threshold;
    report["config"]["rotations"] = rotations;
    report["seed"] = seed;
    report["results"] = {{"sampled_x", bits::to_bit_string(sample, inst.n)},
                         {"sampled_value", objective.eval(sample)},
                         {"precision_m", m},
                         {"marked_mass_initial", marked_before},
                         {"marked_mass_final", marked_after}};
    report["warnings"] = json::array();
    emit_report(out_path, report);
    return kExitOk;
}

int cmd_gas(const InstanceSpec& spec, const std::string& mode_name, double xi,
            std::uint64_t budget, int repeats, std::uint64_t seed,
            const std::optional<std::string>& out_path, const std::optional<std::string>& trace_path) {
    double lambda = 1.0;
    const auto inst = spec.resolve(&lambda);
    const auto mode = mode_name == "soft" ? grover::Mode::SoftPenalty : grover::Mode::HardConstrained;

    auto run_one = [&](int repeat) {
        grover::GasConfig cfg;
        cfg.xi = xi;
        cfg.max_oracle_queries = budget;
        cfg.seed = seed + static_cast<std::uint64_t>(repeat);
        return grover::gas_minimize(inst, mode, cfg);
    };
    const auto results = run_repeats(repeats, run_one);

    json runs = json::array();
    double mean_queries = 0.0;
    bool any_budget = false;
    for (int i = 0; i < repeats; ++i) {
        const auto& r = results[static_cast<std::size_t>(i)];
        json run = gas_result_json(r, inst.n);
        run["repeat"] = i;
        runs.push_back(run);
        mean_queries += static_cast<double>(r.oracle_queries);
        any_budget |= r.budget_exhausted;
    }
    mean_queries /= repeats;

    // one CSV for all repeats, keyed by a leading repeat column
    std::string trace_csv =
        "repeat,iter,rotations,sampled_x,sampled_value,accepted,feasible,threshold,r_max,queries\n";
    for (int i = 0; i < repeats; ++i) {
        std::string block = grover::gas_trace_csv(results[static_cast<std::size_t>(i)], inst.n);
        block.erase(0, block.find('\n') + 1);
        std::size_t start = 0;
        while (start < block.size()) {
            const std::size_t end = block.find('\n', start);
            trace_csv += std::to_string(i) + "," + block.substr(start, end - start) + "\n";
            start = end + 1;
        }
    }

    json report;
    report["config"] = spec.echo();
    report["config"]["command"] = "gas";
    report["config"]["mode"] = mode_name;
    report["config"]["xi"] = xi;
    report["config"]["max_oracle_queries"] = budget;
    report["config"]["repeats"] = repeats;
    report["seed"] = seed;
    report["results"] = {{"runs", runs}, {"mean_oracle_queries", mean_queries}};
    report["warnings"] = json::array();
    if (any_budget) report["warnings"].push_back("query budget exhausted; incumbent returned");
    emit_report(out_path, report);
    if (trace_path && !trace_path->empty()) write_text(*trace_path, trace_csv);
    return any_budget ? kExitBudget : kExitOk;
}

int cmd_admm(const InstanceSpec& spec, const std::string& solver_name, double epsilon, double delta,
             double c4_margin, double c5, std::int64_t t_max_flag, std::uint64_t seed,
             std::uint64_t gas_budget, const std::optional<std::string>& out_path,
             const std::optional<std::string>& trace_path) {
    double lambda = 1.0;
    const auto base = spec.resolve(&lambda);
    const auto inst = model::RiskParityInstance::wrap(base, lambda);

    admm::AdmmConfig cfg;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    const auto params = admm::select_parameters(inst, epsilon, delta, c4_margin, c5);
    cfg.zeta = params.zeta;
    cfg.beta = params.beta;
    cfg.t_max = t_max_flag > 0 ? t_max_flag
                               : admm::default_t_max(base.n, base.k, epsilon, delta);
    cfg.x1_solver = solver_name == "gas" ? admm::X1Solver::GasHard : admm::X1Solver::BruteForce;
    cfg.gas.seed = seed;
    cfg.gas.max_oracle_queries = gas_budget;

    const auto result = admm::admm_solve(inst, cfg, seed);

    bool monitors_ok = true;
    bool any_subproblem_budget = false;
    std::uint64_t total_queries = 0;
    for (const auto& rec : result.trace) {
        monitors_ok &= rec.monitor.identity_ok && rec.monitor.lower_bound_ok;
        any_subproblem_budget |= rec.subproblem_budget_exhausted;
        total_queries += rec.solver_queries;
    }

    json report;
    report["config"] = spec.echo();
    report["config"]["command"] = "admm";
    report["config"]["solver"] = solver_name;
    report["config"]["epsilon"] = epsilon;
    report["config"]["delta"] = delta;
    report["config"]["c4_margin"] = c4_margin;
    report["config"]["c5"] = c5;
    report["config"]["zeta"] = cfg.zeta;
    report["config"]["beta"] = cfg.beta;
    report["config"]["t_max"] = cfg.t_max;
    report["config"]["lambda"] = lambda;
    report["seed"] = seed;
    report["results"] = {
        {"x1_final", bits::to_bit_string(result.x1_final, base.n)},
        {"risk_parity_value", model::eval_risk_parity(inst, result.x1_final)},
        {"iterations", result.iterations},
        {"converged", result.reason == admm::Termination::Converged},
        {"final_delta_dual", result.final_delta_dual},
        {"final_consistency", result.final_consistency},
        {"monitors_ok", monitors_ok},
        {"total_solver_queries", total_queries},
    };
    report["warnings"] = json::array();
    if (any_subproblem_budget)
        report["warnings"].push_back("a GAS subproblem exhausted its budget; incumbent used");
    if (result.reason == admm::Termination::IterationCap)
        report["warnings"].push_back("iteration cap reached before the dual threshold");
    emit_report(out_path, report);
    if (trace_path && !trace_path->empty()) write_text(*trace_path, admm::trace_to_csv(result, base.n));
    return any_subproblem_budget ? kExitBudget : kExitOk;
}

int cmd_resources(int n, int k, int m, std::uint64_t marked, double epsilon, double delta,
                  const std::optional<std::string>& out_path) {
    const auto hard = resources::make_report(resources::Method::AdmmGasHard, n, k, m, marked,
                                             epsilon, delta);
    const auto soft =
        resources::make_report(resources::Method::QdGasSoft, n, k, m, marked, epsilon, delta);
    const auto crossover = resources::query_crossover_n(k, marked, epsilon, delta, std::max(2, k), 400);

    auto report_json = [](const resources::ResourceReport& r) {
        json gates;
        for (const auto& [degree, count] : r.per_oracle_gates)
            gates[std::to_string(degree)] = count;
        json j;
        j["method"] = resources::method_name(r.method);
        j["oracle_degree"] = r.degree;
        j["per_oracle_controlled_rotations"] = gates;
        j["iqft_toffoli_order_estimate"] = r.iqft_toffoli;
        j["grover_rotations_order_estimate"] = r.grover_rotations;
        j["total_oracle_queries_order_estimate"] = r.total_oracle_queries;
        if (r.method == resources::Method::AdmmGasHard) {
            j["diffusion_scs_blocks"] = r.diffusion_gates;
            j["diffusion_depth"] = r.diffusion_depth;
            j["admm_iterations_order_estimate"] = r.admm_iterations;
        }
        return j;
    };

    const auto decomposition = resources::decomposition_estimates(std::max(2, n));
    json report;
    report["config"] = {{"command", "resources"}, {"n", n}, {"k", k}, {"m", m},
                        {"marked", marked},      {"epsilon", epsilon}, {"delta", delta}};
    report["seed"] = nullptr;  // deterministic command
    report["results"] = {
        {"admm_gas_hard", report_json(hard)},
        {"qd_gas_soft", report_json(soft)},
        {"iteration_ratio_hard_over_soft",
         resources::grover_iteration_estimates(n, k, marked).ratio},
        {"entropy_exponent",
         resources::grover_iteration_estimates(n, k, marked).entropy_exponent},
        {"multi_controlled_decomposition_order_estimate",
         {{"d", std::max(2, n)},
          {"depth", decomposition.depth},
          {"gates", decomposition.gates}}},
    };
    if (crossover)
        report["results"]["query_crossover_n"] = *crossover;
    report["warnings"] = json::array();
    emit_report(out_path, report);
    const auto counts = resources::oracle_gate_counts(n, m, 2);
    std::printf("resources n=%d k=%d m=%d: C1R=%lld C2R=%lld\n", n, k, m,
                static_cast<long long>(counts.at(1)), static_cast<long long>(counts.at(2)));
    return kExitOk;
}

int cmd_compare(const InstanceSpec& spec, int repeats, std::uint64_t seed, std::uint64_t budget,
                const std::optional<std::string>& out_path) {
    spec.check();
    if (!spec.path.empty())
        throw ValidationError("compare generates fresh instances; use --synth");
    int n = -1, k = -1;
    for (const auto& token : spec.synth) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ValidationError("synth token is not key=value");
        const std::string key = token.substr(0, eq);
        if (key == "n") n = std::stoi(token.substr(eq + 1));
        if (key == "k") k = std::stoi(token.substr(eq + 1));
    }
    if (n < 1 || k < 0) throw ValidationError("--synth needs n=<int> and k=<int>");

    struct Row {
        bool agree = false;
        std::uint64_t queries = 0;
        std::int64_t degeneracy = 0;
        double bound_ratio = 0.0;
    };
    auto run_one = [&](int i) {
        const auto inst = model::synth_instance(n, k, seed + static_cast<std::uint64_t>(i));
        const auto objective = grover::hard_objective(inst);
        grover::GasConfig cfg;
        cfg.seed = seed + 100000 + static_cast<std::uint64_t>(i);
        cfg.max_oracle_queries = budget;
        const auto gas = grover::gas_minimize(objective, n, k, grover::Mode::HardConstrained, cfg);
        const auto exact = model::brute_force_scaled(objective, k);
        Row row;
        row.agree = gas.best_value_scaled == exact.best_value;
        row.queries = gas.oracle_queries;
        row.degeneracy = exact.degeneracy;
        const double bound =
            2.46 * std::sqrt(static_cast<double>(bits::binomial(n, k)) /
                             static_cast<double>(exact.degeneracy));
        row.bound_ratio = static_cast<double>(gas.oracle_queries) / bound;
        return row;
    };
    const auto rows = run_repeats(repeats, run_one);

    int agreements = 0;
    double mean_queries = 0.0, mean_bound_ratio = 0.0;
    json per_repeat = json::array();
    for (int i = 0; i < repeats; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        agreements += row.agree ? 1 : 0;
        mean_queries += static_cast<double>(row.queries);
        mean_bound_ratio += row.bound_ratio;
        per_repeat.push_back({{"repeat", i},
                              {"agree", row.agree},
                              {"oracle_queries", row.queries},
                              {"degeneracy", row.degeneracy},
                              {"bound_ratio", row.bound_ratio}});
    }
    mean_queries /= repeats;
    mean_bound_ratio /= repeats;

    json report;
    report["config"] = spec.echo();
    report["config"]["command"] = "compare";
    report["config"]["repeats"] = repeats;
    report["seed"] = seed;
    report["results"] = {{"agreement_rate", static_cast<double>(agreements) / repeats},
                         {"agreements", agreements},
                         {"mean_oracle_queries", mean_queries},
                         {"mean_query_bound_ratio", mean_bound_ratio},
                         {"per_repeat", per_repeat}};
    report["warnings"] = json::array();
    emit_report(out_path, report);
    std::printf("compare n=%d k=%d: %d/%d agree, mean queries %.2f\n", n, k, agreements, repeats,
                mean_queries);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cardinality-constrained quantum optimization toolkit"};
    app.require_subcommand(1);

    // dicke-check
    auto* dicke_cmd = app.add_subcommand("dicke-check", "Verify the weight-k superposition");
    int dc_n = 4, dc_k = 2;
    std::optional<std::string> dc_out;
    dicke_cmd->add_option("--n", dc_n, "qubits")->required();
    dicke_cmd->add_option("--k", dc_k, "cardinality")->required();
    dicke_cmd->add_option("--out", dc_out, "report path");

    // grover
    auto* grover_cmd = app.add_subcommand("grover", "One Grover search at a fixed threshold");
    InstanceSpec grover_spec;
    std::string grover_mode = "hard";
    double grover_threshold = 0.0;
    int grover_rotations = 1;
    std::uint64_t grover_seed = 0;
    std::optional<std::string> grover_out;
    grover_cmd->add_option("--instance", grover_spec.path, "instance file");
    grover_cmd->add_option("--synth", grover_spec.synth, "synthetic instance: n=<int> k=<int> [lam=<real>]");
    grover_cmd->add_option("--mode", grover_mode, "hard|soft")->check(CLI::IsMember({"hard", "soft"}));
    grover_cmd->add_option("--threshold", grover_threshold, "objective threshold")->required();
    grover_cmd->add_option("--rotations", grover_rotations, "rotation count")->required();
    grover_cmd->add_option("--seed", grover_seed, "rng seed")->required();
    grover_cmd->add_option("--out", grover_out, "report path");

    // gas
    auto* gas_cmd = app.add_subcommand("gas", "Adaptive-threshold minimization");
    InstanceSpec gas_spec;
    std::string gas_mode = "hard";
    double gas_xi = 1.34;
    std::uint64_t gas_budget = 100000;
    int gas_repeats = 1;
    std::uint64_t gas_seed = 0;
    std::optional<std::string> gas_out, gas_trace;
    gas_cmd->add_option("--instance", gas_spec.path, "instance file");
    gas_cmd->add_option("--synth", gas_spec.synth, "synthetic instance: n=<int> k=<int> [lam=<real>]");
    gas_cmd->add_option("--mode", gas_mode, "hard|soft")->check(CLI::IsMember({"hard", "soft"}));
    gas_cmd->add_option("--xi", gas_xi, "rotation-ceiling growth factor");
    gas_cmd->add_option("--budget", gas_budget, "oracle query budget");
    gas_cmd->add_option("--repeats", gas_repeats, "independent runs");
    gas_cmd->add_option("--seed", gas_seed, "rng seed")->required();
    gas_cmd->add_option("--out", gas_out, "report path");
    gas_cmd->add_option("--trace", gas_trace, "per-iteration CSV path");

    // admm
    auto* admm_cmd = app.add_subcommand("admm", "Hybrid solver for the risk-parity model");
    InstanceSpec admm_spec;
    std::string admm_solver = "brute";
    double admm_eps = 0.1, admm_delta = 0.1, admm_margin = 1.0, admm_c5 = 1.5;
    std::int64_t admm_tmax = 0;
    std::uint64_t admm_seed = 0, admm_gas_budget = 100000;
    std::optional<std::string> admm_out, admm_trace;
    admm_cmd->add_option("--instance", admm_spec.path, "instance file");
    admm_cmd->add_option("--synth", admm_spec.synth, "synthetic instance: n=<int> k=<int> [lam=<real>]");
    admm_cmd->add_option("--solver", admm_solver, "brute|gas")->check(CLI::IsMember({"brute", "gas"}));
    admm_cmd->add_option("--epsilon", admm_eps, "subgradient tolerance");
    admm_cmd->add_option("--delta", admm_delta, "consistency slack");
    admm_cmd->add_option("--c4-margin", admm_margin, "zeta margin over the bound");
    admm_cmd->add_option("--c5", admm_c5, "beta / zeta ratio");
    admm_cmd->add_option("--t-max", admm_tmax, "iteration cap override");
    admm_cmd->add_option("--gas-budget", admm_gas_budget, "per-subproblem oracle budget");
    admm_cmd->add_option("--seed", admm_seed, "rng seed")->required();
    admm_cmd->add_option("--out", admm_out, "report path");
    admm_cmd->add_option("--trace", admm_trace, "per-iteration CSV path");

    // resources
    auto* res_cmd = app.add_subcommand("resources", "Closed-form gate and query estimates");
    int res_n = 8, res_k = 2, res_m = 4;
    std::uint64_t res_marked = 1;
    double res_eps = 0.1, res_delta = 0.1;
    std::optional<std::string> res_out;
    res_cmd->add_option("--n", res_n, "variables")->required();
    res_cmd->add_option("--k", res_k, "cardinality")->required();
    res_cmd->add_option("--m", res_m, "value-register width")->required();
    res_cmd->add_option("--marked", res_marked, "degeneracy of the optimum");
    res_cmd->add_option("--epsilon", res_eps, "subgradient tolerance");
    res_cmd->add_option("--delta", res_delta, "consistency slack");
    res_cmd->add_option("--out", res_out, "report path");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Hard-mode GAS vs brute force");
    InstanceSpec cmp_spec;
    int cmp_repeats = 10;
    std::uint64_t cmp_seed = 0, cmp_budget = 100000;
    std::optional<std::string> cmp_out;
    cmp_cmd->add_option("--synth", cmp_spec.synth, "synthetic family: n=<int> k=<int>")->required();
    cmp_cmd->add_option("--repeats", cmp_repeats, "instances to draw");
    cmp_cmd->add_option("--budget", cmp_budget, "oracle query budget per run");
    cmp_cmd->add_option("--seed", cmp_seed, "rng seed")->required();
    cmp_cmd->add_option("--out", cmp_out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (dicke_cmd->parsed()) return cmd_dicke_check(dc_n, dc_k, dc_out);
        if (grover_cmd->parsed()) {
            grover_spec.seed = grover_seed;
            return cmd_grover(grover_spec, grover_mode, grover_threshold, grover_rotations,
                              grover_seed, grover_out);
        }
        if (gas_cmd->parsed()) {
            gas_spec.seed = gas_seed;
            return cmd_gas(gas_spec, gas_mode, gas_xi, gas_budget, gas_repeats, gas_seed, gas_out,
                           gas_trace);
        }
        if (admm_cmd->parsed()) {
            admm_spec.seed = admm_seed;
            return cmd_admm(admm_spec, admm_solver, admm_eps, admm_delta, admm_margin, admm_c5,
                            admm_tmax, admm_seed, admm_gas_budget, admm_out, admm_trace);
        }
        if (res_cmd->parsed())
            return cmd_resources(res_n, res_k, res_m, res_marked, res_eps, res_delta, res_out);
        if (cmp_cmd->parsed()) {
            cmp_spec.seed = cmp_seed;
            return cmd_compare(cmp_spec, cmp_repeats, cmp_seed, cmp_budget, cmp_out);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return kExitValidation;
}
