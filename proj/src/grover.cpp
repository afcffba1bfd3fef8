#include "qcardopt/grover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qcardopt/bits.hpp"

namespace qcardopt::grover {

namespace {

qsim::Circuit soft_state_prep(int n) {
    qsim::Circuit c(n);
    for (int q = 0; q < n; ++q) c.append(qsim::GateOp::hadamard(q));
    return c;
}

// 2|s><s| - I up to global phase: H^n X^n CZ_n X^n H^n.
qsim::Circuit soft_diffusion(int n) {
    qsim::Circuit c(n);
    for (int q = 0; q < n; ++q) c.append(qsim::GateOp::hadamard(q));
    for (int q = 0; q < n; ++q) c.append(qsim::GateOp::pauli_x(q));
    std::vector<int> controls;
    for (int q = 1; q < n; ++q) controls.push_back(q);
    c.append(qsim::GateOp::multi_controlled_z(std::move(controls), 0));
    for (int q = 0; q < n; ++q) c.append(qsim::GateOp::pauli_x(q));
    for (int q = 0; q < n; ++q) c.append(qsim::GateOp::hadamard(q));
    return c;
}

void apply_diagonal_sign(qsim::Statevector& state, const qdict::PolyObjective& obj,
                         std::int64_t threshold_y) {
    auto& amps = state.amps();
    const std::uint64_t dim = state.dim();
    for (std::uint64_t x = 0; x < dim; ++x)
        if (obj.eval_scaled(x) < threshold_y) amps[x] = -amps[x];
}

}  // namespace

GroverPlan make_plan(int n, int k, Mode mode, OracleSpec oracle,
                     std::optional<std::uint64_t> marked_count) {
    if (n < 1 || n > qsim::kMaxQubits) throw CardinalityOutOfRange("invalid variable count");
    if (k < 0 || k > n) throw CardinalityOutOfRange("cardinality must satisfy 0 <= k <= n");
    GroverPlan plan;
    plan.n = n;
    plan.k = k;
    plan.mode = mode;
    plan.oracle = std::move(oracle);
    if (mode == Mode::HardConstrained) {
        plan.search_space = bits::binomial(n, k);
        plan.state_prep = dicke::build_state_prep(n, k);
        plan.diffusion = dicke::build_constrained_diffusion(n, k);
    } else {
        plan.search_space = std::uint64_t{1} << n;
        plan.state_prep = soft_state_prep(n);
        plan.diffusion = soft_diffusion(n);
    }
    if (marked_count) {
        if (*marked_count < 1 || *marked_count > plan.search_space)
            throw InvalidCounts("marked count outside the search space");
        plan.subspace_angle = std::asin(std::sqrt(static_cast<double>(*marked_count) /
                                                  static_cast<double>(plan.search_space)));
        plan.r_star = std::numbers::pi / (4.0 * plan.subspace_angle);
    }
    return plan;
}

std::uint64_t grover_search(const GroverPlan& plan, std::int64_t threshold_y, int rotations,
                            Rng& rng, const StepProbe& probe) {
    if (rotations < 0) throw InvalidCounts("rotation count must be non-negative");

    std::vector<int> variable_register;
    for (int q = 0; q < plan.n; ++q) variable_register.push_back(q);

    if (const auto* encoded = std::get_if<EncodedOracle>(&plan.oracle)) {
        const qdict::OracleConfig cfg{encoded->precision_m, threshold_y};
        const int k_bound = plan.mode == Mode::HardConstrained ? plan.k : plan.n;
        qdict::check_range(encoded->objective, qdict::feasible_interval(encoded->objective, k_bound),
                           cfg);
        const qsim::Circuit oracle = qdict::build_sign_oracle(encoded->objective, cfg).circuit;
        qsim::Statevector state(plan.n + encoded->precision_m);
        qsim::apply_circuit(state, plan.state_prep);
        if (probe) probe(state);
        for (int r = 0; r < rotations; ++r) {
            qsim::apply_circuit(state, oracle);
            if (probe) probe(state);
            qsim::apply_circuit(state, plan.diffusion);
            if (probe) probe(state);
        }
        return qsim::measure_register(state, variable_register, rng);
    }

    qsim::Statevector state(plan.n);
    qsim::apply_circuit(state, plan.state_prep);
    if (probe) probe(state);
    for (int r = 0; r < rotations; ++r) {
        if (const auto* diagonal = std::get_if<DiagonalOracle>(&plan.oracle))
            apply_diagonal_sign(state, diagonal->objective, threshold_y);
        else
            qsim::apply_circuit(state, std::get<FixtureOracle>(plan.oracle).circuit);
        if (probe) probe(state);
        qsim::apply_circuit(state, plan.diffusion);
        if (probe) probe(state);
    }
    return qsim::measure_register(state, variable_register, rng);
}

std::uint64_t grover_search(const GroverPlan& plan, std::int64_t threshold_y, int rotations,
                            std::uint64_t seed) {
    Rng rng(seed);
    return grover_search(plan, threshold_y, rotations, rng);
}

double optimal_rotations_real(std::uint64_t space_size, std::uint64_t marked_count) {
    if (space_size < 1 || marked_count < 1 || marked_count > space_size)
        throw InvalidCounts("need 1 <= marked <= space");
    const double a = std::asin(std::sqrt(static_cast<double>(marked_count) /
                                         static_cast<double>(space_size)));
    return std::numbers::pi / (4.0 * a);
}

int optimal_rotations(std::uint64_t space_size, std::uint64_t marked_count) {
    const double r = optimal_rotations_real(space_size, marked_count) - 0.5;
    return static_cast<int>(std::max<long long>(0, std::llround(r)));
}

GasResult gas_minimize(const qdict::PolyObjective& objective, int n, int k, Mode mode,
                       const GasConfig& cfg, const StepProbe& probe) {
    objective.validate();
    if (objective.n != n) throw DimensionMismatch("objective does not match the variable count");
    if (cfg.xi <= 1.0) throw ValidationError("growth factor xi must exceed 1");
    if (cfg.max_oracle_queries == 0) throw ValidationError("query budget must be positive");

    const int feasibility_k = mode == Mode::HardConstrained ? k : n;
    const auto interval = qdict::feasible_interval(objective, feasibility_k);
    const int m = qdict::auto_precision(objective, interval, qsim::kMaxQubits - n);

    GroverPlan plan = make_plan(n, k, mode, DiagonalOracle{objective, m});
    const double r_cap = cfg.rotation_cap > 0.0
                             ? cfg.rotation_cap
                             : std::ceil(std::numbers::pi / 4.0 *
                                         std::sqrt(static_cast<double>(plan.search_space))) +
                                   1.0;

    GasResult result;
    result.precision_m = m;
    result.scale_power = objective.scale_power;

    Rng rng(cfg.seed);
    const std::uint64_t u1 = mode == Mode::HardConstrained
                                 ? bits::random_weight_k(n, k, rng)
                                 : rng.next_below(std::uint64_t{1} << n);
    std::int64_t threshold = objective.eval_scaled(u1);

    auto consider_incumbent = [&](std::uint64_t x, std::int64_t value) {
        if (bits::popcount(x) != k) return;
        if (!result.has_feasible_incumbent || value < result.best_value_scaled) {
            result.best_x = x;
            result.best_value_scaled = value;
            result.has_feasible_incumbent = true;
        }
    };
    consider_incumbent(u1, threshold);

    double r_max = 1.0;
    int at_cap_streak = 0;
    int iteration = 0;
    for (;;) {
        ++iteration;
        const auto choices = static_cast<std::uint64_t>(std::ceil(r_max - 1.0)) + 1;
        const int r = static_cast<int>(rng.next_below(choices));
        const std::uint64_t x = grover_search(plan, threshold, r, rng, probe);
        const std::int64_t value = objective.eval_scaled(x);
        result.oracle_queries += static_cast<std::uint64_t>(r);
        result.grover_rotations += static_cast<std::uint64_t>(r);

        GasTraceRow row;
        row.iteration = iteration;
        row.rotations = r;
        row.sampled_x = x;
        row.sampled_value = value;
        row.feasible = bits::popcount(x) == k;
        row.accepted = value < threshold;

        consider_incumbent(x, value);
        if (row.accepted) {
            threshold = value;
            r_max = 1.0;
            at_cap_streak = 0;
        } else {
            r_max = std::min(cfg.xi * r_max, r_cap);
            if (r_max >= r_cap) ++at_cap_streak;
        }
        row.threshold_after = threshold;
        row.r_max_after = r_max;
        row.queries_after = result.oracle_queries;
        result.trace.push_back(row);

        if (result.oracle_queries >= cfg.max_oracle_queries) {
            result.budget_exhausted = true;
            break;
        }
        if (at_cap_streak >= cfg.cap_patience) break;
    }
    result.iterations = iteration;
    result.best_value = static_cast<double>(result.best_value_scaled) * objective.scale();
    return result;
}

GasResult gas_minimize(const model::BqpFcInstance& inst, Mode mode, const GasConfig& cfg) {
    inst.validate();
    const auto objective = mode == Mode::HardConstrained ? hard_objective(inst) : soft_objective(inst);
    return gas_minimize(objective, inst.n, inst.k, mode, cfg);
}

qdict::PolyObjective build_soft_penalty_objective(const model::BqpFcInstance& inst,
                                                  std::int64_t lambda_scaled) {
    inst.validate();
    if (lambda_scaled <= 0) throw ValidationError("penalty weight must be positive");
    qdict::PolyObjective obj = model::poly_from_quadratic(inst);
    // lambda (sum x_i - k)^2 = lambda [(1-2k) sum x_i + 2 sum_{i<j} x_i x_j + k^2] on binaries.
    const std::int64_t k = inst.k;
    obj.constant += lambda_scaled * k * k;
    for (int i = 0; i < inst.n; ++i) {
        obj.terms[{i}] += lambda_scaled * (1 - 2 * k);
        if (obj.terms[{i}] == 0) obj.terms.erase({i});
        for (int j = i + 1; j < inst.n; ++j) {
            obj.terms[{i, j}] += 2 * lambda_scaled;
            if (obj.terms[{i, j}] == 0) obj.terms.erase({i, j});
        }
    }
    obj.validate();
    return obj;
}

std::int64_t default_soft_lambda_scaled(const qdict::PolyObjective& base) {
    const auto interval = qdict::feasible_interval(base, base.n);
    return (interval.hi - interval.lo) + (std::int64_t{1} << base.scale_power);
}

namespace {

double cube_width(const qdict::RealPolyBuilder& builder) {
    double positive = 0.0, negative = 0.0;
    for (const auto& [indices, coeff] : builder.terms()) {
        (void)indices;
        (coeff > 0.0 ? positive : negative) += coeff;
    }
    return positive - negative;
}

}  // namespace

qdict::PolyObjective hard_objective(const model::BqpFcInstance& inst) {
    inst.validate();
    return qdict::quantize_for_register(model::quadratic_poly_builder(inst), inst.k,
                                        qsim::kMaxQubits - inst.n);
}

qdict::PolyObjective soft_objective(const model::BqpFcInstance& inst) {
    inst.validate();
    qdict::RealPolyBuilder builder = model::quadratic_poly_builder(inst);
    const double lambda = 1.0 + cube_width(builder);
    const double k = inst.k;
    builder.add_constant(lambda * k * k);
    for (int i = 0; i < inst.n; ++i) {
        builder.add_term({i}, lambda * (1.0 - 2.0 * k));
        for (int j = i + 1; j < inst.n; ++j) builder.add_term({i, j}, 2.0 * lambda);
    }
    return qdict::quantize_for_register(builder, inst.n, qsim::kMaxQubits - inst.n);
}

std::string gas_trace_csv(const GasResult& result, int n) {
    std::string out = "iter,rotations,sampled_x,sampled_value,accepted,feasible,threshold,r_max,queries\n";
    char line[256];
    for (const auto& row : result.trace) {
        std::snprintf(line, sizeof(line), "%d,%d,%s,%lld,%d,%d,%lld,%.17g,%llu\n", row.iteration,
                      row.rotations, bits::to_bit_string(row.sampled_x, n).c_str(),
                      static_cast<long long>(row.sampled_value), row.accepted ? 1 : 0,
                      row.feasible ? 1 : 0, static_cast<long long>(row.threshold_after),
                      row.r_max_after, static_cast<unsigned long long>(row.queries_after));
        out += line;
    }
    return out;
}

}  // namespace qcardopt::grover
