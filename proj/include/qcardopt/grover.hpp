#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcardopt/dicke.hpp"
#include "qcardopt/model.hpp"
#include "qcardopt/qdict.hpp"
#include "qcardopt/qsim.hpp"

namespace qcardopt::grover {

enum class Mode { HardConstrained, SoftPenalty };

// Sign oracle applied as an exact diagonal on the variable register: the
// ancilla returns to |0^m> between rotations, so it can be factored out.
// precision_m records the value-register width the construction would use.
struct DiagonalOracle {
    qdict::PolyObjective objective;
    int precision_m = 0;
};

// Hand-built phase-flip circuit on the variable register (test fixtures with
// a known marked count; ignores the threshold).
struct FixtureOracle {
    qsim::Circuit circuit;
    std::uint64_t marked_count = 0;
};

// Full gate-level realization on n+m qubits, rebuilt per threshold.
struct EncodedOracle {
    qdict::PolyObjective objective;
    int precision_m = 0;
};

using OracleSpec = std::variant<DiagonalOracle, FixtureOracle, EncodedOracle>;

struct GroverPlan {
    int n = 0;
    int k = 0;
    Mode mode = Mode::HardConstrained;
    std::uint64_t search_space = 0;  // C(n,k) hard, 2^n soft
    qsim::Circuit state_prep;        // variable register only
    qsim::Circuit diffusion;         // variable register only
    OracleSpec oracle;
    // Set when the marked count is known (test fixtures only).
    double subspace_angle = 0.0;
    double r_star = 0.0;
};

GroverPlan make_plan(int n, int k, Mode mode, OracleSpec oracle,
                     std::optional<std::uint64_t> marked_count = std::nullopt);

// Called after state preparation and after every oracle and diffusion
// application, with the current full state.
using StepProbe = std::function<void(const qsim::Statevector&)>;

std::uint64_t grover_search(const GroverPlan& plan, std::int64_t threshold_y, int rotations,
                            Rng& rng, const StepProbe& probe = {});
std::uint64_t grover_search(const GroverPlan& plan, std::int64_t threshold_y, int rotations,
                            std::uint64_t seed);

// Integer rotation count maximizing sin^2((2r+1) a) with a = asin(sqrt(M/C)).
int optimal_rotations(std::uint64_t space_size, std::uint64_t marked_count);
// The real-valued pi/(4a) behind it.
double optimal_rotations_real(std::uint64_t space_size, std::uint64_t marked_count);

struct GasConfig {
    double xi = 1.34;                          // rotation-ceiling growth factor
    double rotation_cap = 0.0;                 // <= 0: ceil(pi/4 sqrt(|C|)) + 1
    std::uint64_t max_oracle_queries = 1'000'000;
    std::uint64_t seed = 0;
    int cap_patience = 5;  // non-improving iterations at the cap before stopping
};

struct GasTraceRow {
    int iteration = 0;
    int rotations = 0;
    std::uint64_t sampled_x = 0;
    std::int64_t sampled_value = 0;
    bool accepted = false;
    bool feasible = false;
    std::int64_t threshold_after = 0;
    double r_max_after = 0.0;
    std::uint64_t queries_after = 0;
};

struct GasResult {
    std::uint64_t best_x = 0;
    std::int64_t best_value_scaled = 0;
    double best_value = 0.0;
    bool has_feasible_incumbent = false;
    std::uint64_t oracle_queries = 0;
    std::uint64_t grover_rotations = 0;
    int iterations = 0;
    bool budget_exhausted = false;
    int precision_m = 0;
    int scale_power = 0;
    std::vector<GasTraceRow> trace;
};

GasResult gas_minimize(const qdict::PolyObjective& objective, int n, int k, Mode mode,
                       const GasConfig& cfg, const StepProbe& probe = {});
// Hard mode minimizes the instance objective directly; soft mode penalizes the
// cardinality with a range-dominating default weight.
GasResult gas_minimize(const model::BqpFcInstance& inst, Mode mode, const GasConfig& cfg);

// x'Sx/2 - mu'x + lambda (sum x_i - k)^2 expanded to multilinear form;
// lambda in scaled units of the base objective.
qdict::PolyObjective build_soft_penalty_objective(const model::BqpFcInstance& inst,
                                                  std::int64_t lambda_scaled);
std::int64_t default_soft_lambda_scaled(const qdict::PolyObjective& base);

// Instance objectives quantized so the value register fits the simulator cap.
// The soft variant folds in the default range-dominating penalty weight
// (1 + cube width of the unpenalized objective).
qdict::PolyObjective hard_objective(const model::BqpFcInstance& inst);
qdict::PolyObjective soft_objective(const model::BqpFcInstance& inst);

std::string gas_trace_csv(const GasResult& result, int n);

}  // namespace qcardopt::grover
