#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qcardopt/grover.hpp"
#include "qcardopt/model.hpp"

namespace qcardopt::admm {

enum class X1Solver { BruteForce, GasHard };

struct AdmmConfig {
    double epsilon = 0.1;  // subgradient tolerance
    double delta = 0.1;    // consistency slack
    double zeta = 0.0;     // slack regularization weight
    double beta = 0.0;     // augmented-Lagrangian penalty, must exceed sqrt(2) zeta
    std::int64_t t_max = 0;
    X1Solver x1_solver = X1Solver::BruteForce;
    grover::GasConfig gas;  // used in GasHard mode; per-iteration seeds derive from it

    void validate() const;
};

// zeta from the explicit consistency bound
// [2 c2^2 n^3 (sqrt(k)+eps+delta) + c1 lambda sqrt(n) + c2 lambda n (sqrt(k)+eps+delta) + eps]/delta
// scaled by c4_margin, and beta = c5 * zeta.
struct SelectedParameters {
    double zeta = 0.0;
    double beta = 0.0;
    double bound = 0.0;  // the raw lower bound on zeta
};
SelectedParameters select_parameters(const model::RiskParityInstance& inst, double epsilon,
                                     double delta, double c4_margin = 1.0, double c5 = 1.5);

std::int64_t default_t_max(int n, int k, double epsilon, double delta);

struct MonitorRecord {
    double lagrangian_before = 0.0;
    double lagrangian_after = 0.0;
    double lagrangian_drop = 0.0;
    double descent_rhs = 0.0;       // C1(beta) * (|x2 move|^2 + |y move|^2)
    double primal_residual = 0.0;   // |x1+ - x2+ - y+|
    double predicted_residual = 0.0;  // (zeta/beta) |y+ - y|
    double subgrad_bound = 0.0;     // (beta + zeta/beta) |y+ - y|
    double delta_dual = 0.0;        // |y+ - y|
    bool identity_ok = false;
    bool descent_ok = false;
    bool lower_bound_ok = false;
};

struct IterationRecord {
    int t = 0;
    std::uint64_t x1 = 0;
    Eigen::VectorXd x2;
    Eigen::VectorXd y;
    Eigen::VectorXd w;
    double delta_dual = 0.0;
    double lagrangian = 0.0;
    MonitorRecord monitor;
    std::uint64_t solver_queries = 0;
    bool subproblem_budget_exhausted = false;
    double x1_optimality_gap = 0.0;  // vs brute force when the space is small enough
};

enum class Termination { Converged, IterationCap };

struct AdmmResult {
    std::uint64_t x1_final = 0;
    Eigen::VectorXd x2_final;
    Eigen::VectorXd y_final;
    Eigen::VectorXd w_final;
    int iterations = 0;
    Termination reason = Termination::Converged;
    double final_delta_dual = 0.0;
    double final_consistency = 0.0;  // |x1 - x2| at exit
    double lagrangian_lower_bound = 0.0;
    std::vector<IterationRecord> trace;
};

AdmmResult admm_solve(const model::RiskParityInstance& inst, const AdmmConfig& cfg,
                      std::uint64_t seed);

double eval_lagrangian(const model::RiskParityInstance& inst, std::uint64_t x1,
                       const Eigen::VectorXd& x2, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double zeta, double beta);

struct AdmmPoint {
    std::uint64_t x1 = 0;
    Eigen::VectorXd x2;
    Eigen::VectorXd y;
    Eigen::VectorXd w;
    double lagrangian = 0.0;
};

MonitorRecord monitor_step(const AdmmPoint& prev, const AdmmPoint& next, double zeta, double beta,
                           double lagrangian_lower_bound);

// Columns: t,L_beta,delta_dual,primal_residual,predicted_residual,descent_lhs,descent_rhs,x1_bits,solver_queries
std::string trace_to_csv(const AdmmResult& result, int n);

}  // namespace qcardopt::admm
