#include "qcardopt/admm.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qcardopt/bits.hpp"

namespace qcardopt::admm {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kDescentSlack = 1e-8;   // relative, accumulates over squared norms
constexpr double kIdentityTol = 1e-8;
constexpr double kLowerBoundSlack = 1e-6;

Eigen::MatrixXd h_matrix(std::uint64_t x1, int n) {
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i) {
        const double xi = bits::test(x1, i) ? 1.0 : 0.0;
        for (int j = 0; j < n; ++j) {
            const double xj = bits::test(x1, j) ? 1.0 : 0.0;
            h(i, j) = i == j ? 2.0 * (n - 1) * xi : -2.0 * xi * xj;
        }
    }
    return h;
}

}  // namespace

void AdmmConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw InvalidTolerance("epsilon and delta must lie in (0, 1)");
    if (zeta <= 0.0) throw ValidationError("zeta must be positive");
    if (beta <= kSqrt2 * zeta) throw ValidationError("beta must exceed sqrt(2) * zeta");
    if (t_max < 1) throw ValidationError("iteration cap must be at least 1");
}

SelectedParameters select_parameters(const model::RiskParityInstance& inst, double epsilon,
                                     double delta, double c4_margin, double c5) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw InvalidTolerance("epsilon and delta must lie in (0, 1)");
    if (c4_margin < 1.0) throw ValidationError("c4 margin must be at least 1");
    if (c5 <= kSqrt2) throw ValidationError("c5 must exceed sqrt(2)");
    const double n = inst.base.n;
    const double k = inst.base.k;
    const double c1 = inst.bounds.c1;
    const double c2 = inst.bounds.c2;
    const double lambda = inst.lambda;
    const double s = std::sqrt(k) + epsilon + delta;
    const double bound =
        (2.0 * c2 * c2 * n * n * n * s + c1 * lambda * std::sqrt(n) + c2 * lambda * n * s + epsilon) /
        delta;
    SelectedParameters out;
    out.bound = bound;
    out.zeta = c4_margin * bound * (1.0 + 1e-9);  // strictly above the bound at margin 1
    out.beta = c5 * out.zeta;
    return out;
}

std::int64_t default_t_max(int n, int k, double epsilon, double delta) {
    const double raw = std::pow(static_cast<double>(n), 6.0) * std::pow(static_cast<double>(k), 1.5) /
                       (epsilon * epsilon * delta);
    const double capped = std::min(raw, 1e6);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(capped)));
}

double eval_lagrangian(const model::RiskParityInstance& inst, std::uint64_t x1,
                       const Eigen::VectorXd& x2, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& w, double zeta, double beta) {
    const int n = inst.base.n;
    if (bits::popcount(x1) != inst.base.k) return std::numeric_limits<double>::infinity();
    const Eigen::VectorXd v1 = model::to_vector(x1, n);
    const Eigen::VectorXd sx2 = inst.base.sigma * x2;
    double disparity = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = v1(i) * sx2(i) - v1(j) * sx2(j);
            disparity += d * d;
        }
    const double f2 = inst.lambda * (-x2.dot(inst.base.mu) + 0.5 * x2.dot(sx2));
    const double hy = 0.5 * zeta * y.squaredNorm();
    const Eigen::VectorXd residual = v1 - x2 - y;
    return disparity + f2 + hy + w.dot(residual) + 0.5 * beta * residual.squaredNorm();
}

MonitorRecord monitor_step(const AdmmPoint& prev, const AdmmPoint& next, double zeta, double beta,
                           double lagrangian_lower_bound) {
    MonitorRecord rec;
    rec.lagrangian_before = prev.lagrangian;
    rec.lagrangian_after = next.lagrangian;
    rec.lagrangian_drop = prev.lagrangian - next.lagrangian;
    const double move_x2 = (next.x2 - prev.x2).squaredNorm();
    const double move_y_sq = (next.y - prev.y).squaredNorm();
    rec.delta_dual = std::sqrt(move_y_sq);
    rec.descent_rhs = (beta / 2.0 - zeta * zeta / beta) * (move_x2 + move_y_sq);
    const Eigen::VectorXd v1 = model::to_vector(next.x1, static_cast<int>(next.x2.size()));
    rec.primal_residual = (v1 - next.x2 - next.y).norm();
    rec.predicted_residual = (zeta / beta) * rec.delta_dual;
    rec.subgrad_bound = (beta + zeta / beta) * rec.delta_dual;
    rec.identity_ok = std::abs(rec.primal_residual - rec.predicted_residual) < kIdentityTol;
    rec.descent_ok =
        rec.lagrangian_drop >= rec.descent_rhs - kDescentSlack * std::max(1.0, std::abs(prev.lagrangian));
    rec.lower_bound_ok = next.lagrangian >= lagrangian_lower_bound - kLowerBoundSlack;
    return rec;
}

AdmmResult admm_solve(const model::RiskParityInstance& inst, const AdmmConfig& cfg,
                      std::uint64_t seed) {
    cfg.validate();
    inst.base.validate();
    const int n = inst.base.n;
    const int k = inst.base.k;
    const double zeta = cfg.zeta;
    const double beta = cfg.beta;

    AdmmResult result;
    result.lagrangian_lower_bound =
        -inst.lambda * inst.bounds.c1 * inst.bounds.c1 * n / (2.0 * inst.bounds.c3);

    Rng rng(seed);
    AdmmPoint cur;
    cur.x1 = bits::random_weight_k(n, k, rng);
    cur.x2 = model::to_vector(cur.x1, n);
    cur.y = Eigen::VectorXd::Zero(n);
    cur.w = Eigen::VectorXd::Zero(n);
    cur.lagrangian = eval_lagrangian(inst, cur.x1, cur.x2, cur.y, cur.w, zeta, beta);

    double delta_dual = std::numeric_limits<double>::infinity();
    const double stop_threshold = cfg.epsilon / (beta + 1.0);
    int t = 0;
    while (t < cfg.t_max && delta_dual >= stop_threshold) {
        const model::QuadraticReduction red =
            model::reduce_x1_subproblem(inst, cur.x2, cur.y, cur.w, beta);

        AdmmPoint next;
        std::uint64_t solver_queries = 0;
        bool budget_exhausted = false;
        double optimality_gap = 0.0;
        if (cfg.x1_solver == X1Solver::BruteForce) {
            next.x1 = model::brute_force_bqpfc(red, n, k).best_x;
        } else {
            const auto objective =
                model::poly_from_reduction(red, n, k, qsim::kMaxQubits - n);
            grover::GasConfig gas = cfg.gas;
            gas.seed = cfg.gas.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1);
            const auto gas_result =
                grover::gas_minimize(objective, n, k, grover::Mode::HardConstrained, gas);
            next.x1 = gas_result.best_x;
            solver_queries = gas_result.oracle_queries;
            budget_exhausted = gas_result.budget_exhausted;
            if (bits::binomial(n, k) <= 100'000) {
                const auto exact = model::brute_force_bqpfc(red, n, k);
                optimality_gap = red.eval(next.x1) - exact.best_value;
            }
        }

        const Eigen::MatrixXd h = h_matrix(next.x1, n);
        const Eigen::MatrixXd q = inst.base.sigma * h * inst.base.sigma;
        const Eigen::MatrixXd lhs = 2.0 * q + inst.lambda * inst.base.sigma +
                                    beta * Eigen::MatrixXd::Identity(n, n);
        const Eigen::VectorXd v1 = model::to_vector(next.x1, n);
        const Eigen::VectorXd rhs = inst.lambda * inst.base.mu + cur.w + beta * (v1 - cur.y);
        Eigen::LLT<Eigen::MatrixXd> llt(lhs);
        if (llt.info() != Eigen::Success)
            throw SingularSystem("x2 system is not positive definite");
        next.x2 = llt.solve(rhs);

        next.y = (cur.w + beta * (v1 - next.x2)) / (zeta + beta);
        next.w = cur.w + beta * (v1 - next.x2 - next.y);
        next.lagrangian = eval_lagrangian(inst, next.x1, next.x2, next.y, next.w, zeta, beta);
        delta_dual = (next.y - cur.y).norm();

        IterationRecord rec;
        rec.t = t;
        rec.x1 = next.x1;
        rec.x2 = next.x2;
        rec.y = next.y;
        rec.w = next.w;
        rec.delta_dual = delta_dual;
        rec.lagrangian = next.lagrangian;
        rec.monitor = monitor_step(cur, next, zeta, beta, result.lagrangian_lower_bound);
        rec.solver_queries = solver_queries;
        rec.subproblem_budget_exhausted = budget_exhausted;
        rec.x1_optimality_gap = optimality_gap;
        result.trace.push_back(std::move(rec));

        cur = std::move(next);
        ++t;
    }

    result.x1_final = cur.x1;
    result.x2_final = cur.x2;
    result.y_final = cur.y;
    result.w_final = cur.w;
    result.iterations = t;
    result.final_delta_dual = delta_dual;
    result.reason = delta_dual < stop_threshold ? Termination::Converged : Termination::IterationCap;
    result.final_consistency = (model::to_vector(cur.x1, n) - cur.x2).norm();
    return result;
}

std::string trace_to_csv(const AdmmResult& result, int n) {
    std::string out =
        "t,L_beta,delta_dual,primal_residual,predicted_residual,descent_lhs,descent_rhs,x1_bits,"
        "solver_queries\n";
    char line[320];
    for (const auto& rec : result.trace) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%llu\n", rec.t,
                      rec.lagrangian, rec.delta_dual, rec.monitor.primal_residual,
                      rec.monitor.predicted_residual, rec.monitor.lagrangian_drop,
                      rec.monitor.descent_rhs, bits::to_bit_string(rec.x1, n).c_str(),
                      static_cast<unsigned long long>(rec.solver_queries));
        out += line;
    }
    return out;
}

}  // namespace qcardopt::admm
