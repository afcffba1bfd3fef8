#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcardopt/admm.hpp"
#include "qcardopt/bits.hpp"
#include "test_util.hpp"

using namespace qcardopt;
using namespace qcardopt::admm;
using qcardopt::model::RiskParityInstance;

namespace {

AdmmConfig configured(const RiskParityInstance& inst, double eps, double delta,
                      X1Solver solver = X1Solver::BruteForce) {
    AdmmConfig cfg;
    cfg.epsilon = eps;
    cfg.delta = delta;
    const auto params = select_parameters(inst, eps, delta);
    cfg.zeta = params.zeta;
    cfg.beta = params.beta;
    cfg.t_max = default_t_max(inst.base.n, inst.base.k, eps, delta);
    cfg.x1_solver = solver;
    return cfg;
}

}  // namespace

TEST_CASE("parameter selection reproduces the explicit bound") {
    model::BqpFcInstance base;
    base.n = 4;
    base.k = 2;
    base.sigma = Eigen::MatrixXd::Identity(4, 4);
    base.mu = Eigen::VectorXd::Ones(4);
    auto inst = RiskParityInstance::wrap(base, 1.0);
    REQUIRE(inst.bounds.c1 == 1.0);
    REQUIRE(inst.bounds.c2 == 1.0);

    const auto params = select_parameters(inst, 0.1, 0.1, 1.0, 1.5);
    const double s = std::sqrt(2.0) + 0.2;
    const double bound = (2.0 * 64.0 * s + 2.0 + 4.0 * s + 0.1) / 0.1;
    CHECK(bound == doctest::Approx(2151.7619023324855).epsilon(1e-12));
    CHECK(params.bound == doctest::Approx(bound).epsilon(1e-12));
    CHECK(params.zeta > params.bound);
    CHECK(params.zeta == doctest::Approx(params.bound).epsilon(1e-6));
    CHECK(params.beta == doctest::Approx(1.5 * params.zeta).epsilon(1e-12));
}

TEST_CASE("parameter selection rejects bad tolerances") {
    const auto inst = model::synth_risk_parity(4, 2, 1.0, 1);
    CHECK_THROWS_AS(select_parameters(inst, 0.0, 0.1), InvalidTolerance);
    CHECK_THROWS_AS(select_parameters(inst, 0.1, 1.0), InvalidTolerance);
    CHECK_THROWS_AS(select_parameters(inst, 0.1, 0.1, 1.0, 1.2), ValidationError);
}

TEST_CASE("config validation enforces the penalty inequality") {
    AdmmConfig cfg;
    cfg.zeta = 1.0;
    cfg.beta = 1.2;  // below sqrt(2)
    cfg.t_max = 10;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.beta = 1.5;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("two assets: the run lands on the quartic brute-force optimum") {
    model::BqpFcInstance base;
    base.n = 2;
    base.k = 1;
    base.sigma = Eigen::MatrixXd::Identity(2, 2);
    base.mu.resize(2);
    base.mu << 1.0, 0.0;
    const auto inst = RiskParityInstance::wrap(base, 1.0);

    // independent oracle: enumerate the two feasible points of the quartic
    double best_value = 0.0;
    std::uint64_t best_x = 0;
    bool first = true;
    bits::for_each_weight_k(2, 1, [&](std::uint64_t x) {
        const double v = model::eval_risk_parity(inst, x);
        if (first || v < best_value) {
            best_value = v;
            best_x = x;
            first = false;
        }
    });
    CHECK(best_x == 0b01);  // higher return, equal risk
    CHECK(best_value == doctest::Approx(2.0 * 1.0 - 0.5).epsilon(1e-12));

    AdmmConfig cfg;
    cfg.epsilon = 0.01;
    cfg.delta = 0.1;
    cfg.zeta = 1.0;
    cfg.beta = 1.5;
    cfg.t_max = 500;
    // seed chosen so the iterate starts on the worse point and must move
    std::uint64_t seed = 0;
    for (; seed < 64; ++seed) {
        Rng probe(seed);
        if (bits::random_weight_k(2, 1, probe) == 0b10) break;
    }
    const auto result = admm_solve(inst, cfg, seed);
    CHECK(result.x1_final == best_x);
    CHECK(result.reason == Termination::Converged);
}

TEST_CASE("termination honors the dual threshold") {
    const auto inst = model::synth_risk_parity(4, 2, 1.0, 7);
    const auto cfg = configured(inst, 0.1, 0.1);
    const auto result = admm_solve(inst, cfg, 3);
    REQUIRE(result.reason == Termination::Converged);
    CHECK(result.final_delta_dual < cfg.epsilon / (cfg.beta + 1.0));
    CHECK(result.iterations >= 1);
    // consistency guarantee from the parameter selection
    CHECK(result.final_consistency < cfg.epsilon + cfg.delta);
}

TEST_CASE("lagrangian evaluation identities") {
    const auto inst = model::synth_risk_parity(4, 2, 1.3, 21);
    const int n = 4;
    Rng rng(5);
    const std::uint64_t x1 = bits::random_weight_k(n, 2, rng);
    const Eigen::VectorXd v1 = model::to_vector(x1, n);
    const double zeta = 2.0, beta = 4.0;

    SUBCASE("penalty terms vanish at consensus") {
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
        const double value = eval_lagrangian(inst, x1, v1, zero, zero, zeta, beta);
        const double expected = model::risk_disparity(inst.base.sigma, v1) +
                                inst.lambda * (-v1.dot(inst.base.mu) +
                                               0.5 * v1.dot(inst.base.sigma * v1));
        CHECK(value == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("zero residual leaves only the objective") {
        Eigen::VectorXd x2(n);
        for (int i = 0; i < n; ++i) x2(i) = rng.next_normal();
        const Eigen::VectorXd y = v1 - x2;
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
        const double value = eval_lagrangian(inst, x1, x2, y, zero, zeta, beta);
        const Eigen::VectorXd sx2 = inst.base.sigma * x2;
        double disparity = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    const double d = v1(i) * sx2(i) - v1(j) * sx2(j);
                    disparity += d * d;
                }
        const double expected = disparity +
                                inst.lambda * (-x2.dot(inst.base.mu) + 0.5 * x2.dot(sx2)) +
                                0.5 * zeta * y.squaredNorm();
        CHECK(value == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("random state matches term-by-term evaluation") {
        Eigen::VectorXd x2(n), y(n), w(n);
        for (int i = 0; i < n; ++i) {
            x2(i) = rng.next_normal();
            y(i) = rng.next_normal();
            w(i) = rng.next_normal();
        }
        const double value = eval_lagrangian(inst, x1, x2, y, w, zeta, beta);
        const Eigen::VectorXd sx2 = inst.base.sigma * x2;
        double expected = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    const double d = v1(i) * sx2(i) - v1(j) * sx2(j);
                    expected += d * d;
                }
        expected += inst.lambda * (-x2.dot(inst.base.mu) + 0.5 * x2.dot(sx2));
        expected += 0.5 * zeta * y.squaredNorm();
        for (int i = 0; i < n; ++i) {
            const double r = v1(i) - x2(i) - y(i);
            expected += w(i) * r + 0.5 * beta * r * r;
        }
        CHECK(value == doctest::Approx(expected).epsilon(1e-10));
    }
    SUBCASE("infeasible x1 is rejected by the indicator") {
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
        CHECK(std::isinf(eval_lagrangian(inst, 0b0111, zero, zero, zero, zeta, beta)));
    }
}

TEST_CASE("stationary monitor record is all zeros and passes") {
    const auto inst = model::synth_risk_parity(4, 2, 1.0, 33);
    AdmmPoint p;
    p.x1 = 0b0011;
    p.x2 = model::to_vector(p.x1, 4);
    p.y = Eigen::VectorXd::Zero(4);
    p.w = Eigen::VectorXd::Zero(4);
    p.lagrangian = eval_lagrangian(inst, p.x1, p.x2, p.y, p.w, 2.0, 4.0);
    const auto rec = monitor_step(p, p, 2.0, 4.0, -100.0);
    CHECK(rec.lagrangian_drop == 0.0);
    CHECK(rec.descent_rhs == 0.0);
    CHECK(rec.delta_dual == 0.0);
    CHECK(rec.subgrad_bound == 0.0);
    CHECK(rec.identity_ok);
    CHECK(rec.descent_ok);
    CHECK(rec.lower_bound_ok);
}

TEST_CASE("brute-force runs satisfy every per-iteration monitor") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto inst = model::synth_risk_parity(seed % 2 == 0 ? 4 : 6, seed % 2 == 0 ? 2 : 3,
                                                   1.0, 900 + seed);
        const auto cfg = configured(inst, 0.1, 0.1);
        const auto result = admm_solve(inst, cfg, seed);
        REQUIRE(!result.trace.empty());
        double prev_lagrangian = 0.0;
        bool first = true;
        for (const auto& rec : result.trace) {
            CHECK(bits::popcount(rec.x1) == inst.base.k);
            CHECK(rec.monitor.identity_ok);
            CHECK(rec.monitor.descent_ok);
            CHECK(rec.monitor.lower_bound_ok);
            CHECK((rec.w - cfg.zeta * rec.y).norm() < 1e-9);
            if (!first) CHECK(rec.lagrangian <= prev_lagrangian + 1e-8);
            prev_lagrangian = rec.lagrangian;
            first = false;
        }
    }
}

TEST_CASE("gas-backed runs match brute-force runs on the same seeds") {
    int agree = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = model::synth_risk_parity(4, 2, 1.0, 50 + seed);
        auto brute_cfg = configured(inst, 0.1, 0.1, X1Solver::BruteForce);
        auto gas_cfg = configured(inst, 0.1, 0.1, X1Solver::GasHard);
        gas_cfg.gas.seed = 7000 + seed;
        gas_cfg.gas.max_oracle_queries = 5000;
        const auto brute = admm_solve(inst, brute_cfg, seed);
        const auto gas = admm_solve(inst, gas_cfg, seed);
        if (brute.x1_final == gas.x1_final) ++agree;
        for (const auto& rec : gas.trace) CHECK(rec.x1_optimality_gap >= -1e-9);
    }
    CHECK(agree >= 4);
}

TEST_CASE("trace export carries the expected columns") {
    const auto inst = model::synth_risk_parity(4, 2, 1.0, 77);
    const auto cfg = configured(inst, 0.1, 0.1);
    const auto result = admm_solve(inst, cfg, 5);
    const std::string csv = trace_to_csv(result, 4);
    CHECK(csv.rfind("t,L_beta,delta_dual,primal_residual,predicted_residual,descent_lhs,"
                    "descent_rhs,x1_bits,solver_queries\n", 0) == 0);
    // one line per iteration plus the header
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == static_cast<long>(result.trace.size()) + 1);
}
