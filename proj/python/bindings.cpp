#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <string>

#include "qcardopt/admm.hpp"
#include "qcardopt/bits.hpp"
#include "qcardopt/dicke.hpp"
#include "qcardopt/grover.hpp"
#include "qcardopt/model.hpp"
#include "qcardopt/resources.hpp"

namespace py = pybind11;
using namespace qcardopt;

namespace {

std::uint64_t parse_bits(const std::string& s) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') mask |= 1ULL << i;
    return mask;
}

model::BqpFcInstance make_instance(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k) {
    model::BqpFcInstance inst;
    inst.n = static_cast<int>(mu.size());
    inst.k = k;
    inst.sigma = sigma;
    inst.mu = mu;
    inst.validate();
    return inst;
}

grover::Mode parse_mode(const std::string& mode) {
    if (mode == "hard") return grover::Mode::HardConstrained;
    if (mode == "soft") return grover::Mode::SoftPenalty;
    throw ValidationError("mode must be 'hard' or 'soft'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cardinality-constrained quantum optimization toolkit";

    m.def(
        "prepare_dicke",
        [](int n, int k) {
            const auto state = dicke::prepare_constrained_superposition(n, k);
            py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(state.dim()));
            auto view = out.mutable_unchecked<1>();
            for (std::uint64_t i = 0; i < state.dim(); ++i)
                view(static_cast<py::ssize_t>(i)) = state.amps()[i];
            return out;
        },
        py::arg("n"), py::arg("k"),
        "Amplitudes of the uniform weight-k superposition over n qubits");

    m.def(
        "dicke_block_counts",
        [](int n, int k) {
            const auto plan = dicke::build_dicke_unitary(n, k);
            py::dict d;
            d["two_qubit"] = plan.two_qubit_blocks;
            d["three_qubit"] = plan.three_qubit_blocks;
            d["depth"] = qsim::circuit_depth(plan.ops);
            return d;
        },
        py::arg("n"), py::arg("k"));

    m.def("optimal_rotations", &grover::optimal_rotations, py::arg("space"), py::arg("marked"));
    m.def("optimal_rotations_real", &grover::optimal_rotations_real, py::arg("space"),
          py::arg("marked"));

    m.def(
        "oracle_gate_counts",
        [](int n, int mbits, int degree) {
            py::dict d;
            for (const auto& [deg, count] : resources::oracle_gate_counts(n, mbits, degree))
                d[py::int_(deg)] = count;
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("degree"));

    m.def(
        "grover_iteration_estimates",
        [](int n, int k, std::uint64_t marked) {
            const auto est = resources::grover_iteration_estimates(n, k, marked);
            py::dict d;
            d["hard"] = est.hard;
            d["soft"] = est.soft;
            d["ratio"] = est.ratio;
            d["entropy_exponent"] = est.entropy_exponent;
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("marked") = 1);

    m.def(
        "total_query_estimate",
        [](int n, int k, std::uint64_t marked, double eps, double delta) {
            const auto est = resources::total_query_estimate(n, k, marked, eps, delta);
            py::dict d;
            d["admm_gas_hard"] = est.admm_gas_hard;
            d["qd_gas"] = est.qd_gas;
            d["degenerate"] = est.degenerate;
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("marked") = 1, py::arg("eps") = 0.1,
        py::arg("delta") = 0.1);

    m.def(
        "decomposition_estimates",
        [](int d) {
            const auto est = resources::decomposition_estimates(d);
            py::dict out;
            out["depth"] = est.depth;
            out["gates"] = est.gates;
            return out;
        },
        py::arg("d"));

    m.def(
        "synth_instance",
        [](int n, int k, std::uint64_t seed) {
            const auto inst = model::synth_instance(n, k, seed);
            py::dict d;
            d["sigma"] = inst.sigma;
            d["mu"] = inst.mu;
            d["n"] = inst.n;
            d["k"] = inst.k;
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("seed"));

    m.def(
        "eval_quadratic",
        [](const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k, const std::string& x) {
            return model::eval_quadratic(make_instance(sigma, mu, k), parse_bits(x));
        },
        py::arg("sigma"), py::arg("mu"), py::arg("k"), py::arg("x"));

    m.def(
        "eval_risk_parity",
        [](const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k, double lam,
           const std::string& x) {
            const auto inst = model::RiskParityInstance::wrap(make_instance(sigma, mu, k), lam);
            return model::eval_risk_parity(inst, parse_bits(x));
        },
        py::arg("sigma"), py::arg("mu"), py::arg("k"), py::arg("lam"), py::arg("x"));

    m.def(
        "brute_force",
        [](const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k) {
            const auto inst = make_instance(sigma, mu, k);
            const auto result = model::brute_force_bqpfc(inst);
            py::dict d;
            d["x"] = bits::to_bit_string(result.best_x, inst.n);
            d["value"] = result.best_value;
            d["degeneracy"] = result.degeneracy;
            return d;
        },
        py::arg("sigma"), py::arg("mu"), py::arg("k"));

    m.def(
        "gas_minimize",
        [](const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k,
           const std::string& mode, std::uint64_t seed, std::uint64_t budget, double xi) {
            const auto inst = make_instance(sigma, mu, k);
            grover::GasConfig cfg;
            cfg.seed = seed;
            cfg.max_oracle_queries = budget;
            cfg.xi = xi;
            const auto result = grover::gas_minimize(inst, parse_mode(mode), cfg);
            py::dict d;
            d["x"] = bits::to_bit_string(result.best_x, inst.n);
            d["value"] = result.best_value;
            d["oracle_queries"] = result.oracle_queries;
            d["iterations"] = result.iterations;
            d["budget_exhausted"] = result.budget_exhausted;
            d["precision_m"] = result.precision_m;
            d["trace_csv"] = grover::gas_trace_csv(result, inst.n);
            return d;
        },
        py::arg("sigma"), py::arg("mu"), py::arg("k"), py::arg("mode") = "hard",
        py::arg("seed") = 0, py::arg("budget") = 100000, py::arg("xi") = 1.34);

    m.def(
        "select_parameters",
        [](const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k, double lam, double eps,
           double delta) {
            const auto inst = model::RiskParityInstance::wrap(make_instance(sigma, mu, k), lam);
            const auto params = admm::select_parameters(inst, eps, delta);
            return py::make_tuple(params.zeta, params.beta);
        },
        py::arg("sigma"), py::arg("mu"), py::arg("k"), py::arg("lam") = 1.0, py::arg("eps") = 0.1,
        py::arg("delta") = 0.1);

    m.def(
        "admm_solve",
        [](const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, int k, double lam,
           const std::string& solver, std::uint64_t seed, double eps, double delta) {
            const auto inst = model::RiskParityInstance::wrap(make_instance(sigma, mu, k), lam);
            admm::AdmmConfig cfg;
            cfg.epsilon = eps;
            cfg.delta = delta;
            const auto params = admm::select_parameters(inst, eps, delta);
            cfg.zeta = params.zeta;
            cfg.beta = params.beta;
            cfg.t_max = admm::default_t_max(inst.base.n, inst.base.k, eps, delta);
            if (solver == "gas") {
                cfg.x1_solver = admm::X1Solver::GasHard;
                cfg.gas.seed = seed;
            } else if (solver == "brute") {
                cfg.x1_solver = admm::X1Solver::BruteForce;
            } else {
                throw ValidationError("solver must be 'brute' or 'gas'");
            }
            const auto result = admm::admm_solve(inst, cfg, seed);
            bool monitors_ok = true;
            for (const auto& rec : result.trace)
                monitors_ok &= rec.monitor.identity_ok && rec.monitor.lower_bound_ok;
            py::dict d;
            d["x1"] = bits::to_bit_string(result.x1_final, inst.base.n);
            d["value"] = model::eval_risk_parity(inst, result.x1_final);
            d["iterations"] = result.iterations;
            d["converged"] = result.reason == admm::Termination::Converged;
            d["consistency"] = result.final_consistency;
            d["monitors_ok"] = monitors_ok;
            d["zeta"] = cfg.zeta;
            d["beta"] = cfg.beta;
            d["trace_csv"] = admm::trace_to_csv(result, inst.base.n);
            return d;
        },
        py::arg("sigma"), py::arg("mu"), py::arg("k"), py::arg("lam") = 1.0,
        py::arg("solver") = "brute", py::arg("seed") = 0, py::arg("eps") = 0.1,
        py::arg("delta") = 0.1);
}
