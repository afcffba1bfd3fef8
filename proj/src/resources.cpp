#include "qcardopt/resources.hpp"

#include <cmath>
#include <numbers>

#include "qcardopt/bits.hpp"
#include "qcardopt/dicke.hpp"

namespace qcardopt::resources {

std::map<int, std::int64_t> oracle_gate_counts(int n, int m, int degree) {
    if (n < 1 || m < 1) throw InvalidCounts("need n >= 1 and m >= 1");
    if (degree != 2 && degree != 4) throw UnsupportedDegree("oracle degree must be 2 or 4");
    auto count = [&](int d) -> std::int64_t {
        if (d > n) return 0;
        return static_cast<std::int64_t>(m) * static_cast<std::int64_t>(bits::binomial(n, d));
    };
    std::map<int, std::int64_t> out{{1, count(1)}, {2, count(2)}};
    if (degree == 4) {
        out[3] = count(3);
        out[4] = count(4);
    }
    return out;
}

double iqft_toffoli_estimate(int m) {
    if (m < 1) throw InvalidCounts("need m >= 1");
    return m * std::log2(static_cast<double>(m));
}

double binary_entropy(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw InvalidTolerance("entropy argument must be in [0, 1]");
    if (alpha == 0.0 || alpha == 1.0) return 0.0;
    return -alpha * std::log2(alpha) - (1.0 - alpha) * std::log2(1.0 - alpha);
}

GroverIterationEstimates grover_iteration_estimates(int n, int k, std::uint64_t marked_count) {
    if (n < 1 || k < 0 || k > n) throw InvalidCounts("need 0 <= k <= n");
    const double space_hard = static_cast<double>(bits::binomial(n, k));
    const double space_soft = std::ldexp(1.0, n);
    if (marked_count < 1 || static_cast<double>(marked_count) > space_hard)
        throw InvalidCounts("need 1 <= M <= C(n,k)");
    GroverIterationEstimates out;
    const double m = static_cast<double>(marked_count);
    out.hard = std::numbers::pi / 4.0 * std::sqrt(space_hard / m);
    out.soft = std::numbers::pi / 4.0 * std::sqrt(space_soft / m);
    out.ratio = std::sqrt(space_hard / space_soft);
    out.entropy_exponent = binary_entropy(static_cast<double>(k) / static_cast<double>(n));
    return out;
}

TotalQueryEstimate total_query_estimate(int n, int k, std::uint64_t marked_count, double eps,
                                        double delta) {
    if (n < 1 || k < 0 || k > n) throw InvalidCounts("need 0 <= k <= n");
    if (marked_count < 1) throw InvalidCounts("need M >= 1");
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw InvalidTolerance("tolerances must lie in (0, 1)");
    TotalQueryEstimate out;
    const double m = static_cast<double>(marked_count);
    out.qd_gas = std::ldexp(1.0, n) >= 0 ? std::pow(2.0, n / 2.0) / std::sqrt(m) : 0.0;
    const double space = static_cast<double>(bits::binomial(n, k));
    out.admm_gas_hard = std::sqrt(space) * std::pow(static_cast<double>(n), 6.0) *
                        std::pow(static_cast<double>(k), 1.5) /
                        (std::sqrt(m) * eps * eps * delta);
    out.degenerate = k == 0;
    return out;
}

DecompositionEstimates decomposition_estimates(int d) {
    if (d < 2) throw InvalidCounts("decomposition estimates need d >= 2");
    const double l = std::log2(static_cast<double>(d));
    return {l * l * l, static_cast<double>(d) * l * l * l * l};
}

std::optional<int> query_crossover_n(int k, std::uint64_t marked_count, double eps, double delta,
                                     int n_min, int n_max) {
    for (int n = std::max(n_min, std::max(k, 1)); n <= n_max; ++n) {
        const auto est = total_query_estimate(n, k, marked_count, eps, delta);
        if (est.admm_gas_hard < est.qd_gas) return n;
    }
    return std::nullopt;
}

ResourceReport make_report(Method method, int n, int k, int m, std::uint64_t marked_count,
                           double eps, double delta) {
    ResourceReport report;
    report.method = method;
    report.n = n;
    report.k = k;
    report.m = m;
    report.degree = method == Method::QdGasSoft ? 4 : 2;
    report.per_oracle_gates = oracle_gate_counts(n, m, report.degree);
    report.iqft_toffoli = iqft_toffoli_estimate(m);
    const auto iterations = grover_iteration_estimates(n, k, marked_count);
    const auto totals = total_query_estimate(n, k, marked_count, eps, delta);
    if (method == Method::AdmmGasHard) {
        const auto plan = dicke::build_dicke_unitary(n, k);
        report.diffusion_gates = plan.block_count();
        report.diffusion_depth = qsim::circuit_depth(dicke::build_constrained_diffusion(n, k));
        report.grover_rotations = iterations.hard;
        report.total_oracle_queries = totals.admm_gas_hard;
        report.admm_iterations = std::pow(static_cast<double>(n), 6.0) *
                                 std::pow(static_cast<double>(k), 1.5) / (eps * eps * delta);
    } else {
        report.diffusion_gates = 0;
        report.diffusion_depth = 0;
        report.grover_rotations = iterations.soft;
        report.total_oracle_queries = totals.qd_gas;
    }
    return report;
}

std::string method_name(Method method) {
    return method == Method::QdGasSoft ? "qd-gas-soft" : "admm-gas-hard";
}

}  // namespace qcardopt::resources
