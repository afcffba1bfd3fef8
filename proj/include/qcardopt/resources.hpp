#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qcardopt/errors.hpp"

namespace qcardopt::resources {

// Controlled-rotation counts of one quantum-dictionary encoding pass for a
// dense objective: degree d costs m * C(n, d) d-controlled rotations.
std::map<int, std::int64_t> oracle_gate_counts(int n, int m, int degree);

// m log2(m), constant 1; order estimate only.
double iqft_toffoli_estimate(int m);

struct GroverIterationEstimates {
    double hard = 0.0;   // pi/4 sqrt(C(n,k)/M)
    double soft = 0.0;   // pi/4 sqrt(2^n/M)
    double ratio = 0.0;  // sqrt(C(n,k)/2^n)
    double entropy_exponent = 0.0;  // H2(k/n)
};
GroverIterationEstimates grover_iteration_estimates(int n, int k, std::uint64_t marked_count);

double binary_entropy(double alpha);

struct TotalQueryEstimate {
    double admm_gas_hard = 0.0;  // sqrt(C(n,k)) n^6 k^{3/2} / (sqrt(M) eps^2 delta)
    double qd_gas = 0.0;         // 2^{n/2} / sqrt(M)
    bool degenerate = false;     // k == 0 collapses the hard estimate to zero
};
TotalQueryEstimate total_query_estimate(int n, int k, std::uint64_t marked_count, double eps,
                                        double delta);

struct DecompositionEstimates {
    double depth = 0.0;  // log2(d)^3
    double gates = 0.0;  // d log2(d)^4
};
DecompositionEstimates decomposition_estimates(int d);

// Smallest n in [n_min, n_max] where the hard-constrained total-query estimate
// drops below the direct quartic-oracle one.
std::optional<int> query_crossover_n(int k, std::uint64_t marked_count, double eps, double delta,
                                     int n_min, int n_max);

enum class Method { QdGasSoft, AdmmGasHard };

struct ResourceReport {
    Method method = Method::QdGasSoft;
    int n = 0;
    int k = 0;
    int m = 0;
    int degree = 2;
    std::map<int, std::int64_t> per_oracle_gates;
    double iqft_toffoli = 0.0;
    std::int64_t diffusion_gates = 0;  // SCS blocks of the preparation circuit (hard mode)
    int diffusion_depth = 0;
    double grover_rotations = 0.0;
    double total_oracle_queries = 0.0;
    double admm_iterations = 0.0;  // AdmmGasHard only
};

ResourceReport make_report(Method method, int n, int k, int m, std::uint64_t marked_count,
                           double eps, double delta);

std::string method_name(Method method);

}  // namespace qcardopt::resources
