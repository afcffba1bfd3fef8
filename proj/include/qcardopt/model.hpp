#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>

#include "qcardopt/qdict.hpp"

namespace qcardopt::model {

// Quadratic instance: minimize 0.5 x'Sx - mu'x over binaries of weight k.
struct BqpFcInstance {
    int n = 0;
    int k = 0;
    Eigen::MatrixXd sigma;
    Eigen::VectorXd mu;

    void validate() const;
};

struct DataBounds {
    double c1 = 0.0;  // max |mu_i|
    double c2 = 0.0;  // max diagonal of sigma
    double c3 = 0.0;  // smallest eigenvalue of sigma
};

// Quartic risk-parity instance on top of the quadratic data.
struct RiskParityInstance {
    BqpFcInstance base;
    double lambda = 1.0;
    DataBounds bounds;

    static RiskParityInstance wrap(BqpFcInstance base, double lambda);
};

// q(x) = x' matrix x + linear' x + constant, evaluated on binary vectors.
struct QuadraticReduction {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd linear;
    double constant = 0.0;

    double eval(std::uint64_t x) const;
};

Eigen::VectorXd to_vector(std::uint64_t x, int n);

double eval_quadratic(const BqpFcInstance& inst, std::uint64_t x);

// Sum over ordered pairs i != j of (x_i (Sx)_i - x_j (Sx)_j)^2.
double risk_disparity(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& x);
double eval_risk_parity(const RiskParityInstance& inst, std::uint64_t x);

// Quadratic form of the binary block update: with a = sigma * x2, the
// disparity term becomes x1' H_a x1 (diagonal 2(n-1)a_i^2, off-diagonal
// -2 a_i a_j); the movement penalty folds its squared term into the linear
// part since x_i^2 = x_i on binaries.
QuadraticReduction reduce_x1_subproblem(const RiskParityInstance& inst, const Eigen::VectorXd& x2,
                                        const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                                        double beta);

struct BruteForceResult {
    std::uint64_t best_x = 0;
    double best_value = 0.0;
    std::int64_t degeneracy = 0;  // optima within 1e-12 of the minimum
};

// Enumerates every weight-k string; ties resolve to the lexicographically
// smallest optimizer. Refuses spaces above 1e7.
BruteForceResult brute_force_bqpfc(const std::function<double(std::uint64_t)>& eval, int n, int k);
BruteForceResult brute_force_bqpfc(const BqpFcInstance& inst);
BruteForceResult brute_force_bqpfc(const QuadraticReduction& reduction, int n, int k);

struct ScaledBruteForceResult {
    std::uint64_t best_x = 0;
    std::int64_t best_value = 0;
    std::int64_t degeneracy = 0;  // exact ties in scaled units
};
ScaledBruteForceResult brute_force_scaled(const qdict::PolyObjective& obj, int k);

// (1-rho) * sigma + rho * (tr(sigma)/n) * I
Eigen::MatrixXd shrink_covariance(const Eigen::MatrixXd& sigma, double rho);

// Seeded generator with both data assumptions satisfied by construction:
// sigma = FF'/n + 0.1 I with F standard normal, mu uniform in [0,1).
BqpFcInstance synth_instance(int n, int k, std::uint64_t seed);
RiskParityInstance synth_risk_parity(int n, int k, double lambda, std::uint64_t seed);

// Multilinear builders feeding the oracle.
qdict::RealPolyBuilder quadratic_poly_builder(const BqpFcInstance& inst);
qdict::PolyObjective poly_from_quadratic(const BqpFcInstance& inst, int max_scale_power = 16);
qdict::RealPolyBuilder reduction_poly_builder(const QuadraticReduction& reduction, int n);
qdict::PolyObjective poly_from_reduction(const QuadraticReduction& reduction, int n, int k,
                                         int m_max);
qdict::RealPolyBuilder risk_parity_poly_builder(const RiskParityInstance& inst);
qdict::PolyObjective poly_from_risk_parity(const RiskParityInstance& inst,
                                           int max_scale_power = 16);

// JSON instance files: {n, k, lambda?, sigma (row-major n*n), mu (n)}.
BqpFcInstance load_instance(const std::string& path, double* lambda_out = nullptr);
void save_instance(const BqpFcInstance& inst, double lambda, const std::string& path);

}  // namespace qcardopt::model
