#include "qcardopt/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "qcardopt/bits.hpp"

namespace qcardopt::model {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kFileSymmetryTol = 1e-9;
constexpr double kDegeneracyTol = 1e-12;
constexpr std::uint64_t kBruteForceCap = 10'000'000;

double max_asymmetry(const Eigen::MatrixXd& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

void BqpFcInstance::validate() const {
    if (n < 1) throw ValidationError("instance needs at least one variable");
    if (k < 0 || k > n) throw CardinalityOutOfRange("cardinality must satisfy 0 <= k <= n");
    if (sigma.rows() != n || sigma.cols() != n)
        throw DimensionMismatch("sigma must be n x n");
    if (mu.size() != n) throw DimensionMismatch("mu must have length n");
    if (max_asymmetry(sigma) > kSymmetryTol)
        throw ValidationError("sigma is not symmetric");
}

RiskParityInstance RiskParityInstance::wrap(BqpFcInstance base, double lambda) {
    base.validate();
    if (lambda <= 0.0) throw ValidationError("lambda must be positive");
    RiskParityInstance inst;
    inst.bounds.c1 = base.mu.cwiseAbs().maxCoeff();
    inst.bounds.c2 = base.sigma.diagonal().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(base.sigma, Eigen::EigenvaluesOnly);
    inst.bounds.c3 = eig.eigenvalues().minCoeff();
    if (inst.bounds.c3 <= 0.0)
        throw ValidationError("sigma must be positive definite (shrinkage can enforce this)");
    inst.base = std::move(base);
    inst.lambda = lambda;
    return inst;
}

Eigen::VectorXd to_vector(std::uint64_t x, int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = bits::test(x, i) ? 1.0 : 0.0;
    return v;
}

double eval_quadratic(const BqpFcInstance& inst, std::uint64_t x) {
    if (x >> inst.n) throw DimensionMismatch("bitstring wider than the instance");
    const Eigen::VectorXd v = to_vector(x, inst.n);
    return 0.5 * v.dot(inst.sigma * v) - inst.mu.dot(v);
}

double risk_disparity(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& x) {
    const Eigen::VectorXd sx = sigma * x;
    const int n = static_cast<int>(x.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = x(i) * sx(i) - x(j) * sx(j);
            acc += d * d;
        }
    return acc;
}

double eval_risk_parity(const RiskParityInstance& inst, std::uint64_t x) {
    if (x >> inst.base.n) throw DimensionMismatch("bitstring wider than the instance");
    const Eigen::VectorXd v = to_vector(x, inst.base.n);
    const double risk = risk_disparity(inst.base.sigma, v);
    const double ret = inst.lambda * (-inst.base.mu.dot(v) + 0.5 * v.dot(inst.base.sigma * v));
    return risk + ret;
}

QuadraticReduction reduce_x1_subproblem(const RiskParityInstance& inst, const Eigen::VectorXd& x2,
                                        const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                                        double beta) {
    const int n = inst.base.n;
    if (x2.size() != n || y.size() != n || w.size() != n)
        throw DimensionMismatch("iterate dimensions must match the instance");
    const Eigen::VectorXd a = inst.base.sigma * x2;
    QuadraticReduction red;
    red.matrix = -2.0 * (a * a.transpose());
    red.matrix.diagonal() = 2.0 * (n - 1) * a.cwiseProduct(a);
    const Eigen::VectorXd target = x2 + y;
    red.linear = w - beta * target + Eigen::VectorXd::Constant(n, beta / 2.0);
    red.constant = 0.5 * beta * target.squaredNorm();
    return red;
}

double QuadraticReduction::eval(std::uint64_t x) const {
    const int n = static_cast<int>(linear.size());
    const Eigen::VectorXd v = to_vector(x, n);
    return v.dot(matrix * v) + linear.dot(v) + constant;
}

BruteForceResult brute_force_bqpfc(const std::function<double(std::uint64_t)>& eval, int n, int k) {
    if (k < 0 || k > n) throw CardinalityOutOfRange("cardinality must satisfy 0 <= k <= n");
    if (bits::binomial(n, k) > kBruteForceCap)
        throw TooLarge("brute force refuses feasible sets above 1e7 strings");
    BruteForceResult result;
    bool first = true;
    bits::for_each_weight_k(n, k, [&](std::uint64_t x) {
        const double v = eval(x);
        if (first || v < result.best_value) {
            result.best_value = v;
            first = false;
        }
    });
    first = true;
    bits::for_each_weight_k(n, k, [&](std::uint64_t x) {
        if (eval(x) > result.best_value + kDegeneracyTol) return;
        ++result.degeneracy;
        if (first || bits::lex_less(x, result.best_x, n)) {
            result.best_x = x;
            first = false;
        }
    });
    return result;
}

BruteForceResult brute_force_bqpfc(const BqpFcInstance& inst) {
    inst.validate();
    return brute_force_bqpfc([&](std::uint64_t x) { return eval_quadratic(inst, x); }, inst.n,
                             inst.k);
}

BruteForceResult brute_force_bqpfc(const QuadraticReduction& reduction, int n, int k) {
    return brute_force_bqpfc([&](std::uint64_t x) { return reduction.eval(x); }, n, k);
}

ScaledBruteForceResult brute_force_scaled(const qdict::PolyObjective& obj, int k) {
    if (bits::binomial(obj.n, k) > kBruteForceCap)
        throw TooLarge("brute force refuses feasible sets above 1e7 strings");
    ScaledBruteForceResult result;
    bool first = true;
    bits::for_each_weight_k(obj.n, k, [&](std::uint64_t x) {
        const std::int64_t v = obj.eval_scaled(x);
        if (first || v < result.best_value ||
            (v == result.best_value && bits::lex_less(x, result.best_x, obj.n))) {
            result.best_value = first ? v : std::min(v, result.best_value);
            result.best_x = x;
            first = false;
        }
    });
    bits::for_each_weight_k(obj.n, k, [&](std::uint64_t x) {
        if (obj.eval_scaled(x) == result.best_value) ++result.degeneracy;
    });
    return result;
}

Eigen::MatrixXd shrink_covariance(const Eigen::MatrixXd& sigma, double rho) {
    if (sigma.rows() != sigma.cols()) throw NotSquare("shrinkage needs a square matrix");
    if (rho < 0.0 || rho > 1.0) throw ValidationError("shrinkage weight must be in [0, 1]");
    const int n = static_cast<int>(sigma.rows());
    const double mean_var = sigma.trace() / n;
    return (1.0 - rho) * sigma + rho * mean_var * Eigen::MatrixXd::Identity(n, n);
}

BqpFcInstance synth_instance(int n, int k, std::uint64_t seed) {
    if (n < 1) throw ValidationError("instance needs at least one variable");
    if (k < 0 || k > n) throw CardinalityOutOfRange("cardinality must satisfy 0 <= k <= n");
    Rng rng(seed);
    const int cols = std::max(2, n / 2);
    Eigen::MatrixXd f(n, cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < cols; ++j) f(i, j) = rng.next_normal();
    BqpFcInstance inst;
    inst.n = n;
    inst.k = k;
    inst.sigma = f * f.transpose() / n + 0.1 * Eigen::MatrixXd::Identity(n, n);
    inst.sigma = 0.5 * (inst.sigma + inst.sigma.transpose());  // kill rounding asymmetry
    inst.mu.resize(n);
    for (int i = 0; i < n; ++i) inst.mu(i) = rng.next_double();
    inst.validate();
    return inst;
}

RiskParityInstance synth_risk_parity(int n, int k, double lambda, std::uint64_t seed) {
    return RiskParityInstance::wrap(synth_instance(n, k, seed), lambda);
}

qdict::RealPolyBuilder quadratic_poly_builder(const BqpFcInstance& inst) {
    inst.validate();
    qdict::RealPolyBuilder builder(inst.n);
    for (int i = 0; i < inst.n; ++i) {
        builder.add_term({i}, 0.5 * inst.sigma(i, i) - inst.mu(i));
        for (int j = i + 1; j < inst.n; ++j) builder.add_term({i, j}, inst.sigma(i, j));
    }
    return builder;
}

qdict::PolyObjective poly_from_quadratic(const BqpFcInstance& inst, int max_scale_power) {
    return quadratic_poly_builder(inst).quantize_auto(max_scale_power);
}

qdict::RealPolyBuilder reduction_poly_builder(const QuadraticReduction& reduction, int n) {
    qdict::RealPolyBuilder builder(n);
    builder.add_constant(reduction.constant);
    for (int i = 0; i < n; ++i) {
        builder.add_term({i}, reduction.matrix(i, i) + reduction.linear(i));
        for (int j = i + 1; j < n; ++j)
            builder.add_term({i, j}, reduction.matrix(i, j) + reduction.matrix(j, i));
    }
    return builder;
}

qdict::PolyObjective poly_from_reduction(const QuadraticReduction& reduction, int n, int k,
                                         int m_max) {
    return qdict::quantize_for_register(reduction_poly_builder(reduction, n), k, m_max);
}

qdict::RealPolyBuilder risk_parity_poly_builder(const RiskParityInstance& inst) {
    const int n = inst.base.n;
    const Eigen::MatrixXd& s = inst.base.sigma;
    qdict::RealPolyBuilder builder(n);
    // sum over ordered pairs of (u_i - u_j)^2 with u_i = sum_a s_ia x_i x_a:
    // the squares contribute 2(n-1) sum_i u_i^2, the cross terms -2 u_i u_j.
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                builder.add_term({i, a, b}, 2.0 * (n - 1) * s(i, a) * s(i, b));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    builder.add_term({i, a, j, b}, -2.0 * s(i, a) * s(j, b));
        }
    for (int i = 0; i < n; ++i) {
        builder.add_term({i}, inst.lambda * (0.5 * s(i, i) - inst.base.mu(i)));
        for (int j = i + 1; j < n; ++j) builder.add_term({i, j}, inst.lambda * s(i, j));
    }
    return builder;
}

qdict::PolyObjective poly_from_risk_parity(const RiskParityInstance& inst, int max_scale_power) {
    return risk_parity_poly_builder(inst).quantize_auto(max_scale_power);
}

BqpFcInstance load_instance(const std::string& path, double* lambda_out) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open instance file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("instance file " + path + ": " + e.what());
    }
    BqpFcInstance inst;
    try {
        inst.n = doc.at("n").get<int>();
        inst.k = doc.at("k").get<int>();
        const auto sigma = doc.at("sigma").get<std::vector<double>>();
        const auto mu = doc.at("mu").get<std::vector<double>>();
        if (inst.n < 1) throw ValidationError("instance needs at least one variable");
        if (static_cast<int>(sigma.size()) != inst.n * inst.n)
            throw ValidationError("sigma must hold n*n entries row-major");
        if (static_cast<int>(mu.size()) != inst.n) throw ValidationError("mu must hold n entries");
        inst.sigma.resize(inst.n, inst.n);
        for (int i = 0; i < inst.n; ++i)
            for (int j = 0; j < inst.n; ++j)
                inst.sigma(i, j) = sigma[static_cast<std::size_t>(i * inst.n + j)];
        inst.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(), inst.n);
        if (lambda_out) *lambda_out = doc.value("lambda", 1.0);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("instance file " + path + ": " + e.what());
    }
    if (max_asymmetry(inst.sigma) > kFileSymmetryTol)
        throw ValidationError("instance file rejected: sigma not symmetric within 1e-9");
    inst.sigma = 0.5 * (inst.sigma + inst.sigma.transpose());
    inst.validate();
    return inst;
}

void save_instance(const BqpFcInstance& inst, double lambda, const std::string& path) {
    inst.validate();
    nlohmann::json doc;
    doc["n"] = inst.n;
    doc["k"] = inst.k;
    doc["lambda"] = lambda;
    std::vector<double> sigma;
    sigma.reserve(static_cast<std::size_t>(inst.n) * inst.n);
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j) sigma.push_back(inst.sigma(i, j));
    doc["sigma"] = sigma;
    doc["mu"] = std::vector<double>(inst.mu.data(), inst.mu.data() + inst.n);
    std::ofstream out(path);
    if (!out) throw FileNotFound("cannot write instance file " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace qcardopt::model
