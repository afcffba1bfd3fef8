#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "qcardopt/bits.hpp"
#include "qcardopt/model.hpp"
#include "test_util.hpp"

using namespace qcardopt;
using namespace qcardopt::model;

namespace {

// Term-by-term summation, independent of the Eigen evaluation path.
double quadratic_by_summation(const BqpFcInstance& inst, std::uint64_t x) {
    double acc = 0.0;
    for (int i = 0; i < inst.n; ++i) {
        if (!bits::test(x, i)) continue;
        acc -= inst.mu(i);
        for (int j = 0; j < inst.n; ++j)
            if (bits::test(x, j)) acc += 0.5 * inst.sigma(i, j);
    }
    return acc;
}

BqpFcInstance random_instance(int n, int k, std::uint64_t seed) { return synth_instance(n, k, seed); }

}  // namespace

TEST_CASE("quadratic evaluation basics") {
    BqpFcInstance inst;
    inst.n = 3;
    inst.k = 1;
    inst.sigma = 2.0 * Eigen::MatrixXd::Identity(3, 3);
    inst.mu = Eigen::VectorXd::Ones(3);
    CHECK(eval_quadratic(inst, 0) == 0.0);
    CHECK(eval_quadratic(inst, 0b001) == doctest::Approx(0.0));  // 0.5*2 - 1
}

TEST_CASE("quadratic evaluation agrees with independent summation") {
    const auto inst = random_instance(4, 2, 99);
    for (std::uint64_t x = 0; x < 16; ++x)
        CHECK(eval_quadratic(inst, x) == doctest::Approx(quadratic_by_summation(inst, x)).epsilon(1e-12));
}

TEST_CASE("risk parity value for a single asset held") {
    BqpFcInstance base;
    base.n = 2;
    base.k = 1;
    base.sigma.resize(2, 2);
    base.sigma << 1.3, 0.2, 0.2, 0.8;
    base.mu.resize(2);
    base.mu << 0.7, 0.4;
    const double lambda = 1.7;
    const auto inst = RiskParityInstance::wrap(base, lambda);
    // x = (1,0): both ordered pairs contribute ((Sx)_1)^2
    const double expected = 2.0 * base.sigma(0, 0) * base.sigma(0, 0) +
                            lambda * (-base.mu(0) + 0.5 * base.sigma(0, 0));
    CHECK(eval_risk_parity(inst, 0b01) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(eval_risk_parity(inst, 0) == 0.0);
}

TEST_CASE("identity covariance risk term counts mismatched pairs") {
    for (int n = 2; n <= 6; ++n) {
        BqpFcInstance base;
        base.n = n;
        base.k = 1;
        base.sigma = Eigen::MatrixXd::Identity(n, n);
        base.mu = Eigen::VectorXd::Zero(n);
        base.mu(0) = 0.5;  // keep c1 positive
        const auto inst = RiskParityInstance::wrap(base, 1.0);
        for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
            const int k = bits::popcount(x);
            const double risk = risk_disparity(base.sigma, to_vector(x, n));
            CHECK(risk == doctest::Approx(2.0 * k * (n - k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("risk term is never negative") {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const auto inst = random_instance(5, 2, 100 + rep);
        const std::uint64_t x = rng.next_below(1ULL << 5);
        CHECK(risk_disparity(inst.sigma, to_vector(x, 5)) >= 0.0);
    }
}

TEST_CASE("x1 reduction: zero data gives a constant on the feasible set") {
    const auto rp = synth_risk_parity(4, 2, 1.0, 5);
    const double beta = 3.0;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    const auto red = reduce_x1_subproblem(rp, zero, zero, zero, beta);
    bits::for_each_weight_k(4, 2, [&](std::uint64_t x) {
        CHECK(red.eval(x) == doctest::Approx(beta / 2.0 * 2.0).epsilon(1e-12));
    });
}

TEST_CASE("x1 reduction matches the subproblem expression on every binary") {
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const auto rp = synth_risk_parity(3, 1, 0.9, 200 + rep);
        Eigen::VectorXd x2(3), y(3), w(3);
        for (int i = 0; i < 3; ++i) {
            x2(i) = rng.next_normal();
            y(i) = 0.3 * rng.next_normal();
            w(i) = rng.next_normal();
        }
        const double beta = 1.0 + rng.next_double();
        const auto red = reduce_x1_subproblem(rp, x2, y, w, beta);
        for (std::uint64_t x = 0; x < 8; ++x) {
            const Eigen::VectorXd v = to_vector(x, 3);
            const Eigen::VectorXd a = rp.base.sigma * x2;
            double direct = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    const double d = v(i) * a(i) - v(j) * a(j);
                    direct += d * d;
                }
            direct += w.dot(v) + beta / 2.0 * (v - x2 - y).squaredNorm();
            CHECK(std::abs(red.eval(x) - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("x1 reduction with beta = 0 and w = 0 is the pure disparity quadratic") {
    const auto rp = synth_risk_parity(3, 1, 1.0, 11);
    Eigen::VectorXd x2(3);
    x2 << 0.4, -0.2, 0.9;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    const auto red = reduce_x1_subproblem(rp, x2, zero, zero, 0.0);
    const Eigen::VectorXd a = rp.base.sigma * x2;
    for (std::uint64_t x = 0; x < 8; ++x) {
        const Eigen::VectorXd v = to_vector(x, 3);
        double direct = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) {
                    const double d = v(i) * a(i) - v(j) * a(j);
                    direct += d * d;
                }
        CHECK(std::abs(red.eval(x) - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("disparity quadratic form is positive semidefinite") {
    Rng rng(13);
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 3 + static_cast<int>(rng.next_below(6));
        const auto rp = synth_risk_parity(n, 1, 1.0, 300 + rep);
        Eigen::VectorXd x2(n), probe(n);
        for (int i = 0; i < n; ++i) {
            x2(i) = rng.next_normal();
            probe(i) = rng.next_normal();
        }
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
        const auto red = reduce_x1_subproblem(rp, x2, zero, zero, 0.0);
        CHECK(probe.dot(red.matrix * probe) >= -1e-9);
    }
}

TEST_CASE("brute force on a constant objective counts everything as optimal") {
    const auto result = brute_force_bqpfc([](std::uint64_t) { return 1.0; }, 6, 3);
    CHECK(result.degeneracy == 20);
    CHECK(result.best_value == 1.0);
}

TEST_CASE("brute force picks the heaviest pair for a weighted linear objective") {
    // f(x) = -sum_i i x_i with 1-based weights; the best weight-2 pick is {3,4}
    const auto eval = [](std::uint64_t x) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i)
            if (bits::test(x, i)) acc -= i + 1;
        return acc;
    };
    const auto result = brute_force_bqpfc(eval, 4, 2);
    CHECK(result.best_x == 0b1100);
    CHECK(result.best_value == -7.0);
    CHECK(result.degeneracy == 1);
}

TEST_CASE("brute force tie-break is lexicographic on (x1..xn)") {
    const auto result = brute_force_bqpfc([](std::uint64_t) { return 0.0; }, 3, 1);
    // candidates 001, 010, 100 -> lexicographic order favors x1=0 prefix: 001 is (1,0,0)
    // as a tuple, so the smallest tuple is (0,0,1) = mask 100
    CHECK(result.best_x == 0b100);
}

TEST_CASE("brute force refuses oversized spaces") {
    CHECK_THROWS_AS(brute_force_bqpfc([](std::uint64_t) { return 0.0; }, 40, 20), TooLarge);
}

TEST_CASE("brute force is deterministic across runs") {
    const auto inst = random_instance(8, 3, 17);
    const auto a = brute_force_bqpfc(inst);
    const auto b = brute_force_bqpfc(inst);
    CHECK(a.best_x == b.best_x);
    CHECK(a.best_value == b.best_value);
    CHECK(a.degeneracy == b.degeneracy);
}

TEST_CASE("shrinkage endpoints and rank-one spectrum") {
    Eigen::MatrixXd sigma(3, 3);
    sigma << 2, 1, 0, 1, 3, 1, 0, 1, 1;
    CHECK((shrink_covariance(sigma, 0.0) - sigma).cwiseAbs().maxCoeff() == 0.0);
    const auto full = shrink_covariance(sigma, 1.0);
    CHECK((full - sigma.trace() / 3.0 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-12);

    Eigen::VectorXd v(3);
    v << 1.0, -2.0, 0.5;
    const Eigen::MatrixXd rank1 = v * v.transpose();
    const auto shrunk = shrink_covariance(rank1, 0.5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shrunk, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() ==
          doctest::Approx(0.5 * v.squaredNorm() / 3.0).epsilon(1e-10));
    CHECK_THROWS_AS(shrink_covariance(Eigen::MatrixXd::Zero(2, 3), 0.5), NotSquare);
}

TEST_CASE("synthetic instances satisfy the data assumptions by construction") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto rp = synth_risk_parity(6, 3, 1.0, seed);
        CHECK(rp.bounds.c1 <= 1.0);
        CHECK(rp.bounds.c3 >= 0.099);
        CHECK((rp.base.sigma - rp.base.sigma.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("reduction fidelity holds on random tuples") {
    Rng rng(41);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.next_below(7));
        const auto rp = synth_risk_parity(n, 1 + static_cast<int>(rng.next_below(
                                                 static_cast<std::uint64_t>(n))),
                                          0.5 + rng.next_double(), 1000 + rep);
        Eigen::VectorXd x2(n), y(n), w(n);
        for (int i = 0; i < n; ++i) {
            x2(i) = rng.next_normal();
            y(i) = 0.2 * rng.next_normal();
            w(i) = rng.next_normal();
        }
        const double beta = 0.5 + 2.0 * rng.next_double();
        const auto red = reduce_x1_subproblem(rp, x2, y, w, beta);
        const Eigen::VectorXd a = rp.base.sigma * x2;
        for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
            const Eigen::VectorXd v = to_vector(x, n);
            double direct = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) {
                        const double d = v(i) * a(i) - v(j) * a(j);
                        direct += d * d;
                    }
            direct += w.dot(v) + beta / 2.0 * (v - x2 - y).squaredNorm();
            CHECK(std::abs(red.eval(x) - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("polynomial builders reproduce the instance objective") {
    const auto inst = random_instance(5, 2, 55);
    const auto obj = poly_from_quadratic(inst);
    for (std::uint64_t x = 0; x < 32; ++x)
        CHECK(std::abs(obj.eval(x) - eval_quadratic(inst, x)) < 1e-3);

    const auto rp = synth_risk_parity(4, 2, 1.3, 56);
    const auto quartic = poly_from_risk_parity(rp);
    CHECK(quartic.degree() == 4);
    for (std::uint64_t x = 0; x < 16; ++x)
        CHECK(std::abs(quartic.eval(x) - eval_risk_parity(rp, x)) < 1e-2);
}

TEST_CASE("instance files round-trip and asymmetric files are rejected") {
    const auto inst = random_instance(4, 2, 77);
    const std::string path =
        (std::filesystem::temp_directory_path() / "qcardopt_instance_roundtrip.json").string();
    save_instance(inst, 1.5, path);
    double lambda = 0.0;
    const auto loaded = load_instance(path, &lambda);
    CHECK(lambda == 1.5);
    CHECK(loaded.n == inst.n);
    CHECK(loaded.k == inst.k);
    CHECK((loaded.sigma - inst.sigma).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((loaded.mu - inst.mu).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(load_instance("does_not_exist.json"), FileNotFound);
}
