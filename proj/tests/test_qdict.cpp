#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcardopt/bits.hpp"
#include "qcardopt/qdict.hpp"
#include "test_util.hpp"

using namespace qcardopt;
using namespace qcardopt::qdict;
using qsim::Circuit;
using qsim::Complex;
using qsim::Statevector;

namespace {

// Two's complement of v on m bits.
std::uint64_t twos_complement(std::int64_t v, int m) {
    const std::int64_t mod = std::int64_t{1} << m;
    std::int64_t r = v % mod;
    if (r < 0) r += mod;
    return static_cast<std::uint64_t>(r);
}

// Full-register index with variable assignment x and ancilla value a.
std::uint64_t packed(std::uint64_t x, std::uint64_t a, int n) { return x | (a << n); }

PolyObjective random_integer_quadratic(int n, Rng& rng, std::int64_t lo = -4, std::int64_t hi = 4) {
    PolyObjective obj;
    obj.n = n;
    obj.scale_power = 0;
    const std::uint64_t width = static_cast<std::uint64_t>(hi - lo + 1);
    auto draw = [&]() { return lo + static_cast<std::int64_t>(rng.next_below(width)); };
    for (int i = 0; i < n; ++i) {
        if (std::int64_t c = draw(); c != 0) obj.terms[{i}] = c;
        for (int j = i + 1; j < n; ++j)
            if (std::int64_t c = draw(); c != 0) obj.terms[{i, j}] = c;
    }
    obj.constant = draw();
    return obj;
}

}  // namespace

TEST_CASE("eval folds repeated indices and respects the scale") {
    RealPolyBuilder builder(3);
    builder.add_term({0, 0}, 1.5);  // folds to x0
    builder.add_term({1, 2}, -0.25);
    builder.add_constant(2.0);
    PolyObjective obj = builder.quantize_auto();
    CHECK(obj.scale_power == 2);  // quarters
    CHECK(obj.eval(0b001) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(obj.eval(0b110) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(obj.eval_scaled(0b110) == 7);
}

TEST_CASE("preferred scale sticks at the cap for off-grid coefficients") {
    RealPolyBuilder builder(1);
    builder.add_term({0}, 1.0 / 3.0);
    CHECK(builder.preferred_scale_power() == 16);
}

TEST_CASE("auto precision covers the threshold range") {
    SUBCASE("values spanning -3..4 need four bits") {
        PolyObjective obj;
        obj.n = 3;
        obj.terms[{0}] = 4;
        obj.terms[{1}] = -3;
        obj.constant = 0;
        const auto interval = feasible_interval(obj, 3);
        CHECK(interval.lo == -3);
        CHECK(interval.hi == 4);
        CHECK(auto_precision(obj, interval, 24) == 4);
        // every threshold inside the range keeps f(x)-y inside the window
        const std::int64_t half = std::int64_t{1} << 3;
        for (std::int64_t y = interval.lo; y <= interval.hi; ++y)
            for (std::int64_t v = interval.lo; v <= interval.hi; ++v) {
                CHECK(v - y >= -half);
                CHECK(v - y < half);
            }
    }
    SUBCASE("constant objective needs a single qubit") {
        PolyObjective obj;
        obj.n = 2;
        obj.constant = 0;
        CHECK(auto_precision(obj, feasible_interval(obj, 2), 24) == 1);
    }
    SUBCASE("a single unit term needs sign bit plus one") {
        PolyObjective obj;
        obj.n = 1;
        obj.terms[{0}] = 1;
        CHECK(auto_precision(obj, feasible_interval(obj, 1), 24) == 2);
    }
    SUBCASE("register cap overflows loudly") {
        PolyObjective obj;
        obj.n = 1;
        obj.terms[{0}] = 1 << 20;
        CHECK_THROWS_AS(auto_precision(obj, feasible_interval(obj, 1), 8), OverflowError);
    }
}

TEST_CASE("weight-restricted interval uses at most C(k,d) terms per degree") {
    PolyObjective obj;
    obj.n = 4;
    obj.terms[{0}] = 5;
    obj.terms[{1}] = 4;
    obj.terms[{2}] = 3;
    obj.terms[{3}] = -2;
    const auto interval = feasible_interval(obj, 2);
    CHECK(interval.hi == 9);  // two largest positives
    CHECK(interval.lo == -2);
    // exact check by enumeration
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    bits::for_each_weight_k(4, 2, [&](std::uint64_t x) {
        const std::int64_t v = obj.eval_scaled(x);
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
    });
    CHECK(interval.lo <= lo);
    CHECK(interval.hi >= hi);
}

TEST_CASE("value encoder writes the two's-complement difference") {
    SUBCASE("identity objective on one variable") {
        PolyObjective obj;
        obj.n = 1;
        obj.terms[{0}] = 1;
        const OracleConfig cfg{3, 0};
        const Circuit enc = build_value_encoder(obj, cfg).circuit;
        Statevector s1 = Statevector::basis(4, 1);
        qsim::apply_circuit(s1, enc);
        CHECK(s1.probability(packed(1, 1, 1)) > 1.0 - 1e-9);
        Statevector s0 = Statevector::basis(4, 0);
        qsim::apply_circuit(s0, enc);
        CHECK(s0.probability(packed(0, 0, 1)) > 1.0 - 1e-9);
    }
    SUBCASE("negative offsets wrap") {
        PolyObjective obj;
        obj.n = 1;
        obj.constant = -3;
        const OracleConfig cfg{4, 0};
        const Circuit enc = build_value_encoder(obj, cfg).circuit;
        Statevector s = Statevector::basis(5, 0);
        qsim::apply_circuit(s, enc);
        CHECK(s.probability(packed(0, twos_complement(-3, 4), 1)) > 1.0 - 1e-9);  // 1101
        CHECK(twos_complement(-3, 4) == 0b1101);
    }
    SUBCASE("random quadratic, all inputs, classical evaluation as the oracle") {
        Rng rng(91);
        PolyObjective obj = random_integer_quadratic(4, rng);
        const auto interval = feasible_interval(obj, 4);
        const int m = 6;
        const std::int64_t y = interval.lo;  // keeps every difference in range
        const Circuit enc = build_value_encoder(obj, {m, y}).circuit;
        for (std::uint64_t x = 0; x < 16; ++x) {
            Statevector s = Statevector::basis(4 + m, x);
            qsim::apply_circuit(s, enc);
            const std::uint64_t expect = packed(x, twos_complement(obj.eval_scaled(x) - y, m), 4);
            CHECK(s.probability(expect) > 1.0 - 1e-9);
        }
    }
}

TEST_CASE("phase ladder amplitudes before the inverse QFT") {
    PolyObjective obj;
    obj.n = 2;
    obj.terms[{0}] = 2;
    obj.terms[{0, 1}] = -1;
    obj.constant = 1;
    const int m = 3;
    const std::int64_t y = -1;
    const Circuit ladder = build_phase_ladder(obj, {m, y}).circuit;
    for (std::uint64_t x = 0; x < 4; ++x) {
        Statevector s = Statevector::basis(2 + m, x);
        qsim::apply_circuit(s, ladder);
        const double root = 1.0 / std::sqrt(8.0);
        const std::int64_t diff = obj.eval_scaled(x) - y;
        for (std::uint64_t k = 0; k < 8; ++k) {
            const Complex expect =
                std::polar(root, 2.0 * std::numbers::pi * static_cast<double>(k) *
                                     static_cast<double>(diff) / 8.0);
            CHECK(std::abs(s.amps()[packed(x, k, 2)] - expect) < 1e-9);
        }
    }
}

TEST_CASE("sign oracle phases match the classical sign and restore the ancilla") {
    Rng rng(17);
    const int n = 4, k = 2, m = 7;
    PolyObjective obj = random_integer_quadratic(n, rng);
    const auto interval = feasible_interval(obj, n);

    SUBCASE("threshold below every value leaves the subspace untouched") {
        const Circuit oracle = build_sign_oracle(obj, {m, interval.lo}).circuit;
        bits::for_each_weight_k(n, k, [&](std::uint64_t x) {
            Statevector s = Statevector::basis(n + m, x);
            qsim::apply_circuit(s, oracle);
            CHECK(std::abs(s.amps()[x] - Complex{1.0, 0.0}) < 1e-9);
        });
    }
    SUBCASE("threshold above every value flips the whole subspace") {
        const Circuit oracle = build_sign_oracle(obj, {m, interval.hi + 1}).circuit;
        bits::for_each_weight_k(n, k, [&](std::uint64_t x) {
            Statevector s = Statevector::basis(n + m, x);
            qsim::apply_circuit(s, oracle);
            CHECK(std::abs(s.amps()[x] - Complex{-1.0, 0.0}) < 1e-9);
        });
    }
    SUBCASE("interior threshold reproduces sgn(f(x)-y) on the feasible set") {
        const std::int64_t y = (interval.lo + interval.hi) / 2;
        const Circuit oracle = build_sign_oracle(obj, {m, y}).circuit;
        bits::for_each_weight_k(n, k, [&](std::uint64_t x) {
            Statevector s = Statevector::basis(n + m, x);
            qsim::apply_circuit(s, oracle);
            const double sign = obj.eval_scaled(x) - y < 0 ? -1.0 : 1.0;
            CHECK(std::abs(s.amps()[x] - Complex{sign, 0.0}) < 1e-9);
            // ancilla back to |0^m>: no mass anywhere else
            double stray = 0.0;
            for (std::uint64_t i = 0; i < s.dim(); ++i)
                if (i != x) stray += s.probability(i);
            CHECK(stray < 1e-9);
        });
    }
}

TEST_CASE("range violations are caught at build time") {
    PolyObjective obj;
    obj.n = 2;
    obj.terms[{0}] = 5;
    obj.terms[{1}] = 5;
    const auto interval = feasible_interval(obj, 2);
    CHECK_THROWS_AS(check_range(obj, interval, OracleConfig{3, 0}), RangeViolation);
    CHECK_NOTHROW(check_range(obj, interval, OracleConfig{5, 0}));
}

TEST_CASE("ladder rotation counts follow the dense closed form") {
    Rng rng(5);
    SUBCASE("dense quadratic") {
        const int n = 5, m = 4;
        PolyObjective obj;
        obj.n = n;
        for (int i = 0; i < n; ++i) {
            obj.terms[{i}] = 1 + static_cast<std::int64_t>(rng.next_below(3));
            for (int j = i + 1; j < n; ++j)
                obj.terms[{i, j}] = 1 + static_cast<std::int64_t>(rng.next_below(3));
        }
        const auto build = build_phase_ladder(obj, {m, 0});
        CHECK(build.controlled_rotation_counts.at(1) == m * n);
        CHECK(build.controlled_rotation_counts.at(2) == m * (n * (n - 1) / 2));
        // the emitted circuit agrees with the recorded counts
        const auto from_circuit = qsim::controlled_rotation_counts(build.circuit);
        CHECK(from_circuit.at(1) == m * n);
        CHECK(from_circuit.at(2) == m * (n * (n - 1) / 2));
    }
    SUBCASE("dense quartic") {
        const int n = 5, m = 3;
        PolyObjective obj;
        obj.n = n;
        for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
            if (bits::popcount(mask) > 4) continue;
            std::vector<int> indices;
            for (int i = 0; i < n; ++i)
                if (bits::test(mask, i)) indices.push_back(i);
            obj.terms[indices] = 1;
        }
        const auto build = build_phase_ladder(obj, {m, 0});
        CHECK(build.controlled_rotation_counts.at(1) == m * 5);
        CHECK(build.controlled_rotation_counts.at(2) == m * 10);
        CHECK(build.controlled_rotation_counts.at(3) == m * 10);
        CHECK(build.controlled_rotation_counts.at(4) == m * 5);
    }
}

TEST_CASE("register rescaling keeps the ancilla width inside the cap") {
    RealPolyBuilder builder(4);
    for (int i = 0; i < 4; ++i) builder.add_term({i}, 1234.56789 * (i + 1));
    const PolyObjective obj = quantize_for_register(builder, 2, 16);
    const auto interval = feasible_interval(obj, 2);
    CHECK(auto_precision(obj, interval, 16) <= 16);
    CHECK(obj.scale_power < 16);
}
