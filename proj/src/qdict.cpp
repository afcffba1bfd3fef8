#include "qcardopt/qdict.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcardopt/bits.hpp"

namespace qcardopt::qdict {

namespace {

constexpr double kGridTolerance = 1e-9;
constexpr std::int64_t kCoeffCap = std::int64_t{1} << 40;

std::int64_t checked_round(double value, const char* what) {
    const double r = std::round(value);
    if (!(std::abs(r) < static_cast<double>(kCoeffCap)))
        throw OverflowError(std::string(what) + " exceeds the integer coefficient range");
    return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t PolyObjective::eval_scaled(std::uint64_t x) const {
    std::int64_t acc = constant;
    for (const auto& [indices, coeff] : terms) {
        bool active = true;
        for (int i : indices)
            if (!bits::test(x, i)) {
                active = false;
                break;
            }
        if (active) acc += coeff;
    }
    return acc;
}

double PolyObjective::scale() const { return std::ldexp(1.0, -scale_power); }

int PolyObjective::degree() const {
    std::size_t d = 0;
    for (const auto& [indices, coeff] : terms) d = std::max(d, indices.size());
    return static_cast<int>(d);
}

void PolyObjective::validate() const {
    if (n < 1) throw ValidationError("objective needs at least one variable");
    if (scale_power < 0) throw ValidationError("scale power must be non-negative");
    for (const auto& [indices, coeff] : terms) {
        (void)coeff;
        if (indices.empty() || indices.size() > 4)
            throw UnsupportedDegree("terms must have degree 1..4");
        int prev = -1;
        for (int i : indices) {
            if (i < 0 || i >= n) throw IndexOutOfRange("term index outside variable range");
            if (i <= prev) throw ValidationError("term indices must be strictly increasing");
            prev = i;
        }
    }
}

void RealPolyBuilder::add_term(std::vector<int> indices, double coeff) {
    for (int i : indices)
        if (i < 0 || i >= n_) throw IndexOutOfRange("term index outside variable range");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.empty()) {
        constant_ += coeff;
        return;
    }
    if (indices.size() > 4) throw UnsupportedDegree("multilinear degree above 4 is not supported");
    terms_[indices] += coeff;
}

int RealPolyBuilder::preferred_scale_power(int max_scale_power) const {
    auto fits = [&](int p) {
        const double s = std::ldexp(1.0, p);
        auto on_grid = [&](double c) { return std::abs(c * s - std::round(c * s)) < kGridTolerance; };
        if (!on_grid(constant_)) return false;
        for (const auto& [indices, coeff] : terms_) {
            (void)indices;
            if (!on_grid(coeff)) return false;
        }
        return true;
    };
    for (int p = 0; p < max_scale_power; ++p)
        if (fits(p)) return p;
    return max_scale_power;
}

PolyObjective RealPolyBuilder::quantize(int scale_power) const {
    PolyObjective obj;
    obj.n = n_;
    obj.scale_power = scale_power;
    const double s = std::ldexp(1.0, scale_power);
    obj.constant = checked_round(constant_ * s, "constant");
    for (const auto& [indices, coeff] : terms_) {
        const std::int64_t q = checked_round(coeff * s, "coefficient");
        if (q != 0) obj.terms[indices] = q;
    }
    obj.validate();
    return obj;
}

PolyObjective RealPolyBuilder::quantize_auto(int max_scale_power) const {
    return quantize(preferred_scale_power(max_scale_power));
}

ValueInterval feasible_interval(const PolyObjective& obj, int k) {
    if (k < 0 || k > obj.n) throw CardinalityOutOfRange("feasible_interval: need 0 <= k <= n");
    std::vector<std::vector<std::int64_t>> by_degree(5);
    for (const auto& [indices, coeff] : obj.terms) by_degree[indices.size()].push_back(coeff);
    ValueInterval out{obj.constant, obj.constant};
    for (int d = 1; d <= 4; ++d) {
        auto& coeffs = by_degree[static_cast<std::size_t>(d)];
        if (coeffs.empty() || d > k) continue;
        const std::uint64_t cap64 = bits::binomial(k, d);
        const std::size_t cap = static_cast<std::size_t>(std::min<std::uint64_t>(cap64, coeffs.size()));
        std::sort(coeffs.begin(), coeffs.end());
        for (std::size_t i = 0; i < cap; ++i) {
            const std::int64_t low = coeffs[i];
            const std::int64_t high = coeffs[coeffs.size() - 1 - i];
            if (low < 0) out.lo += low;
            if (high > 0) out.hi += high;
        }
    }
    return out;
}

int auto_precision(const PolyObjective& obj, const ValueInterval& feasible, int m_max) {
    obj.validate();
    if (feasible.hi < feasible.lo) throw ValidationError("empty feasible interval");
    const std::int64_t span = feasible.hi - feasible.lo;
    int m = 1;
    while ((std::int64_t{1} << (m - 1)) <= span) {
        ++m;
        if (m > m_max)
            throw OverflowError("value register would need " + std::to_string(m) +
                                " qubits, cap is " + std::to_string(m_max));
    }
    return m;
}

void check_range(const PolyObjective& obj, const ValueInterval& feasible, const OracleConfig& cfg) {
    if (cfg.m < 1) throw ValidationError("oracle needs at least one ancilla qubit");
    const std::int64_t half = std::int64_t{1} << (cfg.m - 1);
    if (feasible.lo - cfg.y < -half || feasible.hi - cfg.y >= half)
        throw RangeViolation("f(x)-y can leave the two's-complement window [-2^{m-1}, 2^{m-1})");
    (void)obj;
}

namespace {

// Phase angle of R(2^j * theta_c) with theta_c = 2*pi*c/2^m, reduced exactly
// modulo 2^m in integer arithmetic before going to floating point.
double ladder_angle(std::int64_t coeff, int j, int m) {
    const std::int64_t modulus = std::int64_t{1} << m;
    std::int64_t r = coeff % modulus;
    if (r < 0) r += modulus;
    r = (r << j) % modulus;
    return 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(modulus);
}

}  // namespace

EncoderBuild build_phase_ladder(const PolyObjective& obj, const OracleConfig& cfg) {
    obj.validate();
    if (cfg.m < 1) throw ValidationError("oracle needs at least one ancilla qubit");
    if (obj.n + cfg.m > qsim::kMaxQubits)
        throw TooLarge("oracle register " + std::to_string(obj.n + cfg.m) + " qubits exceeds cap");

    EncoderBuild build;
    build.circuit = qsim::Circuit(obj.n + cfg.m);
    auto ancilla = [&](int j) { return obj.n + j; };

    for (int j = 0; j < cfg.m; ++j) build.circuit.append(qsim::GateOp::hadamard(ancilla(j)));

    // Constant and -y folded into uncontrolled rotations.
    const std::int64_t offset = obj.constant - cfg.y;
    for (int j = 0; j < cfg.m; ++j)
        build.circuit.append(qsim::GateOp::phase_rot(ladder_angle(offset, j, cfg.m), ancilla(j)));

    for (const auto& [indices, coeff] : obj.terms) {
        for (int j = 0; j < cfg.m; ++j) {
            build.circuit.append(qsim::GateOp::controlled_phase_rot(
                ladder_angle(coeff, j, cfg.m), indices, ancilla(j)));
        }
        build.controlled_rotation_counts[static_cast<int>(indices.size())] += cfg.m;
    }
    return build;
}

EncoderBuild build_value_encoder(const PolyObjective& obj, const OracleConfig& cfg) {
    EncoderBuild build = build_phase_ladder(obj, cfg);
    std::vector<int> reg;
    for (int j = 0; j < cfg.m; ++j) reg.push_back(obj.n + j);
    build.circuit.append(qsim::forward_qft_circuit(build.circuit.n_qubits, reg).adjoint());
    return build;
}

EncoderBuild build_sign_oracle(const PolyObjective& obj, const OracleConfig& cfg) {
    EncoderBuild encoder = build_value_encoder(obj, cfg);
    EncoderBuild build;
    build.controlled_rotation_counts = encoder.controlled_rotation_counts;
    build.circuit = qsim::Circuit(obj.n + cfg.m);
    build.circuit.append(encoder.circuit);
    build.circuit.append(qsim::GateOp::pauli_z(obj.n + cfg.m - 1));
    build.circuit.append(encoder.circuit.adjoint());
    return build;
}

PolyObjective quantize_for_register(const RealPolyBuilder& builder, int k, int m_max,
                                    int max_scale_power) {
    int p = builder.preferred_scale_power(max_scale_power);
    for (; p >= 0; --p) {
        PolyObjective obj = builder.quantize(p);
        try {
            (void)auto_precision(obj, feasible_interval(obj, k), m_max);
            return obj;
        } catch (const OverflowError&) {
            if (p == 0) throw;
        }
    }
    throw OverflowError("objective cannot fit the value register at any scale");
}

}  // namespace qcardopt::qdict
