#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qcardopt/qsim.hpp"

namespace qcardopt::qdict {

// Multilinear objective of degree <= 4 with integer coefficients on a fixed
// power-of-two grid: value(x) = (constant + sum_S coeff_S * prod_{i in S} x_i) / 2^scale_power.
struct PolyObjective {
    int n = 0;
    int scale_power = 0;
    std::int64_t constant = 0;
    std::map<std::vector<int>, std::int64_t> terms;  // keys: sorted 0-based index sets

    std::int64_t eval_scaled(std::uint64_t x) const;
    double eval(std::uint64_t x) const { return static_cast<double>(eval_scaled(x)) * scale(); }
    double scale() const;  // 2^-scale_power
    int degree() const;
    void validate() const;
};

// Accumulates real multilinear terms (folding repeated indices) before
// quantizing onto the 2^p grid.
class RealPolyBuilder {
public:
    explicit RealPolyBuilder(int n) : n_(n) {}

    void add_constant(double c) { constant_ += c; }
    // indices may contain repeats; they fold away on binaries.
    void add_term(std::vector<int> indices, double coeff);

    int n() const { return n_; }
    double constant() const { return constant_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    // Smallest p with every coefficient within 1e-9 of the 2^-p grid, capped.
    int preferred_scale_power(int max_scale_power = 16) const;
    PolyObjective quantize(int scale_power) const;
    PolyObjective quantize_auto(int max_scale_power = 16) const;

private:
    int n_;
    double constant_ = 0.0;
    std::map<std::vector<int>, double> terms_;
};

struct ValueInterval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

// Interval bound on the objective over weight-k strings: at most C(k,d)
// degree-d terms can be active, so the top/bottom C(k,d) coefficients of each
// degree bound the value. Pass k = n for the unconstrained cube.
ValueInterval feasible_interval(const PolyObjective& obj, int k);

struct OracleConfig {
    int m = 0;           // ancilla width
    std::int64_t y = 0;  // threshold, scaled units
};

// Smallest m whose two's-complement window [-2^{m-1}, 2^{m-1}) holds f(x)-y
// for every feasible value and every threshold inside the feasible range.
int auto_precision(const PolyObjective& obj, const ValueInterval& feasible, int m_max);

void check_range(const PolyObjective& obj, const ValueInterval& feasible, const OracleConfig& cfg);

// Register layout of all built circuits: variables on qubits 0..n-1, ancilla
// bit j on qubit n+j, sign bit on qubit n+m-1.
struct EncoderBuild {
    qsim::Circuit circuit;
    // Controlled rotations of the encoding ladder, keyed by control count
    // (one encoding pass; Hadamards, the threshold ladder and the inverse QFT
    // are not included).
    std::map<int, std::int64_t> controlled_rotation_counts;
};

// Hadamards on the ancilla plus the phase ladder; ancilla amplitude on |K>
// becomes 2^{-m/2} exp(2 pi i K (f(x)-y) / 2^m).
EncoderBuild build_phase_ladder(const PolyObjective& obj, const OracleConfig& cfg);

// Phase ladder followed by the inverse QFT: |x>|0^m> -> |x>|bin2c(f(x)-y)>.
EncoderBuild build_value_encoder(const PolyObjective& obj, const OracleConfig& cfg);

// Encoder, Pauli-Z on the sign bit, un-encoder: |x> -> -|x> iff f(x)-y < 0,
// ancilla restored to |0^m>.
EncoderBuild build_sign_oracle(const PolyObjective& obj, const OracleConfig& cfg);

// Rescale so that auto_precision fits within m_max (lowers the scale power
// below the preferred one if the coefficient magnitudes demand it).
PolyObjective quantize_for_register(const RealPolyBuilder& builder, int k, int m_max,
                                    int max_scale_power = 16);

}  // namespace qcardopt::qdict
