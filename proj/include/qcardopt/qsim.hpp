#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qcardopt/errors.hpp"
#include "qcardopt/rng.hpp"

namespace qcardopt::qsim {

using Complex = std::complex<double>;

// Hard cap: 2^26 amplitudes is already 1 GiB of doubles.
inline constexpr int kMaxQubits = 26;

// Dense amplitude array over n qubits. Qubit 0 is the least-significant bit
// of basis-state indices.
class Statevector {
public:
    explicit Statevector(int n_qubits);
    static Statevector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return static_cast<std::uint64_t>(amps_.size()); }
    std::vector<Complex>& amps() { return amps_; }
    const std::vector<Complex>& amps() const { return amps_; }

    double norm_sq() const;
    double probability(std::uint64_t index) const;

private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

enum class GateKind {
    Hadamard,
    PauliX,
    PauliZ,
    PhaseRot,            // diag(1, e^{i*angle}) on one qubit
    ControlledPhaseRot,  // PhaseRot on target, conditioned on all controls being 1
    MultiControlledZ,    // phase flip when target and all controls are 1
    TwoQubitSCSBlock,    // rotation between |01> and |10>, angle is the full theta
    ThreeQubitSCSBlock,  // rotation between |011> and |110>
};

struct GateOp {
    GateKind kind{};
    std::vector<int> targets;
    std::vector<int> controls;
    double angle = 0.0;

    static GateOp hadamard(int q) { return {GateKind::Hadamard, {q}, {}, 0.0}; }
    static GateOp pauli_x(int q) { return {GateKind::PauliX, {q}, {}, 0.0}; }
    static GateOp pauli_z(int q) { return {GateKind::PauliZ, {q}, {}, 0.0}; }
    static GateOp phase_rot(double angle, int q) { return {GateKind::PhaseRot, {q}, {}, angle}; }
    static GateOp controlled_phase_rot(double angle, std::vector<int> controls, int target) {
        return {GateKind::ControlledPhaseRot, {target}, std::move(controls), angle};
    }
    static GateOp multi_controlled_z(std::vector<int> controls, int target) {
        return {GateKind::MultiControlledZ, {target}, std::move(controls), 0.0};
    }
    // SCS blocks act on listed qubits in ket order (leftmost first).
    static GateOp scs2(double theta, int left, int right) {
        return {GateKind::TwoQubitSCSBlock, {left, right}, {}, theta};
    }
    static GateOp scs3(double theta, int left, int mid, int right) {
        return {GateKind::ThreeQubitSCSBlock, {left, mid, right}, {}, theta};
    }

    GateOp adjoint() const;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    void append(GateOp op) { ops.push_back(std::move(op)); }
    void append(const Circuit& other);
    // Embeds a smaller circuit with all qubit indices shifted up by offset.
    void append_shifted(const Circuit& other, int offset);
    // SWAP as three CNOTs, each CNOT as H-CP(pi)-H on the target.
    void append_swap(int a, int b);

    Circuit adjoint() const;
    std::size_t size() const { return ops.size(); }
};

void apply(Statevector& state, const GateOp& op);
void apply_circuit(Statevector& state, const Circuit& circuit);

// QFT over reg, where reg[j] carries bit j of the register value:
// |v> -> 2^{-m/2} sum_K exp(2*pi*i*v*K / 2^m) |K>.
Circuit forward_qft_circuit(int n_qubits, const std::vector<int>& reg);
void forward_qft(Statevector& state, const std::vector<int>& reg);
void inverse_qft(Statevector& state, const std::vector<int>& reg);

// Born sampling of the register (bit j of the outcome comes from reg[j]).
// The state is not collapsed; callers re-prepare circuits from |0...0>.
std::uint64_t measure_register(const Statevector& state, const std::vector<int>& reg, Rng& rng);
std::uint64_t measure_register(const Statevector& state, const std::vector<int>& reg,
                               std::uint64_t seed);

// Longest chain of ops sharing a qubit.
int circuit_depth(const Circuit& circuit);

// ControlledPhaseRot ops bucketed by number of controls.
std::map<int, std::int64_t> controlled_rotation_counts(const Circuit& circuit);

}  // namespace qcardopt::qsim
