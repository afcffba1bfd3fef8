#include "qcardopt/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcardopt/bits.hpp"

namespace qcardopt::qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit_count(int n) {
    if (n < 1) throw ValidationError("statevector needs at least one qubit");
    if (n > kMaxQubits)
        throw TooLarge("statevector capped at " + std::to_string(kMaxQubits) + " qubits, got " +
                       std::to_string(n));
}

void check_qubit(int q, int n) {
    if (q < 0 || q >= n)
        throw IndexOutOfRange("qubit index " + std::to_string(q) + " outside register of " +
                              std::to_string(n));
}

// Visits every basis index whose bits in `mask` are all 1, by enumerating the
// submasks of the complement in increasing order.
template <typename F>
inline void for_each_index_with(std::uint64_t dim, std::uint64_t mask, F&& f) {
    const std::uint64_t free = (dim - 1) & ~mask;
    std::uint64_t s = 0;
    do {
        f(s | mask);
        s = (s - free) & free;
    } while (s != 0);
}

std::uint64_t gate_mask(const std::vector<int>& qubits) {
    std::uint64_t m = 0;
    for (int q : qubits) m |= 1ULL << q;
    return m;
}

void validate_op(const GateOp& op, int n) {
    std::size_t want_targets = 1;
    if (op.kind == GateKind::TwoQubitSCSBlock) want_targets = 2;
    if (op.kind == GateKind::ThreeQubitSCSBlock) want_targets = 3;
    if (op.targets.size() != want_targets)
        throw InvalidIndices("gate has wrong target arity");
    bool controls_allowed =
        op.kind == GateKind::ControlledPhaseRot || op.kind == GateKind::MultiControlledZ;
    if (!controls_allowed && !op.controls.empty())
        throw InvalidIndices("gate kind does not take controls");
    std::uint64_t seen = 0;
    for (int q : op.targets) {
        check_qubit(q, n);
        if (seen & (1ULL << q)) throw InvalidIndices("duplicate target qubit");
        seen |= 1ULL << q;
    }
    for (int q : op.controls) {
        check_qubit(q, n);
        if (seen & (1ULL << q))
            throw ControlTargetOverlap("control qubit " + std::to_string(q) +
                                       " overlaps a target");
        seen |= 1ULL << q;
    }
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.dim()) throw IndexOutOfRange("basis index outside state space");
    s.amps_[0] = Complex{0.0, 0.0};
    s.amps_[index] = Complex{1.0, 0.0};
    return s;
}

double Statevector::norm_sq() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

double Statevector::probability(std::uint64_t index) const {
    if (index >= dim()) throw IndexOutOfRange("basis index outside state space");
    return std::norm(amps_[index]);
}

GateOp GateOp::adjoint() const {
    GateOp out = *this;
    switch (kind) {
        case GateKind::Hadamard:
        case GateKind::PauliX:
        case GateKind::PauliZ:
        case GateKind::MultiControlledZ:
            break;  // self-adjoint
        case GateKind::PhaseRot:
        case GateKind::ControlledPhaseRot:
        case GateKind::TwoQubitSCSBlock:
        case GateKind::ThreeQubitSCSBlock:
            out.angle = -angle;
            break;
    }
    return out;
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits > n_qubits)
        throw DimensionMismatch("appending circuit wider than the target circuit");
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

void Circuit::append_shifted(const Circuit& other, int offset) {
    if (offset < 0 || other.n_qubits + offset > n_qubits)
        throw DimensionMismatch("shifted circuit does not fit the register");
    for (GateOp op : other.ops) {
        for (int& q : op.targets) q += offset;
        for (int& q : op.controls) q += offset;
        ops.push_back(std::move(op));
    }
}

void Circuit::append_swap(int a, int b) {
    auto cnot = [this](int control, int target) {
        append(GateOp::hadamard(target));
        append(GateOp::controlled_phase_rot(std::numbers::pi, {control}, target));
        append(GateOp::hadamard(target));
    };
    cnot(a, b);
    cnot(b, a);
    cnot(a, b);
}

Circuit Circuit::adjoint() const {
    Circuit out(n_qubits);
    out.ops.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.ops.push_back(it->adjoint());
    return out;
}

void apply(Statevector& state, const GateOp& op) {
    const int n = state.n_qubits();
    validate_op(op, n);
    auto& amps = state.amps();
    const std::uint64_t dim = state.dim();

    switch (op.kind) {
        case GateKind::Hadamard: {
            const std::uint64_t bit = 1ULL << op.targets[0];
            for (std::uint64_t base = 0; base < dim; base += (bit << 1)) {
                for (std::uint64_t i = base; i < base + bit; ++i) {
                    const Complex a = amps[i];
                    const Complex b = amps[i | bit];
                    amps[i] = (a + b) * kInvSqrt2;
                    amps[i | bit] = (a - b) * kInvSqrt2;
                }
            }
            break;
        }
        case GateKind::PauliX: {
            const std::uint64_t bit = 1ULL << op.targets[0];
            for (std::uint64_t base = 0; base < dim; base += (bit << 1))
                for (std::uint64_t i = base; i < base + bit; ++i)
                    std::swap(amps[i], amps[i | bit]);
            break;
        }
        case GateKind::PauliZ: {
            for_each_index_with(dim, 1ULL << op.targets[0], [&](std::uint64_t i) { amps[i] = -amps[i]; });
            break;
        }
        case GateKind::PhaseRot:
        case GateKind::ControlledPhaseRot: {
            const Complex phase = std::polar(1.0, op.angle);
            const std::uint64_t mask = gate_mask(op.targets) | gate_mask(op.controls);
            for_each_index_with(dim, mask, [&](std::uint64_t i) { amps[i] *= phase; });
            break;
        }
        case GateKind::MultiControlledZ: {
            const std::uint64_t mask = gate_mask(op.targets) | gate_mask(op.controls);
            for_each_index_with(dim, mask, [&](std::uint64_t i) { amps[i] = -amps[i]; });
            break;
        }
        case GateKind::TwoQubitSCSBlock: {
            const double c = std::cos(op.angle / 2.0);
            const double s = std::sin(op.angle / 2.0);
            const std::uint64_t left = 1ULL << op.targets[0];
            const std::uint64_t right = 1ULL << op.targets[1];
            const std::uint64_t free = (dim - 1) & ~(left | right);
            std::uint64_t sub = 0;
            do {
                const std::uint64_t i01 = sub | right;  // |0>|1>
                const std::uint64_t i10 = sub | left;   // |1>|0>
                const Complex a = amps[i01];
                const Complex b = amps[i10];
                amps[i01] = c * a - s * b;
                amps[i10] = s * a + c * b;
                sub = (sub - free) & free;
            } while (sub != 0);
            break;
        }
        case GateKind::ThreeQubitSCSBlock: {
            const double c = std::cos(op.angle / 2.0);
            const double s = std::sin(op.angle / 2.0);
            const std::uint64_t left = 1ULL << op.targets[0];
            const std::uint64_t mid = 1ULL << op.targets[1];
            const std::uint64_t right = 1ULL << op.targets[2];
            const std::uint64_t free = (dim - 1) & ~(left | mid | right);
            std::uint64_t sub = 0;
            do {
                const std::uint64_t i011 = sub | mid | right;  // |0>|1>|1>
                const std::uint64_t i110 = sub | left | mid;   // |1>|1>|0>
                const Complex a = amps[i011];
                const Complex b = amps[i110];
                amps[i011] = c * a - s * b;
                amps[i110] = s * a + c * b;
                sub = (sub - free) & free;
            } while (sub != 0);
            break;
        }
    }
}

void apply_circuit(Statevector& state, const Circuit& circuit) {
    if (circuit.n_qubits > state.n_qubits())
        throw DimensionMismatch("circuit wider than the state");
    for (const auto& op : circuit.ops) apply(state, op);
}

Circuit forward_qft_circuit(int n_qubits, const std::vector<int>& reg) {
    std::uint64_t seen = 0;
    for (int q : reg) {
        check_qubit(q, n_qubits);
        if (seen & (1ULL << q)) throw InvalidIndices("QFT register has duplicate qubits");
        seen |= 1ULL << q;
    }
    const int m = static_cast<int>(reg.size());
    Circuit c(n_qubits);
    for (int i = m - 1; i >= 0; --i) {
        c.append(GateOp::hadamard(reg[static_cast<std::size_t>(i)]));
        for (int j = i - 1; j >= 0; --j) {
            const double angle = std::numbers::pi / static_cast<double>(1ULL << (i - j));
            c.append(GateOp::controlled_phase_rot(angle, {reg[static_cast<std::size_t>(j)]},
                                                  reg[static_cast<std::size_t>(i)]));
        }
    }
    for (int i = 0; i < m / 2; ++i)
        c.append_swap(reg[static_cast<std::size_t>(i)], reg[static_cast<std::size_t>(m - 1 - i)]);
    return c;
}

void forward_qft(Statevector& state, const std::vector<int>& reg) {
    apply_circuit(state, forward_qft_circuit(state.n_qubits(), reg));
}

void inverse_qft(Statevector& state, const std::vector<int>& reg) {
    apply_circuit(state, forward_qft_circuit(state.n_qubits(), reg).adjoint());
}

std::uint64_t measure_register(const Statevector& state, const std::vector<int>& reg, Rng& rng) {
    for (int q : reg) check_qubit(q, state.n_qubits());
    const auto& amps = state.amps();
    const double u = rng.next_double();
    double acc = 0.0;
    std::uint64_t chosen = state.dim() - 1;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(amps[i]);
        if (u < acc) {
            chosen = i;
            break;
        }
    }
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < reg.size(); ++j)
        if (bits::test(chosen, reg[j])) out |= 1ULL << j;
    return out;
}

std::uint64_t measure_register(const Statevector& state, const std::vector<int>& reg,
                               std::uint64_t seed) {
    Rng rng(seed);
    return measure_register(state, reg, rng);
}

int circuit_depth(const Circuit& circuit) {
    std::vector<int> level(static_cast<std::size_t>(circuit.n_qubits), 0);
    int depth = 0;
    for (const auto& op : circuit.ops) {
        int start = 0;
        auto consider = [&](int q) { start = std::max(start, level[static_cast<std::size_t>(q)]); };
        for (int q : op.targets) consider(q);
        for (int q : op.controls) consider(q);
        const int finish = start + 1;
        for (int q : op.targets) level[static_cast<std::size_t>(q)] = finish;
        for (int q : op.controls) level[static_cast<std::size_t>(q)] = finish;
        depth = std::max(depth, finish);
    }
    return depth;
}

std::map<int, std::int64_t> controlled_rotation_counts(const Circuit& circuit) {
    std::map<int, std::int64_t> counts;
    for (const auto& op : circuit.ops)
        if (op.kind == GateKind::ControlledPhaseRot)
            counts[static_cast<int>(op.controls.size())] += 1;
    return counts;
}

}  // namespace qcardopt::qsim
