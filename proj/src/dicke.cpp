#include "qcardopt/dicke.hpp"

#include <cmath>
#include <numeric>

namespace qcardopt::dicke {

namespace {

void check_nk(int n, int k) {
    if (n < 1 || n > qsim::kMaxQubits)
        throw CardinalityOutOfRange("register size outside 1.." + std::to_string(qsim::kMaxQubits));
    if (k < 0 || k > n) throw CardinalityOutOfRange("cardinality must satisfy 0 <= k <= n");
}

}  // namespace

qsim::Circuit build_scs(int i, int j) {
    if (i < 2 || j < 1 || j > i - 1) throw InvalidIndices("SCS indices need i >= 2, 1 <= j <= i-1");
    qsim::Circuit c(j + 1);
    // Block for the single trailing one: ket positions (j, j+1) = local qubits (1, 0).
    c.append(qsim::GateOp::scs2(2.0 * std::acos(std::sqrt(1.0 / i)), 1, 0));
    // Blocks for t trailing ones: ket positions (j+1-t, j+2-t, j+1) = local (t, t-1, 0).
    for (int t = 2; t <= j; ++t)
        c.append(qsim::GateOp::scs3(2.0 * std::acos(std::sqrt(static_cast<double>(t) / i)), t, t - 1, 0));
    return c;
}

std::int64_t expected_two_qubit_blocks(int n, int k) {
    if (k == 0 || k == n) return 0;
    return n - 1;  // one per SCS unit
}

std::int64_t expected_three_qubit_blocks(int n, int k) {
    if (k == 0 || k == n) return 0;
    // (n-k) units with j=k contribute k-1 each; units with j = 1..k-1 contribute j-1.
    return static_cast<std::int64_t>(n - k) * (k - 1) +
           static_cast<std::int64_t>(k - 1) * (k - 2) / 2;
}

DickePlan build_dicke_unitary(int n, int k) {
    check_nk(n, k);
    DickePlan plan;
    plan.n = n;
    plan.k = k;
    plan.ops = qsim::Circuit(n);
    plan.layout.resize(static_cast<std::size_t>(n));
    std::iota(plan.layout.begin(), plan.layout.end(), 0);
    if (k == 0 || k == n) return plan;  // single feasible seed state, nothing to spread

    // The product is applied right factor first: SCS_{l,k} for l = n..k+1 on
    // ket positions l-k..l, then SCS_{l,l-1} for l = k..2 on positions 1..l.
    // Ket position p sits on qubit n-p, so a block over positions ending at l
    // lands at qubit offset n-l.
    auto embed = [&](int i, int j, int l) {
        qsim::Circuit block = build_scs(i, j);
        plan.ops.append_shifted(block, n - l);
        plan.two_qubit_blocks += 1;
        plan.three_qubit_blocks += j - 1;
    };
    for (int l = n; l >= k + 1; --l) embed(l, k, l);
    for (int l = k; l >= 2; --l) embed(l, l - 1, l);
    return plan;
}

qsim::Circuit build_state_prep(int n, int k) {
    check_nk(n, k);
    qsim::Circuit c(n);
    for (int q = 0; q < k; ++q) c.append(qsim::GateOp::pauli_x(q));
    c.append(build_dicke_unitary(n, k).ops);
    return c;
}

qsim::Circuit build_constrained_diffusion(int n, int k) {
    check_nk(n, k);
    const qsim::Circuit unitary = build_dicke_unitary(n, k).ops;
    qsim::Circuit c(n);
    c.append(unitary.adjoint());
    for (int q = k; q < n; ++q) c.append(qsim::GateOp::pauli_x(q));
    std::vector<int> controls;
    for (int q = 1; q < n; ++q) controls.push_back(q);
    c.append(qsim::GateOp::multi_controlled_z(std::move(controls), 0));
    for (int q = k; q < n; ++q) c.append(qsim::GateOp::pauli_x(q));
    c.append(unitary);
    return c;
}

qsim::Statevector prepare_constrained_superposition(int n, int k) {
    qsim::Statevector state(n);
    qsim::apply_circuit(state, build_state_prep(n, k));
    return state;
}

}  // namespace qcardopt::dicke
