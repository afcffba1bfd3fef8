#pragma once

#include <cstdint>
#include <vector>

#include "qcardopt/qsim.hpp"

namespace qcardopt::dicke {

// Preparation unitary for the uniform superposition over all Hamming-weight-k
// basis states, assembled from split-and-cyclic-shift blocks.
struct DickePlan {
    int n = 0;
    int k = 0;
    qsim::Circuit ops;        // maps the seed state |1...1 (k low bits)> to the weight-k superposition
    std::vector<int> layout;  // target register, qubits 0..n-1
    std::int64_t two_qubit_blocks = 0;
    std::int64_t three_qubit_blocks = 0;

    std::int64_t block_count() const { return two_qubit_blocks + three_qubit_blocks; }
};

// Split-and-cyclic-shift unitary on j+1 qubits. Local convention: circuit
// qubit c corresponds to ket position j+1-c, so the ket |q_1 ... q_{j+1}>
// maps to basis index sum q_p * 2^{j+1-p}. For every l in 1..j it splits
// the block of l trailing ones:
//   |0^{j+1-l} 1^l>  ->  sqrt(l/i) |0^{j+1-l} 1^l> + sqrt((i-l)/i) |0^{j-l} 1^l 0>
// and fixes the all-zero and all-one kets.
qsim::Circuit build_scs(int i, int j);

DickePlan build_dicke_unitary(int n, int k);

// X gates on the k low qubits followed by the Dicke circuit; maps |0^n> to
// the weight-k superposition.
qsim::Circuit build_state_prep(int n, int k);

// Reflection about the weight-k superposition, up to a global phase:
// U (X on the n-k "zero" positions) multi-controlled-Z (X again) U^dagger.
qsim::Circuit build_constrained_diffusion(int n, int k);

qsim::Statevector prepare_constrained_superposition(int n, int k);

// Closed-form block counts implied by the product structure.
std::int64_t expected_two_qubit_blocks(int n, int k);
std::int64_t expected_three_qubit_blocks(int n, int k);

}  // namespace qcardopt::dicke
