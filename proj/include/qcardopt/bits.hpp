#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qcardopt/errors.hpp"
#include "qcardopt/rng.hpp"

namespace qcardopt::bits {

// Convention used throughout: variable x_i (1-based in the math) lives on bit
// i-1 of the mask, which is also simulator qubit i-1.

inline int popcount(std::uint64_t x) { return std::popcount(x); }

inline bool test(std::uint64_t x, int i) { return (x >> i) & 1ULL; }

std::uint64_t binomial(int n, int k);

// Next mask with the same popcount (Gosper's hack). Undefined for v == 0.
inline std::uint64_t next_same_weight(std::uint64_t v) {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

template <typename F>
void for_each_weight_k(int n, int k, F&& f) {
    if (k < 0 || k > n) throw CardinalityOutOfRange("for_each_weight_k: need 0 <= k <= n");
    if (k == 0) {
        f(std::uint64_t{0});
        return;
    }
    const std::uint64_t limit = 1ULL << n;
    std::uint64_t v = (1ULL << k) - 1;
    while (v < limit) {
        f(v);
        std::uint64_t next = next_same_weight(v);
        if (next <= v) break;
        v = next;
    }
}

// Lexicographic order on the tuple (x_1, ..., x_n).
inline bool lex_less(std::uint64_t a, std::uint64_t b, int n) {
    for (int i = 0; i < n; ++i) {
        bool ai = test(a, i), bi = test(b, i);
        if (ai != bi) return bi;  // a has the 0 first
    }
    return false;
}

// "x1x2...xn" rendering, bit 0 first.
inline std::string to_bit_string(std::uint64_t x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (test(x, i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

// Uniform random mask of Hamming weight k (partial Fisher-Yates on positions).
inline std::uint64_t random_weight_k(int n, int k, Rng& rng) {
    if (k < 0 || k > n) throw CardinalityOutOfRange("random_weight_k: need 0 <= k <= n");
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(i)] = i;
    std::uint64_t mask = 0;
    for (int i = 0; i < k; ++i) {
        std::uint64_t j = i + rng.next_below(static_cast<std::uint64_t>(n - i));
        std::swap(pos[static_cast<std::size_t>(i)], pos[j]);
        mask |= 1ULL << pos[static_cast<std::size_t>(i)];
    }
    return mask;
}

}  // namespace qcardopt::bits
