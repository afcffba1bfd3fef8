#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qcardopt/errors.hpp"

namespace qcardopt {

// mt19937_64 with hand-rolled distributions so that a fixed seed produces the
// same stream on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform over {0, ..., bound-1} via masked rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw InvalidCounts("next_below: bound must be positive");
        if (bound == 1) return 0;
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            std::uint64_t v = gen_() & mask;
            if (v < bound) return v;
        }
    }

    // Standard normal via Box-Muller (pair cached).
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qcardopt
