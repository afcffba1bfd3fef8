#include "qcardopt/bits.hpp"

namespace qcardopt::bits {

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw InvalidCounts("binomial: need 0 <= k <= n");
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > (static_cast<unsigned __int128>(1) << 62))
            throw OverflowError("binomial coefficient too large");
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace qcardopt::bits
