#include "qpc/bits.hpp"

#include <stdexcept>

namespace qpc {

void polar_transform_inplace(BitBlock& u) {
    const std::size_t n = u.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("polar_transform: length must be a power of two");
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t blk = 0; blk < n; blk += 2 * len)
            for (std::size_t j = blk; j < blk + len; ++j)
                u[j] ^= u[j + len];
}

BitBlock polar_transform(BitBlock u) {
    polar_transform_inplace(u);
    return u;
}

int weight(const BitBlock& v) {
    int w = 0;
    for (Bit b : v) w += b;
    return w;
}

BitBlock xor_blocks(const BitBlock& a, const BitBlock& b) {
    if (a.size() != b.size()) throw std::invalid_argument("xor_blocks: length mismatch");
    BitBlock out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace qpc
