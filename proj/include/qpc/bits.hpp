#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qpc {

using Bit = std::uint8_t;

// A length-N vector over F_2, one symbol per entry. N must be a power of two
// wherever the polar transform is involved.
using BitBlock = std::vector<Bit>;

constexpr bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

// In-place butterfly computing u <- u * F^{otimes n}, F = [[1,0],[1,1]].
// The transform is its own inverse over F_2. Throws std::invalid_argument if
// the length is not a power of two.
void polar_transform_inplace(BitBlock& u);

BitBlock polar_transform(BitBlock u);

int weight(const BitBlock& v);

BitBlock xor_blocks(const BitBlock& a, const BitBlock& b);

}  // namespace qpc
