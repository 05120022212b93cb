#pragma once

#include <cstdint>
#include <vector>

namespace fantomlab {

// Exact counts of ordered pairs from two sets of odd integers in [1, length]
// (length even), keyed by the even representative of the sum mod length in
// (0, length]: result[k-1] = #{(a, b) in A x B : a + b == 2k (mod length)}.
//
// Computed as a cyclic convolution of half-index indicators with an NTT mod
// 167772161 = 5 * 2^25 + 1. Every convolution coefficient is bounded by the
// set sizes, which the capacity check keeps far below the modulus, so the
// modular result equals the exact integer count.
std::vector<std::uint64_t> pair_counts(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       std::uint64_t length);

std::vector<std::uint64_t> self_pair_counts(const std::vector<std::uint64_t>& a,
                                            std::uint64_t length);

}  // namespace fantomlab
