#include "fantomlab/convolution.hpp"

#include <stdexcept>
#include <utility>

#include "fantomlab/common.hpp"

namespace fantomlab {
namespace {

constexpr std::uint32_t kMod = 167772161;  // 5 * 2^25 + 1
constexpr std::uint32_t kGen = 3;          // primitive root
constexpr std::size_t kMaxTransform = std::size_t(1) << 25;

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % kMod);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp) {
    std::uint32_t r = 1;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base);
        base = mul_mod(base, base);
        exp >>= 1;
    }
    return r;
}

void ntt(std::vector<std::uint32_t>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint32_t w = pow_mod(kGen, (kMod - 1) / len);
        if (inverse) w = pow_mod(w, kMod - 2);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint32_t cur = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::uint32_t u = a[i + k];
                const std::uint32_t v = mul_mod(a[i + k + len / 2], cur);
                a[i + k] = u + v < kMod ? u + v : u + v - kMod;
                a[i + k + len / 2] = u >= v ? u - v : u + kMod - v;
                cur = mul_mod(cur, w);
            }
        }
    }
    if (inverse) {
        const std::uint32_t inv_n = pow_mod(static_cast<std::uint32_t>(n % kMod), kMod - 2);
        for (auto& x : a) x = mul_mod(x, inv_n);
    }
}

// Indicator over half indices: position (v - 1) / 2 for odd v in [1, length].
std::vector<std::uint32_t> half_indicator(const std::vector<std::uint64_t>& elems,
                                          std::uint64_t length, std::size_t n) {
    std::vector<std::uint32_t> f(n, 0);
    for (std::uint64_t v : elems) {
        if (v < 1 || v > length || v % 2 == 0) {
            throw std::invalid_argument("pair_counts expects odd elements in [1, length]");
        }
        f[(v - 1) / 2] = 1;
    }
    return f;
}

std::vector<std::uint64_t> fold(const std::vector<std::uint32_t>& lin, std::uint64_t half) {
    // a + b = 2s + 2 with s the linear index; reduce mod length into (0, L]:
    // k = s + 1 for s < half, k = s - half + 1 otherwise.
    std::vector<std::uint64_t> counts(half, 0);
    for (std::size_t s = 0; s < lin.size() && s <= 2 * half - 2; ++s) {
        counts[s % half] += lin[s];
    }
    return counts;
}

std::size_t transform_size(std::uint64_t half) {
    std::size_t n = 1;
    while (n < 2 * half - 1) n <<= 1;
    if (n > kMaxTransform) {
        throw resource_error("pair-count convolution of period " + std::to_string(2 * half) +
                             " exceeds the transform capacity of 2^25");
    }
    return n;
}

}  // namespace

std::vector<std::uint64_t> pair_counts(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       std::uint64_t length) {
    if (length < 2 || length % 2 != 0) {
        throw std::invalid_argument("pair_counts needs an even period length");
    }
    const std::uint64_t half = length / 2;
    const std::size_t n = transform_size(half);
    std::vector<std::uint32_t> fa = half_indicator(a, length, n);
    std::vector<std::uint32_t> fb = half_indicator(b, length, n);
    ntt(fa, false);
    ntt(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = mul_mod(fa[i], fb[i]);
    fb.clear();
    fb.shrink_to_fit();
    ntt(fa, true);
    return fold(fa, half);
}

std::vector<std::uint64_t> self_pair_counts(const std::vector<std::uint64_t>& a,
                                            std::uint64_t length) {
    if (length < 2 || length % 2 != 0) {
        throw std::invalid_argument("pair_counts needs an even period length");
    }
    const std::uint64_t half = length / 2;
    const std::size_t n = transform_size(half);
    std::vector<std::uint32_t> fa = half_indicator(a, length, n);
    ntt(fa, false);
    for (auto& v : fa) v = mul_mod(v, v);
    ntt(fa, true);
    return fold(fa, half);
}

}  // namespace fantomlab
