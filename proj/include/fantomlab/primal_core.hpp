#pragma once

#include <cstdint>
#include <vector>

#include "fantomlab/common.hpp"

namespace fantomlab {

// The first x primes together with their primorial L and unit count A.
struct PrimeBasis {
    std::size_t x = 0;
    std::vector<std::uint64_t> primes;  // p_1..p_x, ascending, p_1 = 2
    BigInt length;                      // L = prod p_i
    BigInt units;                       // A = prod (p_i - 1)

    std::uint64_t top() const { return primes.back(); }
};

std::vector<std::uint64_t> first_primes(std::size_t x);
BigInt primorial(std::size_t x);
BigInt unit_count(std::size_t x);
PrimeBasis make_basis(std::size_t x);

// Reduced residue system of L(p_x): the integers in [1, L] coprime to L,
// with one indicator bit per position for O(1) membership.
class FantomSystem {
public:
    FantomSystem(PrimeBasis basis, std::vector<bool> indicator);

    const PrimeBasis& basis() const { return basis_; }
    std::size_t x() const { return basis_.x; }
    std::uint64_t length() const { return length_; }
    const std::vector<std::uint64_t>& residues() const { return residues_; }

    bool is_unit(std::uint64_t value) const {
        return value >= 1 && value <= length_ && indicator_[value - 1];
    }
    const std::vector<bool>& indicator() const { return indicator_; }

private:
    PrimeBasis basis_;
    std::uint64_t length_ = 0;
    std::vector<bool> indicator_;  // indicator_[v-1] for v in [1, L]
    std::vector<std::uint64_t> residues_;
};

// Sieve construction: cancel every multiple of p_1..p_x in [1, L].
FantomSystem fantom_direct(std::size_t x, const Guard& guard = {});

// Recursive construction: p_x translated copies of F(p_{x-1}) form the
// presystem, then the products of p_x with the previous units are canceled.
struct RecursiveConstruction {
    FantomSystem system;
    std::vector<std::uint64_t> presystem;  // PF(p_x), ascending
    std::vector<std::uint64_t> canceling;  // K = p_x * F(p_{x-1}), ascending
};
RecursiveConstruction fantom_recursive(std::size_t x, const Guard& guard = {});

// factor * r = quotient * L + residue for every unit r, in residue order.
// The residue parts are a permutation of the system's residues.
struct ProductDecomposition {
    std::uint64_t factor = 0;
    struct Entry {
        std::uint64_t raw;       // factor * r
        std::uint64_t quotient;  // raw / L
        std::uint64_t residue;   // raw % L, representative in (0, L]
    };
    std::vector<Entry> entries;
};
ProductDecomposition multiply_residues(const FantomSystem& system, std::uint64_t factor);

}  // namespace fantomlab
