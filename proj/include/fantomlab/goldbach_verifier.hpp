#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fantomlab/common.hpp"

namespace fantomlab {

// Bit-per-odd prime table built by a segmented sieve. Shared read-only by
// the range scans; the cache file round-trips the exact table.
class PrimeSieve {
public:
    static PrimeSieve build(std::uint64_t limit, const Guard& guard = {});
    static PrimeSieve load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    std::uint64_t limit() const { return limit_; }
    bool is_prime(std::uint64_t n) const;
    std::vector<std::uint64_t> primes_upto(std::uint64_t n) const;
    std::uint64_t count_upto(std::uint64_t n) const;

private:
    PrimeSieve() = default;
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> bits_;  // bit i <-> odd number 2i + 1
};

// In (p_x, p_{x+1}^2) the units of F(p_x) are exactly the primes; the first
// composite unit above p_x is p_{x+1}^2 itself.
struct WindowCheckReport {
    std::size_t x = 0;
    std::uint64_t lo = 0, hi = 0;  // open interval (p_x, p_{x+1}^2)
    std::uint64_t units_seen = 0;
    bool units_all_prime = false;
    bool primes_all_units = false;
    bool first_composite_unit_is_square = false;
    std::vector<std::uint64_t> violations;  // capped
};
WindowCheckReport prime_window_check(std::size_t x, const PrimeSieve& sieve);

// Unordered pairs {a, e-a}, 2 <= a <= e/2, both coprime to L(p_x); plain
// integer sums, no modular reduction. The summand 1 is excluded. Pure gcd
// arithmetic against the exact primorial, so any x works without tables.
std::uint64_t unit_pair_count(std::uint64_t e, std::size_t x);

struct GoldbachWitness {
    std::uint64_t e = 0, q = 0, r = 0;  // q <= r, q + r == e
    std::uint64_t threshold = 0;        // p_x
    bool stringent = false;             // q > threshold and r > threshold
};

// Every even in (p_x^2, p_{x+1}^2) written as a sum of two primes > p_x.
// Witnesses are the lexicographically smallest pairs unless all are asked for.
struct StringentReport {
    std::size_t x = 0;
    std::uint64_t lo = 0, hi = 0;
    std::uint64_t evens_checked = 0;
    std::vector<GoldbachWitness> witnesses;
    std::vector<std::uint64_t> violations;
    bool pass() const { return violations.empty(); }
};
StringentReport stringent_check(std::size_t x, const PrimeSieve& sieve,
                                bool all_witnesses = false);

// For every even e in (4, e_max]: with P the largest prime with P^2 < e,
// check that e is a sum of two primes > P. Streaming, constant memory per
// even beyond the sieve; results are independent of the worker partition.
struct ConjectureScanReport {
    std::uint64_t e_max = 0;
    std::uint64_t checked_below = 0;  // evens <= 2810
    std::uint64_t checked_above = 0;
    std::vector<std::uint64_t> violations;
    bool pass() const { return violations.empty(); }
};
ConjectureScanReport conjecture_scan(std::uint64_t e_max, const PrimeSieve& sieve,
                                     unsigned workers = 1);

// Empirical unit-pair counts against the exact lower bound C over the evens
// of (p_x^2, p_{x+1}^2). The sign of the worst slack is recorded, not assumed.
struct AuditRecord {
    std::uint64_t e = 0;
    std::size_t x = 0;
    std::uint64_t empirical_pairs = 0;
    BigRat c_bound;
    BigRat slack;  // empirical - C
};

struct BoundAuditReport {
    std::size_t x = 0;
    std::vector<AuditRecord> records;
    BigRat min_slack;
    std::uint64_t argmin_e = 0;
    bool claim_holds = false;  // min slack >= 0
};
BoundAuditReport bound_audit(std::size_t x, unsigned workers = 1);

}  // namespace fantomlab
