#include "fantomlab/goldbach_verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "fantomlab/bound_evaluator.hpp"
#include "fantomlab/parallel.hpp"
#include "fantomlab/primal_core.hpp"

namespace fantomlab {
namespace {

constexpr char kCacheMagic[4] = {'F', 'L', 'P', 'C'};
constexpr std::uint32_t kCacheVersion = 1;
constexpr std::size_t kViolationCap = 16;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> mark(limit + 1, true);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!mark[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = false;
    }
    return primes;
}

}  // namespace

PrimeSieve PrimeSieve::build(std::uint64_t limit, const Guard& guard) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
    if (limit > guard.max_sieve) {
        throw guard_error("sieve limit " + std::to_string(limit) + " exceeds the guard of " +
                              std::to_string(guard.max_sieve),
                          BigInt(limit));
    }
    PrimeSieve sieve;
    sieve.limit_ = limit;
    const std::uint64_t n_odd = (limit + 1) / 2;  // odd numbers 2i+1 <= limit, i < n_odd
    sieve.bits_.assign((n_odd + 63) / 64, ~std::uint64_t(0));
    sieve.bits_[0] &= ~std::uint64_t(1);  // 1 is not prime

    const auto base = simple_sieve(isqrt(limit));
    constexpr std::uint64_t kSegment = std::uint64_t(1) << 20;  // odd indices per segment
    for (std::uint64_t lo = 0; lo < n_odd; lo += kSegment) {
        const std::uint64_t hi = std::min(lo + kSegment, n_odd);  // indices [lo, hi)
        const std::uint64_t hi_n = 2 * (hi - 1) + 1;
        for (std::uint64_t p : base) {
            if (p == 2) continue;
            if (p * p > hi_n) break;
            std::uint64_t m = std::max(p * p, ((2 * lo + 1 + p - 1) / p) * p);
            if (m % 2 == 0) m += p;
            for (; m <= hi_n; m += 2 * p) {
                const std::uint64_t i = (m - 1) / 2;
                sieve.bits_[i / 64] &= ~(std::uint64_t(1) << (i % 64));
            }
        }
    }
    // Clear slack bits past the limit so popcounts stay exact.
    for (std::uint64_t i = n_odd; i < sieve.bits_.size() * 64; ++i) {
        sieve.bits_[i / 64] &= ~(std::uint64_t(1) << (i % 64));
    }
    return sieve;
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
    if (n > limit_) {
        throw std::invalid_argument("primality query " + std::to_string(n) +
                                    " beyond sieve limit " + std::to_string(limit_));
    }
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    const std::uint64_t i = (n - 1) / 2;
    return (bits_[i / 64] >> (i % 64)) & 1;
}

std::vector<std::uint64_t> PrimeSieve::primes_upto(std::uint64_t n) const {
    if (n > limit_) {
        throw std::invalid_argument("prime listing beyond sieve limit");
    }
    std::vector<std::uint64_t> primes;
    if (n >= 2) primes.push_back(2);
    for (std::uint64_t v = 3; v <= n; v += 2) {
        const std::uint64_t i = (v - 1) / 2;
        if ((bits_[i / 64] >> (i % 64)) & 1) primes.push_back(v);
    }
    return primes;
}

std::uint64_t PrimeSieve::count_upto(std::uint64_t n) const {
    if (n > limit_) throw std::invalid_argument("prime count beyond sieve limit");
    if (n < 2) return 0;
    std::uint64_t count = 1;  // the prime 2
    const std::uint64_t i_max = n >= 3 ? (n - 1) / 2 : 0;
    for (std::uint64_t w = 0; w < bits_.size(); ++w) {
        const std::uint64_t first = w * 64;
        if (first > i_max) break;
        std::uint64_t word = bits_[w];
        if (i_max - first < 63) word &= (std::uint64_t(1) << (i_max - first + 1)) - 1;
        count += std::popcount(word);
    }
    return count;
}

void PrimeSieve::save(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw resource_error("cannot write prime cache " + file.string());
    out.write(kCacheMagic, 4);
    const std::uint32_t version = kCacheVersion;
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&limit_), sizeof limit_);
    out.write(reinterpret_cast<const char*>(bits_.data()),
              static_cast<std::streamsize>(bits_.size() * sizeof(std::uint64_t)));
    if (!out) throw resource_error("short write on prime cache " + file.string());
}

PrimeSieve PrimeSieve::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw resource_error("cannot read prime cache " + file.string());
    char magic[4];
    std::uint32_t version = 0;
    PrimeSieve sieve;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&sieve.limit_), sizeof sieve.limit_);
    if (!in || std::memcmp(magic, kCacheMagic, 4) != 0) {
        throw resource_error("prime cache " + file.string() + " has a bad header");
    }
    if (version != kCacheVersion) {
        throw resource_error("prime cache " + file.string() + " has unsupported version " +
                             std::to_string(version));
    }
    const std::uint64_t n_odd = (sieve.limit_ + 1) / 2;
    sieve.bits_.resize((n_odd + 63) / 64);
    in.read(reinterpret_cast<char*>(sieve.bits_.data()),
            static_cast<std::streamsize>(sieve.bits_.size() * sizeof(std::uint64_t)));
    if (!in || in.gcount() !=
                   static_cast<std::streamsize>(sieve.bits_.size() * sizeof(std::uint64_t))) {
        throw resource_error("prime cache " + file.string() + " is truncated");
    }
    return sieve;
}

WindowCheckReport prime_window_check(std::size_t x, const PrimeSieve& sieve) {
    if (x == 0) throw std::invalid_argument("prime window check needs x >= 1");
    const auto primes = first_primes(x + 1);
    WindowCheckReport report;
    report.x = x;
    report.lo = primes[x - 1];
    report.hi = primes[x] * primes[x];
    if (sieve.limit() < report.hi) {
        throw std::invalid_argument("prime window check needs a sieve up to " +
                                    std::to_string(report.hi));
    }
    report.units_all_prime = true;
    report.primes_all_units = true;
    for (std::uint64_t v = report.lo + 1; v < report.hi; ++v) {
        bool unit = true;
        for (std::size_t i = 0; i < x; ++i) {
            if (v % primes[i] == 0) {
                unit = false;
                break;
            }
        }
        if (unit) ++report.units_seen;
        const bool prime = sieve.is_prime(v);
        if (unit != prime) {
            if (unit) report.units_all_prime = false;
            else report.primes_all_units = false;
            if (report.violations.size() < kViolationCap) report.violations.push_back(v);
        }
    }
    // p_{x+1}^2 itself is the first composite unit above the window.
    bool square_is_unit = true;
    for (std::size_t i = 0; i < x; ++i) {
        if (report.hi % primes[i] == 0) square_is_unit = false;
    }
    report.first_composite_unit_is_square =
        report.units_all_prime && square_is_unit && !sieve.is_prime(report.hi);
    return report;
}

std::uint64_t unit_pair_count(std::uint64_t e, std::size_t x) {
    if (e % 2 != 0) throw std::invalid_argument("unit pair count needs an even e");
    if (e < 4) return 0;
    const BigInt L = primorial(x);
    auto coprime = [&L](std::uint64_t v) {
        const std::uint64_t m = mpz_fdiv_ui(L.get_mpz_t(), v);
        return std::gcd(v, m) == 1;
    };
    std::uint64_t count = 0;
    for (std::uint64_t a = 2; a <= e / 2; ++a) {
        if (coprime(a) && coprime(e - a)) ++count;
    }
    return count;
}

StringentReport stringent_check(std::size_t x, const PrimeSieve& sieve, bool all_witnesses) {
    if (x == 0) throw std::invalid_argument("stringent check needs x >= 1");
    const auto primes = first_primes(x + 1);
    const std::uint64_t p = primes[x - 1];
    StringentReport report;
    report.x = x;
    report.lo = p * p;
    report.hi = primes[x] * primes[x];
    if (sieve.limit() < report.hi) {
        throw std::invalid_argument("stringent check needs a sieve up to " +
                                    std::to_string(report.hi));
    }
    const auto candidates = sieve.primes_upto(report.hi / 2 + 1);
    const auto begin = std::upper_bound(candidates.begin(), candidates.end(), p);

    const std::uint64_t first = report.lo % 2 == 0 ? report.lo + 2 : report.lo + 1;
    for (std::uint64_t e = first; e < report.hi; e += 2) {
        ++report.evens_checked;
        bool found = false;
        for (auto it = begin; it != candidates.end() && *it <= e / 2; ++it) {
            if (sieve.is_prime(e - *it)) {
                report.witnesses.push_back({e, *it, e - *it, p, true});
                found = true;
                if (!all_witnesses) break;
            }
        }
        if (!found) report.violations.push_back(e);
    }
    return report;
}

ConjectureScanReport conjecture_scan(std::uint64_t e_max, const PrimeSieve& sieve,
                                     unsigned workers) {
    if (e_max < 6 || e_max % 2 != 0) {
        throw std::invalid_argument("conjecture scan needs an even e_max >= 6");
    }
    if (sieve.limit() < e_max) {
        throw std::invalid_argument("conjecture scan needs a sieve up to " +
                                    std::to_string(e_max));
    }
    const auto thresholds = sieve.primes_upto(isqrt(e_max) + 1);
    const auto candidates = sieve.primes_upto(e_max / 2 + 1);

    const std::uint64_t evens = (e_max - 6) / 2 + 1;  // e = 6 + 2i
    constexpr std::uint64_t kChunk = 1 << 13;         // fixed: results never depend on workers
    const std::uint64_t chunks = (evens + kChunk - 1) / kChunk;

    struct Bucket {
        std::uint64_t below = 0, above = 0;
        std::vector<std::uint64_t> violations;
    };
    std::vector<Bucket> buckets(chunks);

    detail::run_chunks(chunks, workers, [&](std::uint64_t ci) {
        Bucket& bucket = buckets[ci];
        const std::uint64_t i_lo = ci * kChunk;
        const std::uint64_t i_hi = std::min(i_lo + kChunk, evens);
        // Threshold index: largest prime with square < e, advanced as e grows.
        std::size_t ti = 0;
        const std::uint64_t e_first = 6 + 2 * i_lo;
        while (ti + 1 < thresholds.size() &&
               thresholds[ti + 1] * thresholds[ti + 1] < e_first) {
            ++ti;
        }
        for (std::uint64_t i = i_lo; i < i_hi; ++i) {
            const std::uint64_t e = 6 + 2 * i;
            while (ti + 1 < thresholds.size() &&
                   thresholds[ti + 1] * thresholds[ti + 1] < e) {
                ++ti;
            }
            bool found = false;
            for (std::size_t qi = ti + 1; qi < candidates.size(); ++qi) {
                const std::uint64_t q = candidates[qi];
                if (q > e / 2) break;
                if (sieve.is_prime(e - q)) {
                    found = true;
                    break;
                }
            }
            if (e <= 2810) ++bucket.below;
            else ++bucket.above;
            if (!found) bucket.violations.push_back(e);
        }
    });

    ConjectureScanReport report;
    report.e_max = e_max;
    for (const Bucket& b : buckets) {
        report.checked_below += b.below;
        report.checked_above += b.above;
        report.violations.insert(report.violations.end(), b.violations.begin(),
                                 b.violations.end());
    }
    return report;
}

BoundAuditReport bound_audit(std::size_t x, unsigned workers) {
    if (x < 2) throw std::invalid_argument("bound audit needs x >= 2");
    const auto primes = first_primes(x + 1);
    const std::uint64_t p = primes[x - 1];
    const std::uint64_t lo = p * p;
    const std::uint64_t hi = primes[x] * primes[x];
    const BigInt L = primorial(x);
    const BigRat dens = density(x);

    const std::uint64_t first = lo % 2 == 0 ? lo + 2 : lo + 1;
    const std::uint64_t evens = first < hi ? (hi - 1 - first) / 2 + 1 : 0;
    constexpr std::uint64_t kChunk = 64;
    const std::uint64_t chunks = (evens + kChunk - 1) / kChunk;
    std::vector<std::vector<AuditRecord>> buckets(chunks);

    detail::run_chunks(chunks, workers, [&](std::uint64_t ci) {
        auto& bucket = buckets[ci];
        const std::uint64_t i_lo = ci * kChunk;
        const std::uint64_t i_hi = std::min(i_lo + kChunk, evens);
        for (std::uint64_t i = i_lo; i < i_hi; ++i) {
            const std::uint64_t e = first + 2 * i;
            AuditRecord record;
            record.e = e;
            record.x = x;
            std::uint64_t count = 0;
            for (std::uint64_t a = 2; a <= e / 2; ++a) {
                const std::uint64_t ma = mpz_fdiv_ui(L.get_mpz_t(), a);
                if (std::gcd(a, ma) != 1) continue;
                const std::uint64_t mb = mpz_fdiv_ui(L.get_mpz_t(), e - a);
                if (std::gcd(e - a, mb) == 1) ++count;
            }
            record.empirical_pairs = count;
            record.c_bound = dens * BigRat(e) / 4 - 1 - 2 * static_cast<long>(x) + 2;
            record.slack = BigRat(count) - record.c_bound;
            bucket.push_back(record);
        }
    });

    BoundAuditReport report;
    report.x = x;
    for (auto& bucket : buckets) {
        for (auto& record : bucket) report.records.push_back(std::move(record));
    }
    bool start = true;
    for (const AuditRecord& record : report.records) {
        if (start || record.slack < report.min_slack) {
            report.min_slack = record.slack;
            report.argmin_e = record.e;
            start = false;
        }
    }
    report.claim_holds = !start && sgn(report.min_slack) >= 0;
    return report;
}

}  // namespace fantomlab
