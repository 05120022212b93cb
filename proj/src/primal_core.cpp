#include "fantomlab/primal_core.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace fantomlab {

std::vector<std::uint64_t> first_primes(std::size_t x) {
    if (x == 0) throw std::invalid_argument("prime count x must be >= 1");
    std::vector<std::uint64_t> primes;
    primes.reserve(x);
    for (std::uint64_t n = 2; primes.size() < x; ++n) {
        bool prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(n);
    }
    return primes;
}

BigInt primorial(std::size_t x) {
    BigInt L = 1;
    for (std::uint64_t p : first_primes(x)) L *= p;
    return L;
}

BigInt unit_count(std::size_t x) {
    BigInt A = 1;
    for (std::uint64_t p : first_primes(x)) A *= (p - 1);
    return A;
}

PrimeBasis make_basis(std::size_t x) {
    PrimeBasis b;
    b.x = x;
    b.primes = first_primes(x);
    b.length = 1;
    b.units = 1;
    for (std::uint64_t p : b.primes) {
        b.length *= p;
        b.units *= (p - 1);
    }
    return b;
}

namespace {

// Length as u64 after the guard admitted it.
std::uint64_t guarded_length(const PrimeBasis& basis, const Guard& guard) {
    if (basis.length > BigInt(guard.max_length)) {
        throw guard_error("system length L = " + basis.length.get_str() +
                              " for x = " + std::to_string(basis.x) +
                              " exceeds the guard of " + std::to_string(guard.max_length),
                          basis.length);
    }
    return basis.length.get_ui();
}

}  // namespace

FantomSystem::FantomSystem(PrimeBasis basis, std::vector<bool> indicator)
    : basis_(std::move(basis)), indicator_(std::move(indicator)) {
    length_ = indicator_.size();
    for (std::uint64_t v = 1; v <= length_; ++v) {
        if (indicator_[v - 1]) residues_.push_back(v);
    }
}

FantomSystem fantom_direct(std::size_t x, const Guard& guard) {
    PrimeBasis basis = make_basis(x);
    const std::uint64_t L = guarded_length(basis, guard);
    std::vector<bool> keep(L, true);
    for (std::uint64_t p : basis.primes) {
        for (std::uint64_t v = p; v <= L; v += p) keep[v - 1] = false;
    }
    return FantomSystem(std::move(basis), std::move(keep));
}

RecursiveConstruction fantom_recursive(std::size_t x, const Guard& guard) {
    if (x == 0) throw std::invalid_argument("prime count x must be >= 1");
    if (x == 1) {
        PrimeBasis basis = make_basis(1);
        guarded_length(basis, guard);
        return RecursiveConstruction{FantomSystem(std::move(basis), {true, false}), {1}, {}};
    }

    PrimeBasis basis = make_basis(x);
    const std::uint64_t L = guarded_length(basis, guard);
    const std::uint64_t p = basis.top();
    const FantomSystem prev = fantom_direct(x - 1, guard);
    const std::uint64_t Lp = prev.length();

    std::vector<std::uint64_t> presystem;
    presystem.reserve(prev.residues().size() * p);
    for (std::uint64_t a = 0; a < p; ++a) {
        for (std::uint64_t r : prev.residues()) presystem.push_back(a * Lp + r);
    }
    std::vector<std::uint64_t> canceling;
    canceling.reserve(prev.residues().size());
    for (std::uint64_t r : prev.residues()) canceling.push_back(p * r);

    std::vector<bool> keep(L, false);
    for (std::uint64_t v : presystem) keep[v - 1] = true;
    for (std::uint64_t v : canceling) keep[v - 1] = false;
    return RecursiveConstruction{FantomSystem(std::move(basis), std::move(keep)),
                                 std::move(presystem), std::move(canceling)};
}

ProductDecomposition multiply_residues(const FantomSystem& system, std::uint64_t factor) {
    if (!system.is_unit(factor)) {
        throw std::invalid_argument("multiplier " + std::to_string(factor) +
                                    " is not a unit of the system");
    }
    const std::uint64_t L = system.length();
    ProductDecomposition dec;
    dec.factor = factor;
    dec.entries.reserve(system.residues().size());
    for (std::uint64_t r : system.residues()) {
        const auto raw = static_cast<unsigned __int128>(factor) * r;
        if (raw > ~static_cast<std::uint64_t>(0)) {
            throw resource_error("product decomposition overflows 64 bits");
        }
        dec.entries.push_back({static_cast<std::uint64_t>(raw),
                               static_cast<std::uint64_t>(raw / L),
                               static_cast<std::uint64_t>(raw % L)});
    }
    return dec;
}

}  // namespace fantomlab
