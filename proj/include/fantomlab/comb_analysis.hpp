#pragma once

#include <cstdint>
#include <string>

#include "fantomlab/primal_core.hpp"

namespace fantomlab {

enum class ScanMode { Cyclic, Linear };

// Window-count spread of one mask over every offset of a sliding window.
// claim_holds records whether the spread stayed within the claimed bound;
// the superposed and sum-comb bounds are audited, never assumed.
struct WindowSpreadReport {
    std::string mode;            // "single-comb", "canceled", "units", "sum-comb"
    std::size_t x = 0;           // 0 for a raw single comb
    std::uint64_t parameter = 0; // p for single-comb, target e for sum-comb
    std::uint64_t window = 0;
    std::uint64_t total_length = 0;
    ScanMode scan = ScanMode::Cyclic;
    std::uint64_t min_count = 0;
    std::uint64_t max_count = 0;
    std::uint64_t spread = 0;
    std::uint64_t claim_bound = 0;
    bool claim_holds = false;
    std::uint64_t offsets_scanned = 0;
};

// Multiples of p inside every window of the given length over [1, total].
WindowSpreadReport tooth_spread(std::uint64_t p, std::uint64_t window, std::uint64_t total,
                                ScanMode scan = ScanMode::Cyclic);

// Canceled (or unit) positions of the system in every window. Bound: x.
WindowSpreadReport superposed_spread(const FantomSystem& system, std::uint64_t window,
                                     bool canceled, ScanMode scan = ScanMode::Cyclic);

// Positions a where both a and e - a (mod L, representative in (0, L]) are
// units, scanned over every window. Bound: 2x.
WindowSpreadReport sum_comb_spread(const FantomSystem& system, std::uint64_t e,
                                   std::uint64_t window, ScanMode scan = ScanMode::Cyclic);

}  // namespace fantomlab
