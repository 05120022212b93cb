#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fantomlab/common.hpp"

namespace fantomlab {

// prod_{i=2..x} (p_i - 2) / p_i as an exact reduced fraction, x >= 2.
BigRat density(std::size_t x);

// C(e, x) = 1/2 * density(x) * (e/2) - 1 - 2x + 2 with every term of the
// assembly kept visible. The crossover flag compares C with 1 exactly.
struct BoundReport {
    std::size_t x = 0;
    std::uint64_t p = 0;  // p_x
    std::uint64_t e = 0;
    BigRat density;
    BigRat mean_term;          // 1/2 * density * (e/2)
    long summand_one_term = 0; // -1
    long variance_term = 0;    // -2x
    long evenness_term = 0;    // +2
    BigRat c;
    bool crossover = false;
};
BoundReport c_of(std::uint64_t e, std::size_t x);

// Scan x = 2..x_max at the canonical points e = p_x^2 + 1.
struct CrossoverScan {
    std::optional<std::size_t> first_x;  // smallest x with C > 1
    std::vector<BoundReport> table;
    std::size_t monotone_suffix_from = 0;  // smallest x0 with C increasing on [x0, x_max]
};
CrossoverScan crossover_scan(std::size_t x_max);

// C over the even numbers from p_x^2 + 1 to p_{x+1}^2 - 1. Linear in e with
// slope density/2 per step of 2, so strictly increasing.
struct SweepResult {
    std::vector<BoundReport> table;
    BigRat step;
    bool strictly_increasing = false;
};
SweepResult c_sweep(std::size_t x);

}  // namespace fantomlab
