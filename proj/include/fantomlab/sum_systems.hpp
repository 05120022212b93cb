#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fantomlab/primal_core.hpp"

namespace fantomlab {

enum class TableKind { RS, PRS };

// Representation counts r(e) for every even e in [2, L], ordered-pair
// convention, sums reduced mod L with representative in (0, L].
struct RepCountTable {
    PrimeBasis basis;
    TableKind kind = TableKind::RS;
    std::vector<std::uint64_t> counts;  // counts[k-1] <-> e = 2k
    BigInt total;

    std::uint64_t length() const { return 2 * counts.size(); }
    std::uint64_t at(std::uint64_t e) const;  // e even in [2, L]
};

RepCountTable rs_table(std::size_t x, const Guard& guard = {});

// The presystem table is built twice: by convolution over PF(p_x) and by
// lifting RS(p_{x-1}) with the factor p_x. Both must agree.
struct PrsResult {
    RepCountTable table;
    bool lifting_ok = false;
    std::uint64_t first_mismatch_e = 0;
};
PrsResult prs_table(std::size_t x, const Guard& guard = {});

// r(e) == r(L - e) for even e in [2, L-2], and r(L) equals the full
// summand count (A for RS, p_x * A(p_{x-1}) for PRS).
struct SymmetryReport {
    bool pass = false;
    std::uint64_t mirror_pairs = 0;
    BigInt expected_center;
    bool center_ok = false;
    std::vector<std::uint64_t> violations;  // offending e, ascending, capped
};
SymmetryReport verify_symmetry(const RepCountTable& table);

BigInt min_rep_bound(std::size_t x);  // prod_{i=2..x} (p_i - 2)

struct MinRepReport {
    BigInt bound;
    std::uint64_t observed_min = 0;
    std::uint64_t argmin_e = 0;  // smallest even attaining the minimum
    bool pass = false;
};
MinRepReport min_rep_check(const RepCountTable& rs);

struct BalanceReport {
    std::size_t x = 0;
    bool identity_ok = false;  // A^2 == A'^2 p^2 - 2 p A'^2 + A'^2
    bool rs_total_ok = false;
    bool prs_total_ok = false;
    BigInt rs_total, prs_total;
    bool pass() const { return identity_ok && rs_total_ok && prs_total_ok; }
};
BalanceReport balance_check(std::size_t x, const Guard& guard = {});

// Per-even bookkeeping of the PRS(p_x) -> RS(p_x) cancellation. epsilon(e)
// counts ordered pairs of canceling summands; the reduction reconciles as
// prs(e) - rs(e) == 2 * cross(e) - epsilon(e) with cross the K x PF count.
struct EpsilonLedger {
    std::size_t x = 0;
    std::vector<std::uint64_t> canceling;  // K, ascending
    std::vector<std::uint64_t> prs, rs, reduction, epsilon;  // indexed by k-1
    BigInt epsilon_total, reduction_total;
    bool epsilon_total_ok = false;    // == A(p_{x-1})^2
    bool reduction_total_ok = false;  // == (2 p_x - 1) A(p_{x-1})^2
    bool reconciled = false;
    std::uint64_t first_unreconciled_e = 0;
};
EpsilonLedger epsilon_ledger(std::size_t x, const Guard& guard = {});

// r_RS(x)(e) >= (p_x - 2) * r_RS(x-1)(e mod L(p_{x-1})) for every even e.
struct InductionReport {
    std::size_t x = 0;
    std::uint64_t evens_checked = 0;
    bool pass = false;
    std::uint64_t violation_count = 0;
    std::vector<std::uint64_t> violations;  // capped
};
InductionReport induction_check(std::size_t x, const Guard& guard = {});

// Partition the evens of [2, L] into p_x blocks of length L(p_{x-1}).
// Per block: sum of reductions <= 2 A'^2 and sum of RS counts >= (p_x-2) A'^2.
struct BlockAudit {
    struct Block {
        std::uint64_t index;  // evens in (index * L', (index+1) * L']
        std::uint64_t reduction_sum;
        std::uint64_t remaining_sum;
    };
    std::size_t x = 0;
    BigInt cancel_bound;
    BigInt remain_bound;
    std::vector<Block> blocks;
    bool cancel_ok = false;
    bool remain_ok = false;
};
BlockAudit block_audit(std::size_t x, const Guard& guard = {});

// Addition-table grid over the (pre)system summands. Cells hold the even
// representative of the sum; canceled summands and their intersections are
// flagged. Output is byte-stable for identical inputs.
struct GridSpec {
    std::size_t x = 0;
    TableKind kind = TableKind::RS;
    std::uint64_t length = 0;
    std::vector<std::uint64_t> summands;
    std::vector<bool> canceled;
};
GridSpec grid_spec(std::size_t x, TableKind kind, const Guard& guard = {});
std::uint64_t grid_cell(const GridSpec& spec, std::uint64_t row, std::uint64_t col);

enum class GridFormat { Text, Csv };
void write_grid(const GridSpec& spec, GridFormat format, std::ostream& out);
std::string export_grid(std::size_t x, TableKind kind, GridFormat format,
                        const Guard& guard = {});

}  // namespace fantomlab
