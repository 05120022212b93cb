#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fantomlab/convolution.hpp"
#include "fantomlab/sum_systems.hpp"
#include "oracles.hpp"

using namespace fantomlab;

namespace {

void check_against_oracle(const RepCountTable& table,
                          const std::vector<std::uint64_t>& elems) {
    const auto expected = oracles::quadratic_pair_counts(elems, elems, table.length());
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        const std::uint64_t e = 2 * (k + 1);
        const auto it = expected.find(e);
        CHECK(table.counts[k] == (it == expected.end() ? 0 : it->second));
    }
}

}  // namespace

TEST_CASE("convolution equals the quadratic oracle on random odd sets") {
    std::mt19937_64 rng(20240811);
    for (int round = 0; round < 40; ++round) {
        const std::uint64_t half = 1 + rng() % 400;
        const std::uint64_t length = 2 * half;
        auto draw = [&] {
            std::vector<std::uint64_t> elems;
            for (std::uint64_t v = 1; v <= length; v += 2) {
                if (rng() % 3 == 0) elems.push_back(v);
            }
            return elems;
        };
        const auto a = draw();
        const auto b = draw();
        const auto cross = pair_counts(a, b, length);
        const auto self = self_pair_counts(a, length);
        const auto cross_expected = oracles::quadratic_pair_counts(a, b, length);
        const auto self_expected = oracles::quadratic_pair_counts(a, a, length);
        for (std::uint64_t k = 1; k <= half; ++k) {
            const auto ce = cross_expected.find(2 * k);
            CHECK(cross[k - 1] == (ce == cross_expected.end() ? 0 : ce->second));
            const auto se = self_expected.find(2 * k);
            CHECK(self[k - 1] == (se == self_expected.end() ? 0 : se->second));
        }
    }
}

TEST_CASE("RS(3) has the single, single, double pattern") {
    const RepCountTable table = rs_table(2);
    CHECK(table.counts == std::vector<std::uint64_t>{1, 1, 2});
    CHECK(table.total == 4);
}

TEST_CASE("RS(5) matches the brute-force table") {
    const RepCountTable table = rs_table(3);
    const std::vector<std::uint64_t> expected{3, 3, 6, 3, 4, 6, 3, 3, 6, 4, 3, 6, 3, 3, 8};
    CHECK(table.counts == expected);
    CHECK(table.at(2) == 3);
    CHECK(table.at(10) == 4);
    CHECK(table.at(20) == 4);
    CHECK(table.at(30) == 8);
    CHECK(table.total == 64);
}

TEST_CASE("RS tables equal the quadratic oracle up to x = 5") {
    for (std::size_t x = 1; x <= 5; ++x) {
        const RepCountTable table = rs_table(x);
        check_against_oracle(table, fantom_direct(x).residues());
        CHECK(table.total == unit_count(x) * unit_count(x));
    }
}

TEST_CASE("PRS tables: worked examples and oracle") {
    const PrsResult p2 = prs_table(2);
    CHECK(p2.table.counts == std::vector<std::uint64_t>{3, 3, 3});
    CHECK(p2.lifting_ok);

    const PrsResult p3 = prs_table(3);
    CHECK(p3.table.at(2) == 5);
    CHECK(p3.table.at(30) == 10);
    CHECK(p3.lifting_ok);
    check_against_oracle(p3.table, fantom_recursive(3).presystem);

    // Cancellations 2, 2, 1 recover RS(3) from PRS(3).
    const RepCountTable rs2 = rs_table(2);
    CHECK(p2.table.counts[0] - rs2.counts[0] == 2);
    CHECK(p2.table.counts[1] - rs2.counts[1] == 2);
    CHECK(p2.table.counts[2] - rs2.counts[2] == 1);
}

TEST_CASE("lifting identity holds up to x = 6") {
    for (std::size_t x = 2; x <= 6; ++x) {
        CHECK(prs_table(x).lifting_ok);
    }
}

TEST_CASE("symmetry reports") {
    for (std::size_t x = 1; x <= 6; ++x) {
        const RepCountTable table = rs_table(x);
        const SymmetryReport report = verify_symmetry(table);
        CHECK(report.pass);
        CHECK(report.expected_center == unit_count(x));
    }
    const SymmetryReport rs5 = verify_symmetry(rs_table(3));
    CHECK(rs5.mirror_pairs == 7);

    RepCountTable broken = rs_table(3);
    broken.counts[0] += 1;  // r(2) no longer equals r(28)
    const SymmetryReport report = verify_symmetry(broken);
    CHECK_FALSE(report.pass);
    CHECK(report.violations == std::vector<std::uint64_t>{2});
}

TEST_CASE("minimum representation bound") {
    CHECK(min_rep_bound(2) == 1);
    CHECK(min_rep_bound(3) == 3);
    CHECK(min_rep_bound(4) == 15);

    const MinRepReport r2 = min_rep_check(rs_table(2));
    CHECK(r2.observed_min == 1);
    CHECK(r2.pass);

    const MinRepReport r3 = min_rep_check(rs_table(3));
    CHECK(r3.observed_min == 3);
    CHECK(r3.argmin_e == 2);
    CHECK(r3.pass);

    const MinRepReport r4 = min_rep_check(rs_table(4));
    CHECK(r4.observed_min == 15);  // the bound is attained
    CHECK(r4.argmin_e == 2);
    CHECK(r4.pass);

    const MinRepReport r5 = min_rep_check(rs_table(5));
    CHECK(r5.observed_min == 135);
    CHECK(r5.argmin_e == 2);
    CHECK(r5.pass);
}

TEST_CASE("balance identity and table totals") {
    for (std::size_t x = 2; x <= 5; ++x) {
        const BalanceReport report = balance_check(x);
        CHECK(report.identity_ok);
        CHECK(report.rs_total_ok);
        CHECK(report.prs_total_ok);
    }
    CHECK(balance_check(2).prs_total == 9);
    CHECK(balance_check(3).rs_total == 64);
}

TEST_CASE("epsilon ledger placements") {
    const EpsilonLedger l2 = epsilon_ledger(2);
    CHECK(l2.canceling == std::vector<std::uint64_t>{3});
    CHECK(l2.epsilon == std::vector<std::uint64_t>{0, 0, 1});
    CHECK(l2.epsilon_total == 1);
    CHECK(l2.epsilon_total_ok);
    CHECK(l2.reconciled);

    const EpsilonLedger l3 = epsilon_ledger(3);
    CHECK(l3.canceling == std::vector<std::uint64_t>{5, 25});
    for (std::size_t k = 0; k < l3.epsilon.size(); ++k) {
        const std::uint64_t e = 2 * (k + 1);
        const std::uint64_t expected = e == 10 || e == 20 ? 1 : (e == 30 ? 2 : 0);
        CHECK(l3.epsilon[k] == expected);
    }
    CHECK(l3.epsilon_total == 4);  // A(p_2)^2
    CHECK(l3.epsilon_total_ok);
    CHECK(l3.reconciled);
    CHECK(l3.reduction[2] == 4);  // e = 6: canceled (1,5),(5,1),(11,25),(25,11)
    CHECK(l3.epsilon[2] == 0);
}

TEST_CASE("epsilon ledger reconciles for x up to 4") {
    for (std::size_t x = 2; x <= 4; ++x) {
        const EpsilonLedger ledger = epsilon_ledger(x);
        CHECK(ledger.reconciled);
        CHECK(ledger.epsilon_total_ok);
        CHECK(ledger.reduction_total_ok);
    }
}

TEST_CASE("induction inequality with its exact surplus") {
    for (std::size_t x = 2; x <= 5; ++x) {
        const InductionReport report = induction_check(x);
        CHECK(report.pass);
        CHECK(report.evens_checked == rs_table(x).counts.size());

        // The surplus over (p_x - 2) r'(e') is exactly epsilon(e).
        const RepCountTable cur = rs_table(x);
        const RepCountTable prev = rs_table(x - 1);
        const EpsilonLedger ledger = epsilon_ledger(x);
        const std::uint64_t p = cur.basis.top();
        for (std::size_t k = 0; k < cur.counts.size(); ++k) {
            CHECK(cur.counts[k] ==
                  (p - 2) * prev.counts[k % prev.counts.size()] + ledger.epsilon[k]);
        }
    }
}

TEST_CASE("induction worked examples at x = 3") {
    const RepCountTable cur = rs_table(3);
    const RepCountTable prev = rs_table(2);
    CHECK(cur.at(2) >= 3 * prev.at(2));
    CHECK(cur.at(6) == 3 * prev.at(6));  // equality where epsilon vanishes
    CHECK(cur.at(30) >= 3 * prev.at(6));
}

TEST_CASE("block audit") {
    const BlockAudit a3 = block_audit(3);
    CHECK(a3.blocks.size() == 5);
    CHECK(a3.cancel_bound == 8);
    CHECK(a3.remain_bound == 12);
    CHECK(a3.blocks[4].reduction_sum == 6);   // evens {26, 28, 30}
    CHECK(a3.blocks[4].remaining_sum == 14);
    CHECK(a3.blocks[0].reduction_sum == 8);   // evens {2, 4, 6}, tight
    CHECK(a3.blocks[0].remaining_sum == 12);
    CHECK(a3.cancel_ok);
    CHECK(a3.remain_ok);

    const BlockAudit a2 = block_audit(2);
    CHECK(a2.blocks.size() == 3);
    std::uint64_t total_reduction = 0;
    for (const auto& block : a2.blocks) total_reduction += block.reduction_sum;
    CHECK(total_reduction == 5);  // PRS(3) total 9 minus RS(3) total 4
    CHECK(a2.cancel_ok);
    CHECK(a2.remain_ok);

    for (std::size_t x = 2; x <= 5; ++x) {
        const BlockAudit audit = block_audit(x);
        CHECK(audit.cancel_ok);
        CHECK(audit.remain_ok);
    }
}

TEST_CASE("grid export") {
    const std::string text = export_grid(2, TableKind::PRS, GridFormat::Text);
    CHECK(text ==
          "grid kind=PRS x=2 L=6\n"
          "      1  3*   5\n"
          "  1   2   4   6\n"
          " 3*   4 [6]   2\n"
          "  5   6   2   4\n");

    const std::string csv = export_grid(2, TableKind::PRS, GridFormat::Csv);
    CHECK(csv ==
          "summand,1,3,5,flag\n"
          "1,2,4,6,\n"
          "3,4,6,2,K\n"
          "5,6,2,4,\n");

    const std::string trivial = export_grid(1, TableKind::RS, GridFormat::Csv);
    CHECK(trivial == "summand,1,flag\n1,2,\n");

    // Emission is byte-stable.
    CHECK(export_grid(3, TableKind::PRS, GridFormat::Csv) ==
          export_grid(3, TableKind::PRS, GridFormat::Csv));

    const GridSpec spec = grid_spec(3, TableKind::PRS);
    CHECK(spec.summands == fantom_recursive(3).presystem);
    std::vector<std::uint64_t> flagged;
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        if (spec.canceled[i]) flagged.push_back(spec.summands[i]);
    }
    CHECK(flagged == std::vector<std::uint64_t>{5, 25});
    CHECK(grid_cell(spec, 5, 25) == 30);  // the intersection cell
}
