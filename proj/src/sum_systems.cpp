#include "fantomlab/sum_systems.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "fantomlab/convolution.hpp"

namespace fantomlab {
namespace {

constexpr std::size_t kViolationCap = 16;

BigInt sum_counts(const std::vector<std::uint64_t>& counts) {
    BigInt total = 0;
    for (std::uint64_t c : counts) {
        mpz_add_ui(total.get_mpz_t(), total.get_mpz_t(), c);
    }
    return total;
}

void require_x_at_least_2(std::size_t x, const char* op) {
    if (x < 2) throw std::invalid_argument(std::string(op) + " needs x >= 2");
}

}  // namespace

std::uint64_t RepCountTable::at(std::uint64_t e) const {
    if (e < 2 || e > length() || e % 2 != 0) {
        throw std::invalid_argument("table lookup needs an even e in [2, L]");
    }
    return counts[e / 2 - 1];
}

RepCountTable rs_table(std::size_t x, const Guard& guard) {
    FantomSystem system = fantom_direct(x, guard);
    RepCountTable table;
    table.kind = TableKind::RS;
    table.counts = self_pair_counts(system.residues(), system.length());
    table.total = sum_counts(table.counts);
    table.basis = system.basis();
    return table;
}

PrsResult prs_table(std::size_t x, const Guard& guard) {
    require_x_at_least_2(x, "prs_table");
    RecursiveConstruction rec = fantom_recursive(x, guard);
    const std::uint64_t p = rec.system.basis().top();

    PrsResult result;
    result.table.kind = TableKind::PRS;
    result.table.basis = rec.system.basis();
    result.table.counts = self_pair_counts(rec.presystem, rec.system.length());
    result.table.total = sum_counts(result.table.counts);

    // Lifting identity: r_PRS(e) = p_x * r_RS(x-1)(e mod L(p_{x-1})).
    RepCountTable prev = rs_table(x - 1, guard);
    const std::size_t half_prev = prev.counts.size();
    result.lifting_ok = true;
    for (std::size_t k = 0; k < result.table.counts.size(); ++k) {
        if (result.table.counts[k] != p * prev.counts[k % half_prev]) {
            result.lifting_ok = false;
            result.first_mismatch_e = 2 * (k + 1);
            break;
        }
    }
    return result;
}

SymmetryReport verify_symmetry(const RepCountTable& table) {
    const auto& c = table.counts;
    const std::size_t half = c.size();
    SymmetryReport report;
    if (table.kind == TableKind::RS) {
        report.expected_center = table.basis.units;
    } else {
        // p_x * A(p_{x-1})
        const std::uint64_t p = table.basis.top();
        report.expected_center = table.basis.units / (p - 1) * p;
    }
    for (std::size_t k = 1; 2 * k < half; ++k) {
        ++report.mirror_pairs;
        if (c[k - 1] != c[half - k - 1] && report.violations.size() < kViolationCap) {
            report.violations.push_back(2 * k);
        }
    }
    report.center_ok = BigInt(c[half - 1]) == report.expected_center;
    report.pass = report.center_ok && report.violations.empty();
    return report;
}

BigInt min_rep_bound(std::size_t x) {
    if (x == 0) throw std::invalid_argument("prime count x must be >= 1");
    BigInt bound = 1;
    const auto primes = first_primes(x);
    for (std::size_t i = 1; i < primes.size(); ++i) bound *= (primes[i] - 2);
    return bound;
}

MinRepReport min_rep_check(const RepCountTable& rs) {
    MinRepReport report;
    report.bound = min_rep_bound(rs.basis.x);
    report.observed_min = rs.counts[0];
    report.argmin_e = 2;
    for (std::size_t k = 0; k < rs.counts.size(); ++k) {
        if (rs.counts[k] < report.observed_min) {
            report.observed_min = rs.counts[k];
            report.argmin_e = 2 * (k + 1);
        }
    }
    report.pass = BigInt(report.observed_min) >= report.bound;
    return report;
}

BalanceReport balance_check(std::size_t x, const Guard& guard) {
    require_x_at_least_2(x, "balance_check");
    BalanceReport report;
    report.x = x;
    const BigInt a_prev = unit_count(x - 1);
    const BigInt a_cur = unit_count(x);
    const BigInt p(first_primes(x).back());
    report.identity_ok =
        a_cur * a_cur == a_prev * a_prev * p * p - 2 * p * a_prev * a_prev + a_prev * a_prev;
    report.rs_total = rs_table(x, guard).total;
    report.prs_total = prs_table(x, guard).table.total;
    report.rs_total_ok = report.rs_total == a_cur * a_cur;
    report.prs_total_ok = report.prs_total == a_prev * a_prev * p * p;
    return report;
}

EpsilonLedger epsilon_ledger(std::size_t x, const Guard& guard) {
    require_x_at_least_2(x, "epsilon_ledger");
    RecursiveConstruction rec = fantom_recursive(x, guard);
    const std::uint64_t L = rec.system.length();
    const std::uint64_t p = rec.system.basis().top();
    const BigInt a_prev = unit_count(x - 1);

    EpsilonLedger ledger;
    ledger.x = x;
    ledger.canceling = rec.canceling;
    ledger.prs = self_pair_counts(rec.presystem, L);
    ledger.rs = self_pair_counts(rec.system.residues(), L);
    ledger.epsilon = self_pair_counts(rec.canceling, L);
    const std::vector<std::uint64_t> cross = pair_counts(rec.canceling, rec.presystem, L);

    const std::size_t half = ledger.prs.size();
    ledger.reduction.resize(half);
    ledger.reconciled = true;
    for (std::size_t k = 0; k < half; ++k) {
        const bool ok = ledger.prs[k] + ledger.epsilon[k] == ledger.rs[k] + 2 * cross[k];
        if (!ok && ledger.reconciled) {
            ledger.reconciled = false;
            ledger.first_unreconciled_e = 2 * (k + 1);
        }
        ledger.reduction[k] = ledger.prs[k] >= ledger.rs[k] ? ledger.prs[k] - ledger.rs[k] : 0;
        if (ledger.prs[k] < ledger.rs[k]) {
            ledger.reconciled = false;
            if (ledger.first_unreconciled_e == 0) ledger.first_unreconciled_e = 2 * (k + 1);
        }
    }
    ledger.epsilon_total = sum_counts(ledger.epsilon);
    ledger.reduction_total = sum_counts(ledger.reduction);
    ledger.epsilon_total_ok = ledger.epsilon_total == a_prev * a_prev;
    ledger.reduction_total_ok =
        ledger.reduction_total == (2 * BigInt(p) - 1) * a_prev * a_prev;
    return ledger;
}

InductionReport induction_check(std::size_t x, const Guard& guard) {
    require_x_at_least_2(x, "induction_check");
    const RepCountTable cur = rs_table(x, guard);
    const RepCountTable prev = rs_table(x - 1, guard);
    const std::uint64_t p = cur.basis.top();
    const std::size_t half_prev = prev.counts.size();

    InductionReport report;
    report.x = x;
    report.evens_checked = cur.counts.size();
    for (std::size_t k = 0; k < cur.counts.size(); ++k) {
        if (cur.counts[k] < (p - 2) * prev.counts[k % half_prev]) {
            ++report.violation_count;
            if (report.violations.size() < kViolationCap) {
                report.violations.push_back(2 * (k + 1));
            }
        }
    }
    report.pass = report.violation_count == 0;
    return report;
}

BlockAudit block_audit(std::size_t x, const Guard& guard) {
    require_x_at_least_2(x, "block_audit");
    const RepCountTable cur = rs_table(x, guard);
    const PrsResult prs = prs_table(x, guard);
    const std::uint64_t p = cur.basis.top();
    const BigInt a_prev = unit_count(x - 1);
    const std::size_t half_prev = cur.counts.size() / p;  // evens per block

    BlockAudit audit;
    audit.x = x;
    audit.cancel_bound = 2 * a_prev * a_prev;
    audit.remain_bound = (BigInt(p) - 2) * a_prev * a_prev;
    audit.cancel_ok = true;
    audit.remain_ok = true;
    for (std::uint64_t j = 0; j < p; ++j) {
        BlockAudit::Block block{j, 0, 0};
        for (std::size_t i = 0; i < half_prev; ++i) {
            const std::size_t k = j * half_prev + i;
            block.reduction_sum += prs.table.counts[k] - cur.counts[k];
            block.remaining_sum += cur.counts[k];
        }
        if (BigInt(block.reduction_sum) > audit.cancel_bound) audit.cancel_ok = false;
        if (BigInt(block.remaining_sum) < audit.remain_bound) audit.remain_ok = false;
        audit.blocks.push_back(block);
    }
    return audit;
}

GridSpec grid_spec(std::size_t x, TableKind kind, const Guard& guard) {
    GridSpec spec;
    spec.x = x;
    spec.kind = kind;
    if (kind == TableKind::RS) {
        FantomSystem system = fantom_direct(x, guard);
        spec.length = system.length();
        spec.summands = system.residues();
        spec.canceled.assign(spec.summands.size(), false);
    } else {
        require_x_at_least_2(x, "presystem grid");
        RecursiveConstruction rec = fantom_recursive(x, guard);
        spec.length = rec.system.length();
        spec.summands = rec.presystem;
        spec.canceled.assign(spec.summands.size(), false);
        std::size_t i = 0;
        for (std::uint64_t c : rec.canceling) {
            while (spec.summands[i] < c) ++i;
            spec.canceled[i] = true;  // K is a subset of PF, both ascending
        }
    }
    return spec;
}

std::uint64_t grid_cell(const GridSpec& spec, std::uint64_t row, std::uint64_t col) {
    const std::uint64_t s = (row + col) % spec.length;
    return s == 0 ? spec.length : s;
}

void write_grid(const GridSpec& spec, GridFormat format, std::ostream& out) {
    const std::size_t n = spec.summands.size();
    if (format == GridFormat::Csv) {
        out << "summand";
        for (std::uint64_t s : spec.summands) out << ',' << s;
        out << ",flag\n";
        for (std::size_t i = 0; i < n; ++i) {
            out << spec.summands[i];
            for (std::size_t j = 0; j < n; ++j) {
                out << ',' << grid_cell(spec, spec.summands[i], spec.summands[j]);
            }
            out << ',' << (spec.canceled[i] ? "K" : "") << '\n';
        }
        return;
    }

    const char* kind = spec.kind == TableKind::RS ? "RS" : "PRS";
    out << "grid kind=" << kind << " x=" << spec.x << " L=" << spec.length << '\n';
    auto label = [&](std::size_t i) {
        return std::to_string(spec.summands[i]) + (spec.canceled[i] ? "*" : "");
    };
    auto cell = [&](std::size_t i, std::size_t j) {
        std::string v = std::to_string(grid_cell(spec, spec.summands[i], spec.summands[j]));
        if (spec.canceled[i] && spec.canceled[j]) v = "[" + v + "]";  // intersection
        return v;
    };
    std::size_t width = 0;
    for (std::size_t i = 0; i < n; ++i) width = std::max(width, label(i).size());
    width = std::max(width, std::to_string(spec.length).size() + 2);
    auto pad = [&](const std::string& s) {
        return std::string(width - s.size(), ' ') + s;
    };
    out << pad("");
    for (std::size_t j = 0; j < n; ++j) out << ' ' << pad(label(j));
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << pad(label(i));
        for (std::size_t j = 0; j < n; ++j) out << ' ' << pad(cell(i, j));
        out << '\n';
    }
}

std::string export_grid(std::size_t x, TableKind kind, GridFormat format, const Guard& guard) {
    const GridSpec spec = grid_spec(x, kind, guard);
    std::ostringstream out;
    write_grid(spec, format, out);
    return out.str();
}

}  // namespace fantomlab
