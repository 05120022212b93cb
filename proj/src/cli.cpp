#include "fantomlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "fantomlab/bound_evaluator.hpp"
#include "fantomlab/comb_analysis.hpp"
#include "fantomlab/goldbach_verifier.hpp"
#include "fantomlab/primal_core.hpp"
#include "fantomlab/reporting.hpp"
#include "fantomlab/sum_systems.hpp"

namespace fantomlab {
namespace {

using JsonRow = nlohmann::ordered_json;

struct RunConfig {
    OutputFormat format = OutputFormat::Text;
    std::string output_path;
    unsigned workers = 0;  // 0 = all available
    Guard guard;
    std::string cache_path;
    bool linear = false;
    bool with_table = false;
    bool all_witnesses = false;
    bool all_windows = false;
    bool inject_fault = false;
    std::vector<std::uint64_t> windows;
    std::vector<std::uint64_t> targets;
};

std::string row_to_csv(const JsonRow& row) {
    std::string line;
    bool first = true;
    for (const auto& item : row.items()) {
        if (!first) line += ',';
        first = false;
        const auto& v = item.value();
        if (v.is_string()) line += csv_escape(v.get<std::string>());
        else if (v.is_boolean()) line += v.get<bool>() ? "true" : "false";
        else line += v.dump();
    }
    return line;
}

// Collects data rows and claims; claims of document-only commands stay off
// the byte stream in text/csv so the document is exactly the data.
class Emitter {
public:
    Emitter(std::ostream& stream, std::ostream& log, OutputFormat format, bool document_only)
        : stream_(stream), log_(log), format_(format), document_only_(document_only) {}

    std::ostream& stream() { return stream_; }
    OutputFormat format() const { return format_; }

    void row(const JsonRow& json_row, const std::string& text_line, bool text_visible = true) {
        switch (format_) {
            case OutputFormat::Json: stream_ << json_row.dump() << '\n'; break;
            case OutputFormat::Csv: stream_ << row_to_csv(json_row) << '\n'; break;
            case OutputFormat::Text:
                if (text_visible) stream_ << text_line << '\n';
                break;
        }
    }

    void claim(ClaimReport report) { claims_.push_back(std::move(report)); }

    const std::vector<ClaimReport>& claims() const { return claims_; }

    int finish() {
        const bool claims_to_stream = format_ == OutputFormat::Json || !document_only_;
        for (const ClaimReport& c : claims_) {
            if (claims_to_stream) {
                stream_ << emit_claim(c, format_) << '\n';
            } else {
                log_ << emit_claim(c, OutputFormat::Text) << '\n';
            }
        }
        int code = 0;
        for (const ClaimReport& c : claims_) {
            if (c.status == ClaimStatus::Violated || c.status == ClaimStatus::AuditedFail) {
                code = 2;
            }
        }
        return code;
    }

private:
    std::ostream& stream_;
    std::ostream& log_;
    OutputFormat format_;
    bool document_only_;
    std::vector<ClaimReport> claims_;
};

ClaimReport make_claim(std::string id, bool ok, bool audited,
                       std::vector<std::pair<std::string, std::string>> params,
                       std::string evidence) {
    ClaimReport report;
    report.id = std::move(id);
    report.status = audited ? (ok ? ClaimStatus::AuditedPass : ClaimStatus::AuditedFail)
                            : (ok ? ClaimStatus::Verified : ClaimStatus::Violated);
    report.params = std::move(params);
    report.evidence = std::move(evidence);
    return report;
}

std::string u64s(std::uint64_t v) { return std::to_string(v); }

// ---------------------------------------------------------------- fantom ---

void run_fantom(Emitter& em, const RunConfig& cfg, std::size_t x,
                std::optional<std::uint64_t> multiplier, bool all_multipliers,
                bool emit_data = true) {
    const FantomSystem direct = fantom_direct(x, cfg.guard);
    const RecursiveConstruction rec = fantom_recursive(x, cfg.guard);
    const auto param_x = std::pair<std::string, std::string>{"x", u64s(x)};

    if (emit_data) {
        std::string line;
        for (std::uint64_t r : direct.residues()) {
            if (!line.empty()) line += ' ';
            line += u64s(r);
        }
        JsonRow j{{"type", "fantom"},
                  {"x", x},
                  {"length", direct.length()},
                  {"residues", direct.residues()}};
        if (em.format() == OutputFormat::Csv) {
            for (std::uint64_t r : direct.residues()) {
                em.row(JsonRow{{"type", "residue"}, {"value", r}}, "");
            }
        } else {
            em.row(j, line);
        }
    }

    std::uint64_t observed = direct.residues().size();
    if (cfg.inject_fault) ++observed;
    em.claim(make_claim("fantom.unit-count", BigInt(observed) == direct.basis().units, false,
                        {param_x},
                        u64s(observed) + " residues, A = " + direct.basis().units.get_str()));

    bool symmetric = direct.is_unit(1) && !direct.is_unit(direct.length());
    for (std::uint64_t r : direct.residues()) {
        if (!direct.is_unit(direct.length() - r)) {
            symmetric = false;
            break;
        }
    }
    em.claim(make_claim("fantom.symmetry", symmetric, false, {param_x},
                        "closed under r -> L - r; 1 kept, L = " + u64s(direct.length()) +
                            " canceled"));

    bool agree = rec.system.residues() == direct.residues();
    // K must be exactly the canceled presystem elements.
    std::vector<std::uint64_t> canceled_pf;
    for (std::uint64_t v : rec.presystem) {
        if (!direct.is_unit(v)) canceled_pf.push_back(v);
    }
    agree = agree && canceled_pf == rec.canceling;
    if (x >= 2) {
        agree = agree && BigInt(rec.canceling.size()) == unit_count(x - 1);
    }
    em.claim(make_claim("fantom.recursive-agree", agree, false, {param_x},
                        "presystem " + u64s(rec.presystem.size()) + ", canceling " +
                            u64s(rec.canceling.size()) + ", residues " +
                            u64s(direct.residues().size())));

    auto check_permutation = [&](std::uint64_t m) {
        const ProductDecomposition dec = multiply_residues(direct, m);
        std::vector<std::uint64_t> parts;
        parts.reserve(dec.entries.size());
        bool consistent = true;
        for (const auto& entry : dec.entries) {
            parts.push_back(entry.residue);
            consistent = consistent && entry.quotient * direct.length() + entry.residue ==
                                           entry.raw;
        }
        std::sort(parts.begin(), parts.end());
        return consistent && parts == direct.residues();
    };

    if (multiplier) {
        const ProductDecomposition dec = multiply_residues(direct, *multiplier);
        std::string seq;
        for (const auto& entry : dec.entries) {
            if (!seq.empty()) seq += ' ';
            seq += u64s(entry.residue);
        }
        JsonRow j{{"type", "product"}, {"x", x}, {"factor", *multiplier}};
        std::vector<std::uint64_t> residues, quotients;
        for (const auto& entry : dec.entries) {
            residues.push_back(entry.residue);
            quotients.push_back(entry.quotient);
        }
        j["residues"] = residues;
        j["quotients"] = quotients;
        if (emit_data) {
            if (em.format() == OutputFormat::Csv) {
                for (const auto& entry : dec.entries) {
                    em.row(JsonRow{{"type", "product"},
                                   {"factor", *multiplier},
                                   {"raw", entry.raw},
                                   {"quotient", entry.quotient},
                                   {"residue", entry.residue}},
                           "");
                }
            } else {
                em.row(j, "multiply " + u64s(*multiplier) + ": " + seq);
            }
        }
        em.claim(make_claim("fantom.multiply-permute", check_permutation(*multiplier), false,
                            {param_x, {"m", u64s(*multiplier)}},
                            "residue parts of " + u64s(*multiplier) +
                                "*F form a permutation of F"));
    }
    if (all_multipliers) {
        bool all_ok = true;
        std::uint64_t bad = 0;
        for (std::uint64_t m : direct.residues()) {
            if (!check_permutation(m)) {
                all_ok = false;
                bad = m;
                break;
            }
        }
        em.claim(make_claim("fantom.multiply-permute", all_ok, false, {param_x},
                            all_ok ? "all " + u64s(direct.residues().size()) +
                                         " multipliers permute the residues"
                                   : "multiplier " + u64s(bad) + " fails"));
    }
}

// --------------------------------------------------------------- rs / prs ---

void emit_count_rows(Emitter& em, const RepCountTable& table, bool with_table) {
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        const std::uint64_t e = 2 * (k + 1);
        em.row(JsonRow{{"type", "count"}, {"e", e}, {"count", table.counts[k]}},
               u64s(e) + " " + u64s(table.counts[k]), with_table);
    }
}

void run_rs(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    RepCountTable table = rs_table(x, cfg.guard);
    if (cfg.inject_fault) {
        table.counts[0] += 1;
        table.total += 1;
    }
    const auto param_x = std::pair<std::string, std::string>{"x", u64s(x)};
    if (emit_data) emit_count_rows(em, table, cfg.with_table);

    const BigInt expected = table.basis.units * table.basis.units;
    em.claim(make_claim("rs.total", table.total == expected, false, {param_x},
                        "sum r(e) = " + table.total.get_str() + ", A^2 = " +
                            expected.get_str()));

    const SymmetryReport sym = verify_symmetry(table);
    em.claim(make_claim("rs.symmetry", sym.pass, false, {param_x},
                        u64s(table.counts.size()) + " even keys, " + u64s(sym.mirror_pairs) +
                            " mirror pairs + center r(L) = " +
                            sym.expected_center.get_str()));

    const MinRepReport min_rep = min_rep_check(table);
    em.claim(make_claim("rs.min-bound", min_rep.pass, false, {param_x},
                        "min r(e) = " + u64s(min_rep.observed_min) + " at e = " +
                            u64s(min_rep.argmin_e) + ", bound " + min_rep.bound.get_str()));
}

void run_prs(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const PrsResult result = prs_table(x, cfg.guard);
    const auto param_x = std::pair<std::string, std::string>{"x", u64s(x)};
    if (emit_data) emit_count_rows(em, result.table, cfg.with_table);

    const BigInt a_prev = unit_count(x - 1);
    const BigInt p(first_primes(x).back());
    const BigInt expected = a_prev * a_prev * p * p;
    em.claim(make_claim("prs.total", result.table.total == expected, false, {param_x},
                        "sum r(e) = " + result.table.total.get_str() + ", A'^2 p^2 = " +
                            expected.get_str()));
    em.claim(make_claim("prs.lifting", result.lifting_ok, false, {param_x},
                        result.lifting_ok
                            ? "direct convolution equals p_x * RS(p_{x-1}) lift"
                            : "first mismatch at e = " + u64s(result.first_mismatch_e)));
}

void run_balance(Emitter& em, const RunConfig& cfg, std::size_t x) {
    const BalanceReport report = balance_check(x, cfg.guard);
    em.claim(make_claim("rs.balance", report.pass(), false, {{"x", u64s(x)}},
                        "A^2 identity " + std::string(report.identity_ok ? "holds" : "fails") +
                            "; totals RS = " + report.rs_total.get_str() + ", PRS = " +
                            report.prs_total.get_str()));
}

// ---------------------------------------------------------------- epsilon ---

void run_epsilon(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const EpsilonLedger ledger = epsilon_ledger(x, cfg.guard);
    const auto param_x = std::pair<std::string, std::string>{"x", u64s(x)};

    if (emit_data) {
        for (std::size_t k = 0; k < ledger.prs.size(); ++k) {
            const std::uint64_t e = 2 * (k + 1);
            em.row(JsonRow{{"type", "epsilon"},
                           {"e", e},
                           {"prs", ledger.prs[k]},
                           {"rs", ledger.rs[k]},
                           {"reduction", ledger.reduction[k]},
                           {"epsilon", ledger.epsilon[k]}},
                   u64s(e) + " " + u64s(ledger.prs[k]) + " " + u64s(ledger.rs[k]) + " " +
                       u64s(ledger.reduction[k]) + " " + u64s(ledger.epsilon[k]),
                   cfg.with_table);
        }
    }

    em.claim(make_claim("epsilon.total", ledger.epsilon_total_ok, false, {param_x},
                        "sum epsilon = " + ledger.epsilon_total.get_str() +
                            " over canceling set of " + u64s(ledger.canceling.size())));
    em.claim(make_claim("epsilon.reduction-total", ledger.reduction_total_ok, false, {param_x},
                        "sum reduction = " + ledger.reduction_total.get_str() +
                            " = (2 p_x - 1) A'^2"));
    em.claim(make_claim(
        "epsilon.reconcile", ledger.reconciled, false, {param_x},
        ledger.reconciled
            ? "prs - rs = 2*cross - epsilon at every even"
            : "first unreconciled even " + u64s(ledger.first_unreconciled_e)));
}

// ------------------------------------------------------ induction / blocks ---

void run_induction(Emitter& em, const RunConfig& cfg, std::size_t x) {
    const InductionReport report = induction_check(x, cfg.guard);
    for (std::uint64_t e : report.violations) {
        em.row(JsonRow{{"type", "induction-violation"}, {"e", e}}, "violation at e = " + u64s(e));
    }
    em.claim(make_claim("induction.per-even", report.pass, false, {{"x", u64s(x)}},
                        u64s(report.evens_checked) + " evens checked, " +
                            u64s(report.violation_count) + " below (p_x - 2) * r'(e)"));
}

void run_blocks(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const BlockAudit audit = block_audit(x, cfg.guard);
    if (emit_data) {
        for (const auto& block : audit.blocks) {
            em.row(JsonRow{{"type", "block"},
                           {"index", block.index},
                           {"reduction_sum", block.reduction_sum},
                           {"cancel_bound", audit.cancel_bound.get_str()},
                           {"remaining_sum", block.remaining_sum},
                           {"remain_bound", audit.remain_bound.get_str()}},
                   "block " + u64s(block.index) + ": reduction " + u64s(block.reduction_sum) +
                       " <= " + audit.cancel_bound.get_str() + ", remaining " +
                       u64s(block.remaining_sum) + " >= " + audit.remain_bound.get_str());
        }
    }
    em.claim(make_claim("blocks.cancel-bound", audit.cancel_ok, false, {{"x", u64s(x)}},
                        u64s(audit.blocks.size()) + " blocks, each cancels <= 2 A'^2 = " +
                            audit.cancel_bound.get_str()));
    em.claim(make_claim("blocks.remain-bound", audit.remain_ok, false, {{"x", u64s(x)}},
                        "each block keeps >= (p_x - 2) A'^2 = " +
                            audit.remain_bound.get_str()));
}

// ------------------------------------------------------------------ combs ---

std::vector<std::uint64_t> default_windows(std::uint64_t p, std::uint64_t L) {
    std::set<std::uint64_t> ws;
    for (std::uint64_t w : {p, 2 * p, p * p, L / 3, L / 2, L}) {
        if (w >= 1 && w <= L) ws.insert(w);
    }
    return {ws.begin(), ws.end()};
}

std::string spread_text(const WindowSpreadReport& r) {
    std::string head = r.mode;
    if (r.mode == "single-comb") head += " p=" + u64s(r.parameter);
    if (r.mode == "sum-comb") head += " e=" + u64s(r.parameter);
    return head + " W=" + u64s(r.window) +
           (r.scan == ScanMode::Cyclic ? " cyclic" : " linear") + ": counts [" +
           u64s(r.min_count) + "," + u64s(r.max_count) + "] spread " + u64s(r.spread) +
           " bound " + u64s(r.claim_bound) + (r.claim_holds ? " ok" : " exceeded");
}

JsonRow spread_row(const WindowSpreadReport& r) {
    return JsonRow{{"type", "spread"},
                   {"mode", r.mode},
                   {"parameter", r.parameter},
                   {"window", r.window},
                   {"scan", r.scan == ScanMode::Cyclic ? "cyclic" : "linear"},
                   {"min", r.min_count},
                   {"max", r.max_count},
                   {"spread", r.spread},
                   {"bound", r.claim_bound},
                   {"holds", r.claim_holds}};
}

void run_combs(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const FantomSystem system = fantom_direct(x, cfg.guard);
    const std::uint64_t L = system.length();
    const auto param_x = std::pair<std::string, std::string>{"x", u64s(x)};

    std::vector<std::uint64_t> windows =
        cfg.windows.empty() ? default_windows(system.basis().top(), L) : cfg.windows;
    for (std::uint64_t w : windows) {
        if (w < 1 || w > L) throw std::invalid_argument("window must be in [1, L]");
    }
    std::vector<std::uint64_t> wide = windows;
    if (cfg.all_windows) {
        wide.resize(L);
        std::iota(wide.begin(), wide.end(), 1);
    }
    std::vector<ScanMode> scans{ScanMode::Cyclic};
    if (cfg.linear) scans.push_back(ScanMode::Linear);

    // Single combs: one comb per basis prime, spread <= 1 is a theorem here
    // because every basis prime divides L.
    bool single_ok = true;
    WindowSpreadReport single_worst{};
    for (ScanMode scan : scans) {
        for (std::uint64_t p : system.basis().primes) {
            for (std::uint64_t w : wide) {
                const WindowSpreadReport r = tooth_spread(p, w, L, scan);
                if (!cfg.all_windows && emit_data) em.row(spread_row(r), spread_text(r));
                if (single_worst.window == 0 || r.spread > single_worst.spread) {
                    single_worst = r;
                }
                single_ok = single_ok && r.claim_holds;
            }
        }
    }
    em.claim(make_claim("combs.single-comb", single_ok, false, {param_x},
                        "worst spread " + u64s(single_worst.spread) + " (p=" +
                            u64s(single_worst.parameter) + ", W=" +
                            u64s(single_worst.window) + "), bound 1"));

    // Superposed combs: audited against the bound x.
    for (bool canceled : {true, false}) {
        bool ok = true;
        WindowSpreadReport worst{};
        for (ScanMode scan : scans) {
            for (std::uint64_t w : wide) {
                const WindowSpreadReport r = superposed_spread(system, w, canceled, scan);
                if (!cfg.all_windows && emit_data) em.row(spread_row(r), spread_text(r));
                if (worst.window == 0 || r.spread > worst.spread) worst = r;
                ok = ok && r.claim_holds;
            }
        }
        em.claim(make_claim(canceled ? "combs.superposed-canceled" : "combs.superposed-units",
                            ok, true, {param_x},
                            "worst spread " + u64s(worst.spread) + " (W=" +
                                u64s(worst.window) + "), bound x = " + u64s(x)));
    }

    // Sum combs: audited against 2x, scanned over the realized even targets.
    std::vector<std::uint64_t> targets = cfg.targets;
    if (targets.empty()) {
        targets.resize(L / 2);
        for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = 2 * (i + 1);
    }
    bool sum_ok = true;
    WindowSpreadReport worst{};
    const bool per_target = !cfg.targets.empty();
    for (ScanMode scan : scans) {
        for (std::uint64_t w : windows) {
            WindowSpreadReport window_worst{};
            for (std::uint64_t e : targets) {
                const WindowSpreadReport r = sum_comb_spread(system, e, w, scan);
                if (per_target && emit_data) em.row(spread_row(r), spread_text(r));
                if (window_worst.window == 0 || r.spread > window_worst.spread) {
                    window_worst = r;
                }
                sum_ok = sum_ok && r.claim_holds;
            }
            if (worst.window == 0 || window_worst.spread > worst.spread) worst = window_worst;
            if (!per_target && emit_data) {
                em.row(JsonRow{{"type", "spread"},
                               {"mode", "sum-comb"},
                               {"scan", scan == ScanMode::Cyclic ? "cyclic" : "linear"},
                               {"window", w},
                               {"targets", targets.size()},
                               {"worst_spread", window_worst.spread},
                               {"worst_e", window_worst.parameter},
                               {"bound", 2 * x},
                               {"holds", window_worst.spread <= 2 * x}},
                       "sum-comb W=" + u64s(w) +
                           (scan == ScanMode::Cyclic ? " cyclic" : " linear") + ": " +
                           u64s(targets.size()) + " targets, worst spread " +
                           u64s(window_worst.spread) + " (e=" +
                           u64s(window_worst.parameter) + ") bound " + u64s(2 * x));
            }
        }
    }
    em.claim(make_claim("combs.sum-comb", sum_ok, true, {param_x},
                        "worst spread " + u64s(worst.spread) + " (e=" +
                            u64s(worst.parameter) + ", W=" + u64s(worst.window) +
                            "), bound 2x = " + u64s(2 * x)));

    if (cfg.inject_fault) {
        em.claim(make_claim("combs.injected-fault", false, true, {param_x},
                            "synthetic audited-fail for exit-code tests"));
    }
}

// ------------------------------------------------------------------ bound ---

void bound_row(Emitter& em, const BoundReport& r, bool text_visible = true) {
    em.row(JsonRow{{"type", "bound"},
                   {"x", r.x},
                   {"p", r.p},
                   {"e", r.e},
                   {"density", rational_string(r.density)},
                   {"density_decimal", decimal_string(r.density)},
                   {"mean", rational_string(r.mean_term)},
                   {"summand_one", r.summand_one_term},
                   {"variance", r.variance_term},
                   {"evenness", r.evenness_term},
                   {"C", rational_string(r.c)},
                   {"C_decimal", decimal_string(r.c)},
                   {"crossover", r.crossover}},
           "C(" + u64s(r.e) + ", x=" + u64s(r.x) + ") = " + rational_string(r.c) + " (" +
               decimal_string(r.c) + "), density " + rational_string(r.density) + ", terms " +
               rational_string(r.mean_term) + " " + std::to_string(r.summand_one_term) + " " +
               std::to_string(r.variance_term) + " +" + std::to_string(r.evenness_term) +
               ", crossover " + (r.crossover ? "yes" : "no"),
           text_visible);
}

void run_bound(Emitter& em, std::size_t x, std::optional<std::uint64_t> e, bool sweep,
               bool emit_data = true) {
    const std::uint64_t p = first_primes(x).back();
    const std::uint64_t point = e.value_or(p * p + 1);
    const BoundReport report = c_of(point, x);
    if (emit_data) bound_row(em, report);

    // density == prod(p_i - 2) / prod_{i>=2} p_i, the min count over places.
    const BigInt places = primorial(x) / 2;
    BigRat quotient(min_rep_bound(x));
    quotient /= BigRat(places);
    quotient.canonicalize();
    em.claim(make_claim("bound.density-quotient", report.density == quotient, false,
                        {{"x", u64s(x)}},
                        "density " + rational_string(report.density) + " = " +
                            min_rep_bound(x).get_str() + "/" + places.get_str()));

    if (sweep) {
        const SweepResult result = c_sweep(x);
        if (emit_data) {
            for (const BoundReport& r : result.table) bound_row(em, r);
        }
        em.claim(make_claim("bound.sweep-monotone", result.strictly_increasing, false,
                            {{"x", u64s(x)}},
                            u64s(result.table.size()) + " evens, step " +
                                rational_string(result.step) + " = density/2"));
    }
}

void run_crossover(Emitter& em, std::size_t x_max, bool emit_data = true) {
    const CrossoverScan scan = crossover_scan(x_max);
    if (emit_data) {
        for (const BoundReport& r : scan.table) bound_row(em, r);
    }
    const std::string suffix = "C increasing for x >= " + u64s(scan.monotone_suffix_from);
    if (x_max >= 16) {
        const bool at_expected = scan.first_x && *scan.first_x == 16;
        std::string where = scan.first_x
                                ? "first C > 1 at x = " + u64s(*scan.first_x) + " (p = " +
                                      u64s(scan.table[*scan.first_x - 2].p) + ", e = " +
                                      u64s(scan.table[*scan.first_x - 2].e) + ")"
                                : "no crossover found";
        em.claim(make_claim("crossover.at-53sq", at_expected, false,
                            {{"x_max", u64s(x_max)}}, where + "; " + suffix));
    } else {
        em.claim(make_claim("crossover.none-yet", !scan.first_x, false,
                            {{"x_max", u64s(x_max)}},
                            (scan.first_x ? "unexpected crossover at x = " + u64s(*scan.first_x)
                                          : "no crossover up to x_max") +
                                "; " + suffix));
    }
}

// -------------------------------------------------------------- goldbach ---

PrimeSieve obtain_sieve(const RunConfig& cfg, std::uint64_t limit) {
    if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
        PrimeSieve sieve = PrimeSieve::load(cfg.cache_path);
        if (sieve.limit() >= limit) return sieve;
    }
    PrimeSieve sieve = PrimeSieve::build(limit, cfg.guard);
    if (!cfg.cache_path.empty()) sieve.save(cfg.cache_path);
    return sieve;
}

void run_window(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const auto primes = first_primes(x + 1);
    const PrimeSieve sieve = obtain_sieve(cfg, primes[x] * primes[x]);
    const WindowCheckReport report = prime_window_check(x, sieve);
    if (emit_data) {
        em.row(JsonRow{{"type", "window"},
                       {"x", x},
                       {"lo", report.lo},
                       {"hi", report.hi},
                       {"units", report.units_seen},
                       {"first_composite_unit", report.hi}},
               "window (" + u64s(report.lo) + ", " + u64s(report.hi) + "): " +
                   u64s(report.units_seen) + " units; first composite unit " +
                   u64s(report.hi));
    }
    const bool pass = report.units_all_prime && report.primes_all_units &&
                      report.first_composite_unit_is_square;
    em.claim(make_claim("window.prime-window", pass, false, {{"x", u64s(x)}},
                        u64s(report.units_seen) + " units in (" + u64s(report.lo) + ", " +
                            u64s(report.hi) + ") are exactly the primes; " +
                            u64s(report.hi) + " is the first composite unit"));
}

void run_stringent(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const auto primes = first_primes(x + 1);
    const PrimeSieve sieve = obtain_sieve(cfg, primes[x] * primes[x]);
    const StringentReport report = stringent_check(x, sieve, cfg.all_witnesses);
    if (emit_data) {
        for (const GoldbachWitness& w : report.witnesses) {
            em.row(JsonRow{{"type", "witness"},
                           {"e", w.e},
                           {"q", w.q},
                           {"r", w.r},
                           {"threshold", w.threshold},
                           {"stringent", w.stringent}},
                   u64s(w.e) + " = " + u64s(w.q) + " + " + u64s(w.r));
        }
    }
    for (std::uint64_t e : report.violations) {
        em.row(JsonRow{{"type", "violation"}, {"e", e}}, "no witness for " + u64s(e));
    }
    em.claim(make_claim("stringent.range", report.pass(), false, {{"x", u64s(x)}},
                        u64s(report.evens_checked) + " evens in (" + u64s(report.lo) + ", " +
                            u64s(report.hi) + "), " + u64s(report.violations.size()) +
                            " without a prime pair above p_x = " + u64s(primes[x - 1])));
}

void run_scan(Emitter& em, const RunConfig& cfg, std::uint64_t e_max, bool emit_data = true) {
    const PrimeSieve sieve = obtain_sieve(cfg, e_max);
    const ConjectureScanReport report = conjecture_scan(e_max, sieve, cfg.workers);
    if (emit_data) {
        em.row(JsonRow{{"type", "scan"},
                       {"e_max", report.e_max},
                       {"checked_below_2810", report.checked_below},
                       {"checked_above_2810", report.checked_above},
                       {"violations", report.violations.size()}},
               "scan to " + u64s(report.e_max) + ": " + u64s(report.checked_below) +
                   " evens <= 2810, " + u64s(report.checked_above) + " above, " +
                   u64s(report.violations.size()) + " violations");
    }
    for (std::uint64_t e : report.violations) {
        em.row(JsonRow{{"type", "violation"}, {"e", e}}, "no stringent pair for " + u64s(e));
    }
    em.claim(make_claim("conjecture.scan", report.pass(), false, {{"max", u64s(e_max)}},
                        u64s(report.checked_below + report.checked_above) +
                            " evens checked, " + u64s(report.violations.size()) +
                            " violations"));
}

void run_audit(Emitter& em, const RunConfig& cfg, std::size_t x, bool emit_data = true) {
    const BoundAuditReport report = bound_audit(x, cfg.workers);
    if (emit_data) {
        for (const AuditRecord& record : report.records) {
            em.row(JsonRow{{"type", "audit"},
                           {"e", record.e},
                           {"empirical", record.empirical_pairs},
                           {"C", rational_string(record.c_bound)},
                           {"C_decimal", decimal_string(record.c_bound)},
                           {"slack", rational_string(record.slack)},
                           {"slack_decimal", decimal_string(record.slack)}},
                   "e=" + u64s(record.e) + " empirical=" + u64s(record.empirical_pairs) +
                       " C=" + decimal_string(record.c_bound) + " slack=" +
                       decimal_string(record.slack));
        }
    }
    em.claim(make_claim("audit.c-bound", report.claim_holds, true, {{"x", u64s(x)}},
                        u64s(report.records.size()) + " evens, min slack " +
                            rational_string(report.min_slack) + " (" +
                            decimal_string(report.min_slack) + ") at e = " +
                            u64s(report.argmin_e)));
}

// ------------------------------------------------------------------- grid ---

void run_grid(Emitter& em, const RunConfig& cfg, std::size_t x, TableKind kind) {
    const GridSpec spec = grid_spec(x, kind, cfg.guard);
    if (em.format() == OutputFormat::Json) {
        em.row(JsonRow{{"type", "grid"},
                       {"kind", kind == TableKind::RS ? "RS" : "PRS"},
                       {"x", x},
                       {"length", spec.length},
                       {"summands", spec.summands}},
               "");
        for (std::size_t i = 0; i < spec.summands.size(); ++i) {
            std::vector<std::uint64_t> cells(spec.summands.size());
            for (std::size_t j = 0; j < spec.summands.size(); ++j) {
                cells[j] = grid_cell(spec, spec.summands[i], spec.summands[j]);
            }
            em.row(JsonRow{{"type", "grid-row"},
                           {"summand", spec.summands[i]},
                           {"canceled", static_cast<bool>(spec.canceled[i])},
                           {"cells", cells}},
                   "");
        }
    } else {
        write_grid(spec, em.format() == OutputFormat::Csv ? GridFormat::Csv : GridFormat::Text,
                   em.stream());
    }
    std::uint64_t canceled = 0;
    for (bool c : spec.canceled) canceled += c ? 1 : 0;
    em.claim(make_claim("grid.export", true, false,
                        {{"x", u64s(x)}, {"kind", kind == TableKind::RS ? "RS" : "PRS"}},
                        u64s(spec.summands.size()) + "x" + u64s(spec.summands.size()) +
                            " cells, " + u64s(canceled) + " canceled summands, " +
                            u64s(canceled * canceled) + " intersections"));
}

// -------------------------------------------------------------------- all ---

void run_all(Emitter& em, const RunConfig& cfg, std::size_t x) {
    run_fantom(em, cfg, x, std::nullopt, BigInt(1000) >= unit_count(x), false);
    run_rs(em, cfg, x, false);
    if (x >= 2) {
        run_prs(em, cfg, x, false);
        run_balance(em, cfg, x);
        run_epsilon(em, cfg, x, false);
        run_induction(em, cfg, x);
        run_blocks(em, cfg, x, false);
        run_bound(em, x, std::nullopt, false, false);
    }
    run_combs(em, cfg, x, false);
    run_window(em, cfg, x, false);
    run_stringent(em, cfg, x, false);
    run_crossover(em, 18, false);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"verification laboratory for primorial residue systems, their sum counts, "
                 "and stringent prime-pair decompositions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value configuration file");
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunConfig cfg;
    std::string format_name = "text";
    app.add_option("--format", format_name, "report format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--output", cfg.output_path, "write the report stream to a file");
    app.add_option("--workers", cfg.workers, "worker threads for range scans (0 = all)")
        ->envname("FANTOMLAB_WORKERS");
    app.add_option("--max-length", cfg.guard.max_length, "largest admissible system length L");
    app.add_option("--max-sieve", cfg.guard.max_sieve, "largest admissible sieve limit");
    app.add_option("--cache", cfg.cache_path, "prime table cache file");

    std::size_t x = 0;
    std::uint64_t e_max = 0;
    std::uint64_t multiply_value = 0;
    std::uint64_t bound_e = 0;
    std::size_t x_max = 20;
    bool sweep = false;
    std::string kind_name = "prs";

    auto* c_fantom = app.add_subcommand("fantom", "residues of F(p_x), both constructions");
    c_fantom->add_option("--x", x, "prime count")->required();
    auto* multiply_opt = c_fantom->add_option("--multiply", multiply_value,
                                              "decompose m * F over the system");

    auto* c_rs = app.add_subcommand("rs", "representation counts of F(p_x)");
    c_rs->add_option("--x", x, "prime count")->required();
    c_rs->add_flag("--table", cfg.with_table, "emit the per-even table in text mode");
    c_rs->add_flag("--inject-fault", cfg.inject_fault)->group("");

    auto* c_prs = app.add_subcommand("prs", "representation counts of the presystem PF(p_x)");
    c_prs->add_option("--x", x, "prime count")->required();
    c_prs->add_flag("--table", cfg.with_table, "emit the per-even table in text mode");

    auto* c_epsilon = app.add_subcommand("epsilon", "cancellation ledger PRS -> RS");
    c_epsilon->add_option("--x", x, "prime count")->required();
    c_epsilon->add_flag("--table", cfg.with_table, "emit the per-even ledger in text mode");

    auto* c_induction = app.add_subcommand("induction", "per-even inequality against RS(p_{x-1})");
    c_induction->add_option("--x", x, "prime count")->required();

    auto* c_blocks = app.add_subcommand("blocks", "per-block cancellation audit");
    c_blocks->add_option("--x", x, "prime count")->required();

    auto* c_combs = app.add_subcommand("combs", "window-count spread audits");
    c_combs->add_option("--x", x, "prime count")->required();
    c_combs->add_option("--window", cfg.windows, "window lengths to scan");
    c_combs->add_option("--target", cfg.targets, "sum-comb even targets");
    c_combs->add_flag("--all-windows", cfg.all_windows, "scan every window length");
    c_combs->add_flag("--linear", cfg.linear, "also scan without wrap-around");
    c_combs->add_flag("--inject-fault", cfg.inject_fault)->group("");

    auto* c_bound = app.add_subcommand("bound", "exact lower-bound evaluation C(e, x)");
    c_bound->add_option("--x", x, "prime count")->required();
    auto* bound_e_opt = c_bound->add_option("--e", bound_e, "even evaluation point");
    c_bound->add_flag("--sweep", sweep, "table C over (p_x^2, p_{x+1}^2)");

    auto* c_crossover = app.add_subcommand("crossover", "scan canonical points for C > 1");
    c_crossover->add_option("--x-max", x_max, "largest prime count scanned");

    auto* c_window = app.add_subcommand("window", "primes = units inside (p_x, p_{x+1}^2)");
    c_window->add_option("--x", x, "prime count")->required();

    auto* c_stringent = app.add_subcommand("stringent", "prime pairs above p_x for the window");
    c_stringent->add_option("--x", x, "prime count")->required();
    c_stringent->add_flag("--all-witnesses", cfg.all_witnesses, "list every witness pair");

    auto* c_scan = app.add_subcommand("scan", "strictest prime-pair scan over all evens");
    c_scan->add_option("--max", e_max, "scan evens up to this bound")->required();

    auto* c_audit = app.add_subcommand("audit", "empirical pair counts against C");
    c_audit->add_option("--x", x, "prime count")->required();

    auto* c_grid = app.add_subcommand("grid", "addition-table grid export");
    c_grid->add_option("--x", x, "prime count")->required();
    c_grid->add_option("--kind", kind_name, "rs or prs")
        ->check(CLI::IsMember({"rs", "prs"}));

    auto* c_all = app.add_subcommand("all", "full verification battery for one x");
    c_all->add_option("--x", x, "prime count")->required();

    for (auto* sub : {c_fantom, c_rs, c_prs, c_epsilon, c_induction, c_blocks, c_combs,
                      c_bound, c_crossover, c_window, c_stringent, c_scan, c_audit, c_grid,
                      c_all}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }

    OutputFormat format = OutputFormat::Text;
    if (format_name == "json") format = OutputFormat::Json;
    if (format_name == "csv") format = OutputFormat::Csv;
    cfg.format = format;

    std::ofstream file;
    std::ostream* stream = &out;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::trunc);
        if (!file) {
            err << "resource error: cannot write output file " << cfg.output_path << '\n';
            return 1;
        }
        stream = &file;
    }

    const bool document_only = c_fantom->parsed() || c_grid->parsed();
    Emitter em(*stream, err, format, document_only);

    const auto started = std::chrono::steady_clock::now();
    try {
        if (c_fantom->parsed()) {
            std::optional<std::uint64_t> m;
            if (multiply_opt->count() > 0) m = multiply_value;
            run_fantom(em, cfg, x, m, false);
        } else if (c_rs->parsed()) {
            run_rs(em, cfg, x);
        } else if (c_prs->parsed()) {
            run_prs(em, cfg, x);
            run_balance(em, cfg, x);
        } else if (c_epsilon->parsed()) {
            run_epsilon(em, cfg, x);
        } else if (c_induction->parsed()) {
            run_induction(em, cfg, x);
        } else if (c_blocks->parsed()) {
            run_blocks(em, cfg, x);
        } else if (c_combs->parsed()) {
            run_combs(em, cfg, x);
        } else if (c_bound->parsed()) {
            std::optional<std::uint64_t> e;
            if (bound_e_opt->count() > 0) e = bound_e;
            run_bound(em, x, e, sweep);
        } else if (c_crossover->parsed()) {
            run_crossover(em, x_max);
        } else if (c_window->parsed()) {
            run_window(em, cfg, x);
        } else if (c_stringent->parsed()) {
            run_stringent(em, cfg, x);
        } else if (c_scan->parsed()) {
            run_scan(em, cfg, e_max);
        } else if (c_audit->parsed()) {
            run_audit(em, cfg, x);
        } else if (c_grid->parsed()) {
            run_grid(em, cfg, x, kind_name == "rs" ? TableKind::RS : TableKind::PRS);
        } else if (c_all->parsed()) {
            run_all(em, cfg, x);
        }
    } catch (const guard_error& e) {
        err << "guard violation: " << e.what() << '\n';
        return 1;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return 1;
    }

    const int code = em.finish();
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              started);
    err << "# elapsed " << elapsed.count() << " ms\n";
    return code;
}

}  // namespace fantomlab
