#include "fantomlab/comb_analysis.hpp"

#include <stdexcept>
#include <vector>

namespace fantomlab {
namespace {

// Exhaustive offset scan of mask (positions 1..n) with a window of length w.
void scan_windows(const std::vector<bool>& mask, std::uint64_t w, ScanMode scan,
                  WindowSpreadReport& report) {
    const std::uint64_t n = mask.size();
    if (w < 1 || w > n) throw std::invalid_argument("window length must be in [1, L]");

    std::vector<std::uint64_t> prefix(n + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (mask[i] ? 1 : 0);

    const std::uint64_t offsets = scan == ScanMode::Cyclic ? n : n - w + 1;
    std::uint64_t mn = ~std::uint64_t(0), mx = 0;
    for (std::uint64_t o = 0; o < offsets; ++o) {
        std::uint64_t count;
        if (o + w <= n) {
            count = prefix[o + w] - prefix[o];
        } else {
            count = prefix[n] - prefix[o] + prefix[o + w - n];
        }
        if (count < mn) mn = count;
        if (count > mx) mx = count;
    }
    report.window = w;
    report.total_length = n;
    report.scan = scan;
    report.min_count = mn;
    report.max_count = mx;
    report.spread = mx - mn;
    report.offsets_scanned = offsets;
    report.claim_holds = report.spread <= report.claim_bound;
}

}  // namespace

WindowSpreadReport tooth_spread(std::uint64_t p, std::uint64_t window, std::uint64_t total,
                                ScanMode scan) {
    if (p < 2 || p > total) throw std::invalid_argument("comb step must be in [2, total]");
    std::vector<bool> mask(total, false);
    for (std::uint64_t v = p; v <= total; v += p) mask[v - 1] = true;
    WindowSpreadReport report;
    report.mode = "single-comb";
    report.parameter = p;
    report.claim_bound = 1;
    scan_windows(mask, window, scan, report);
    return report;
}

WindowSpreadReport superposed_spread(const FantomSystem& system, std::uint64_t window,
                                     bool canceled, ScanMode scan) {
    std::vector<bool> mask(system.indicator());
    if (canceled) mask.flip();
    WindowSpreadReport report;
    report.mode = canceled ? "canceled" : "units";
    report.x = system.x();
    report.claim_bound = system.x();
    scan_windows(mask, window, scan, report);
    return report;
}

WindowSpreadReport sum_comb_spread(const FantomSystem& system, std::uint64_t e,
                                   std::uint64_t window, ScanMode scan) {
    if (e % 2 != 0) throw std::invalid_argument("sum-comb target must be even");
    const std::uint64_t L = system.length();
    const std::uint64_t em = e % L;
    std::vector<bool> mask(L, false);
    for (std::uint64_t a = 1; a <= L; ++a) {
        if (!system.is_unit(a)) continue;
        std::uint64_t partner = (em + L - a % L) % L;  // e - a mod L
        if (partner == 0) partner = L;
        mask[a - 1] = system.is_unit(partner);
    }
    WindowSpreadReport report;
    report.mode = "sum-comb";
    report.x = system.x();
    report.parameter = e;
    report.claim_bound = 2 * system.x();
    scan_windows(mask, window, scan, report);
    return report;
}

}  // namespace fantomlab
