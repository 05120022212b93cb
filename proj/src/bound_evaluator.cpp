#include "fantomlab/bound_evaluator.hpp"

#include "fantomlab/primal_core.hpp"

namespace fantomlab {

BigRat density(std::size_t x) {
    if (x < 2) throw std::invalid_argument("density needs x >= 2");
    BigRat d = 1;
    const auto primes = first_primes(x);
    for (std::size_t i = 1; i < primes.size(); ++i) {
        BigRat f(primes[i] - 2, primes[i]);
        f.canonicalize();
        d *= f;
    }
    return d;
}

namespace {

BoundReport c_report(std::uint64_t e, std::size_t x, const BigRat& dens,
                     std::uint64_t p) {
    BoundReport report;
    report.x = x;
    report.p = p;
    report.e = e;
    report.density = dens;
    report.mean_term = dens * BigRat(e) / 4;
    report.summand_one_term = -1;
    report.variance_term = -2 * static_cast<long>(x);
    report.evenness_term = 2;
    report.c = report.mean_term + report.summand_one_term + report.variance_term +
               report.evenness_term;
    report.crossover = report.c > 1;
    return report;
}

}  // namespace

BoundReport c_of(std::uint64_t e, std::size_t x) {
    if (e % 2 != 0) throw std::invalid_argument("C is evaluated at even numbers only");
    return c_report(e, x, density(x), first_primes(x).back());
}

CrossoverScan crossover_scan(std::size_t x_max) {
    if (x_max < 2) throw std::invalid_argument("crossover scan needs x_max >= 2");
    CrossoverScan scan;
    const auto primes = first_primes(x_max);
    BigRat dens = 1;
    for (std::size_t x = 2; x <= x_max; ++x) {
        BigRat f(primes[x - 1] - 2, primes[x - 1]);
        f.canonicalize();
        dens *= f;
        const std::uint64_t p = primes[x - 1];
        scan.table.push_back(c_report(p * p + 1, x, dens, p));
        if (!scan.first_x && scan.table.back().crossover) scan.first_x = x;
    }
    scan.monotone_suffix_from = x_max;
    for (std::size_t i = scan.table.size(); i-- > 1;) {
        if (scan.table[i].c > scan.table[i - 1].c) {
            scan.monotone_suffix_from = scan.table[i - 1].x;
        } else {
            break;
        }
    }
    return scan;
}

SweepResult c_sweep(std::size_t x) {
    if (x < 2) throw std::invalid_argument("sweep needs x >= 2");
    const auto primes = first_primes(x + 1);
    const std::uint64_t p = primes[x - 1];
    const std::uint64_t p_next = primes[x];
    const BigRat dens = density(x);

    SweepResult sweep;
    sweep.step = dens / 2;
    sweep.strictly_increasing = true;
    for (std::uint64_t e = p * p + 1; e <= p_next * p_next - 1; e += 2) {
        sweep.table.push_back(c_report(e, x, dens, p));
        const std::size_t n = sweep.table.size();
        if (n > 1 && !(sweep.table[n - 1].c > sweep.table[n - 2].c)) {
            sweep.strictly_increasing = false;
        }
    }
    return sweep;
}

}  // namespace fantomlab
