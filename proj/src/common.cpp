#include "fantomlab/common.hpp"

namespace fantomlab {

std::string rational_string(const BigRat& value) {
    BigRat v(value);
    v.canonicalize();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

// Number of decimal digits of a positive integer.
long digits10(const BigInt& n) {
    long d = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10));
    if (d <= 1) return 1;
    BigInt pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(d - 1));
    return n < pow ? d - 1 : d;
}

BigInt pow10(long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return p;
}

}  // namespace

std::string decimal_string(const BigRat& value, int digits) {
    if (digits < 1) digits = 1;
    if (sgn(value) == 0) return "0";

    BigInt num = abs(value.get_num());
    BigInt den = value.get_den();

    // e10 = floor(log10(num/den))
    long e10;
    if (num >= den) {
        e10 = digits10(num / den) - 1;
    } else {
        e10 = -1;
        BigInt scaled = num * 10;
        while (scaled < den) {
            scaled *= 10;
            --e10;
        }
    }

    // Mantissa with `digits` digits: round(num * 10^k / den), k = digits-1-e10.
    const long k = digits - 1 - e10;
    BigInt mant;
    if (k >= 0) {
        mant = (2 * num * pow10(k) + den) / (2 * den);
    } else {
        BigInt d = den * pow10(-k);
        mant = (2 * num + d) / (2 * d);
    }
    if (mant >= pow10(digits)) {  // rounding carried into one more digit
        mant /= 10;
        ++e10;
    }

    std::string s = mant.get_str();
    std::string out;
    if (e10 >= digits || e10 < -6) {
        out = s.substr(0, 1) + "." + s.substr(1) + "e" + std::to_string(e10);
    } else if (e10 >= 0) {
        out = s.substr(0, static_cast<std::size_t>(e10) + 1);
        if (e10 + 1 < digits) out += "." + s.substr(static_cast<std::size_t>(e10) + 1);
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-e10 - 1), '0') + s;
    }
    return sgn(value) < 0 ? "-" + out : out;
}

}  // namespace fantomlab
