#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace meshalkin {

// All counting quantities and LYM sums are exact. ExactInt is an
// arbitrary-precision signed integer; ExactRat is always kept in lowest
// terms with a positive denominator (GMP canonical form).
using ExactInt = mpz_class;
using ExactRat = mpq_class;

inline ExactInt int_pow(const ExactInt& base, unsigned long exp) {
    ExactInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline ExactInt int_pow(long base, unsigned long exp) {
    return int_pow(ExactInt(base), exp);
}

/// C(n, k) as an exact integer; 0 when k < 0 or k > n.
inline ExactInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    ExactInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

inline ExactRat reciprocal(const ExactInt& x) {
    ExactRat r(1);
    r /= ExactRat(x);
    return r;
}

inline std::string to_decimal(const ExactInt& x) { return x.get_str(); }

} // namespace meshalkin
