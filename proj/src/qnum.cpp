#include "meshalkin/qnum.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace meshalkin {

namespace {

void require_q(int q) {
    if (q < 2) {
        throw std::invalid_argument("q must be at least 2, got " +
                                    std::to_string(q));
    }
}

void require_nonneg(int n, const char* what) {
    if (n < 0) {
        throw std::invalid_argument(std::string(what) +
                                    " must be nonnegative, got " +
                                    std::to_string(n));
    }
}

} // namespace

RankVector::RankVector(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw std::invalid_argument("rank vector needs at least one part");
    }
    for (int a : parts_) {
        if (a < 0) {
            throw std::invalid_argument("rank vector parts must be nonnegative");
        }
    }
}

RankVector::RankVector(std::initializer_list<int> parts)
    : RankVector(std::vector<int>(parts)) {}

long RankVector::sum() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0L);
}

ExactInt q_factorial(int n, int q) {
    require_q(q);
    require_nonneg(n, "n");
    ExactInt out = 1;
    ExactInt qpow = 1;
    for (int i = 1; i <= n; ++i) {
        qpow *= q;
        out *= qpow - 1;
    }
    return out;
}

ExactInt gaussian_binomial(int n, int k, int q) {
    require_q(q);
    require_nonneg(n, "n");
    if (k < 0 || k > n) return 0;
    ExactInt numer = q_factorial(n, q);
    ExactInt denom = q_factorial(k, q) * q_factorial(n - k, q);
    ExactInt out;
    // The quotient is a polynomial in q with integer coefficients, so the
    // division is exact.
    mpz_divexact(out.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
    return out;
}

ExactInt gaussian_multinomial(int n, const RankVector& alpha, int q) {
    require_q(q);
    require_nonneg(n, "n");
    if (alpha.sum() != n) {
        throw std::invalid_argument(
            "composition parts must sum to n = " + std::to_string(n) +
            ", got sum " + std::to_string(alpha.sum()));
    }
    ExactInt denom = 1;
    for (int a : alpha.parts()) denom *= q_factorial(a, q);
    ExactInt out;
    mpz_divexact(out.get_mpz_t(), q_factorial(n, q).get_mpz_t(),
                 denom.get_mpz_t());
    return out;
}

long pair_product_sum(const RankVector& alpha) {
    long total = 0;
    long prefix = 0;
    for (int a : alpha.parts()) {
        total += prefix * a;
        prefix += a;
    }
    return total;
}

ExactInt weighted_count(int n, const RankVector& alpha, int q) {
    return gaussian_multinomial(n, alpha, q) *
           int_pow(q, static_cast<unsigned long>(pair_product_sum(alpha)));
}

std::vector<RankVector> enumerate_compositions(int n, int p) {
    require_nonneg(n, "n");
    if (p < 1) {
        throw std::invalid_argument("p must be positive, got " +
                                    std::to_string(p));
    }
    std::vector<RankVector> out;
    std::vector<int> parts(static_cast<std::size_t>(p), 0);
    // Recursion over positions emits lexicographically increasing tuples.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == p - 1) {
            parts[static_cast<std::size_t>(pos)] = remaining;
            out.emplace_back(parts);
            return;
        }
        for (int a = 0; a <= remaining; ++a) {
            parts[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, remaining - a);
        }
    };
    rec(rec, 0, n);
    return out;
}

RankVector balanced_composition(int n, int p) {
    require_nonneg(n, "n");
    if (p < 1) {
        throw std::invalid_argument("p must be positive, got " +
                                    std::to_string(p));
    }
    int floor_part = n / p;
    int ceil_count = n % p;
    std::vector<int> parts(static_cast<std::size_t>(p), floor_part);
    for (int i = 0; i < ceil_count; ++i) parts[static_cast<std::size_t>(i)]++;
    return RankVector(std::move(parts));
}

} // namespace meshalkin
