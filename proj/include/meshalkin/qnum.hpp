#pragma once

#include <compare>
#include <initializer_list>
#include <vector>

#include "meshalkin/exact.hpp"

namespace meshalkin {

/// An ordered tuple (a_1,...,a_p) of nonnegative integers, p >= 1.
/// Used both as a rank vector of a flat sequence and as a weak composition.
class RankVector {
public:
    explicit RankVector(std::vector<int> parts);
    RankVector(std::initializer_list<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
    long sum() const;

    bool operator==(const RankVector&) const = default;
    auto operator<=>(const RankVector&) const = default;

private:
    std::vector<int> parts_;
};

/// Product (q^1 - 1)(q^2 - 1)...(q^n - 1); 1 for n = 0.
ExactInt q_factorial(int n, int q);

/// Number of rank-k subspaces of an n-dimensional space over a field of
/// order q. Returns 0 when k < 0 or k > n.
ExactInt gaussian_binomial(int n, int k, int q);

/// n!_q / (alpha_1!_q ... alpha_p!_q); requires sum(alpha) = n.
ExactInt gaussian_multinomial(int n, const RankVector& alpha, int q);

/// Sum of alpha_i * alpha_j over all pairs i < j.
long pair_product_sum(const RankVector& alpha);

/// gaussian_multinomial(n, alpha, q) * q^pair_product_sum(alpha): the number
/// of Meshalkin sequences with rank vector alpha.
ExactInt weighted_count(int n, const RankVector& alpha, int q);

/// All weak compositions of n into p nonnegative parts, in lexicographic
/// order. The result has exactly C(n+p-1, p-1) entries.
std::vector<RankVector> enumerate_compositions(int n, int p);

/// The composition of n into p parts with n mod p parts equal to
/// ceil(n/p) (listed first) and the rest equal to floor(n/p).
RankVector balanced_composition(int n, int p);

} // namespace meshalkin
