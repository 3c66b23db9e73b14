#pragma once

#include <vector>

namespace meshalkin {

/// Field elements are integer codes in [0, q). A code encodes the
/// polynomial sum_i c_i x^i over GF(p) with code = sum_i c_i p^i, so for
/// prime q the code is just the residue.
using FieldElement = int;

/// Arithmetic in GF(q). Supported orders: any prime, plus the prime powers
/// 4, 8, 9 with fixed moduli (x^2+x+1, x^3+x+1, x^2+1). Operations are
/// table-driven for q <= 16. Immutable after construction.
class GaloisField {
public:
    explicit GaloisField(int q);

    int q() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return d_; }
    /// Coefficients of the monic irreducible modulus, constant term first.
    const std::vector<int>& modulus() const { return modulus_; }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement inv(FieldElement a) const; // throws on a == 0

    bool is_valid(FieldElement a) const { return 0 <= a && a < q_; }

private:
    FieldElement add_raw(FieldElement a, FieldElement b) const;
    FieldElement mul_raw(FieldElement a, FieldElement b) const;
    FieldElement inv_raw(FieldElement a) const;
    void check_element(FieldElement a) const;

    int q_;
    int p_;
    int d_;
    std::vector<int> modulus_;
    bool tabled_ = false;
    std::vector<FieldElement> add_table_;
    std::vector<FieldElement> mul_table_;
    std::vector<FieldElement> inv_table_;
};

} // namespace meshalkin
