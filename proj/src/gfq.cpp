#include "meshalkin/gfq.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace meshalkin {

namespace {

// Built-in moduli for the supported non-prime orders, constant term first.
const std::map<int, std::vector<int>> kModuli = {
    {4, {1, 1, 1}},    // x^2 + x + 1 over GF(2)
    {8, {1, 1, 0, 1}}, // x^3 + x + 1 over GF(2)
    {9, {1, 0, 1}},    // x^2 + 1 over GF(3)
};

std::vector<int> factorize(int n) {
    std::vector<int> factors;
    for (int f = 2; f * f <= n; ++f) {
        while (n % f == 0) {
            factors.push_back(f);
            n /= f;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

std::string factorization_string(int q, const std::vector<int>& factors) {
    std::string s = std::to_string(q) + " = ";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " * ";
        s += std::to_string(factors[i]);
    }
    return s;
}

std::vector<int> digits(int code, int p, int d) {
    std::vector<int> c(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d && code > 0; ++i) {
        c[static_cast<std::size_t>(i)] = code % p;
        code /= p;
    }
    return c;
}

int encode(const std::vector<int>& c, int p) {
    int code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
}

// Evaluate the modulus at x over GF(p); a nonzero value for every x means
// no linear factor, which settles irreducibility for degrees 2 and 3.
bool has_root(const std::vector<int>& modulus, int p) {
    for (int x = 0; x < p; ++x) {
        long v = 0;
        for (std::size_t i = modulus.size(); i-- > 0;) {
            v = (v * x + modulus[i]) % p;
        }
        if (v == 0) return true;
    }
    return false;
}

} // namespace

GaloisField::GaloisField(int q) : q_(q) {
    if (q < 2) {
        throw std::invalid_argument("field order must be at least 2, got " +
                                    std::to_string(q));
    }
    auto factors = factorize(q);
    p_ = factors.front();
    for (int f : factors) {
        if (f != p_) {
            throw std::invalid_argument("GF(" + std::to_string(q) +
                                        "): not a prime power (" +
                                        factorization_string(q, factors) + ")");
        }
    }
    d_ = static_cast<int>(factors.size());
    if (d_ == 1) {
        modulus_ = {0, 1}; // GF(p) as GF(p)[x]/(x)
    } else {
        auto it = kModuli.find(q);
        if (it == kModuli.end()) {
            throw std::invalid_argument("GF(" + std::to_string(q) +
                                        "): no built-in modulus for this "
                                        "prime power");
        }
        modulus_ = it->second;
        if (d_ <= 3 && has_root(modulus_, p_)) {
            throw std::logic_error("GF(" + std::to_string(q) +
                                   "): modulus is reducible");
        }
    }

    if (q_ <= 16) {
        tabled_ = true;
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        mul_table_.resize(static_cast<std::size_t>(q_) * q_);
        inv_table_.assign(static_cast<std::size_t>(q_), 0);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                add_table_[static_cast<std::size_t>(a) * q_ + b] = add_raw(a, b);
                mul_table_[static_cast<std::size_t>(a) * q_ + b] = mul_raw(a, b);
            }
        }
        for (int a = 1; a < q_; ++a) {
            inv_table_[static_cast<std::size_t>(a)] = inv_raw(a);
        }
    }
}

void GaloisField::check_element(FieldElement a) const {
    if (!is_valid(a)) {
        throw std::invalid_argument("element code " + std::to_string(a) +
                                    " outside GF(" + std::to_string(q_) + ")");
    }
}

FieldElement GaloisField::add_raw(FieldElement a, FieldElement b) const {
    if (d_ == 1) return (a + b) % p_;
    auto ca = digits(a, p_, d_);
    auto cb = digits(b, p_, d_);
    for (int i = 0; i < d_; ++i) {
        ca[static_cast<std::size_t>(i)] =
            (ca[static_cast<std::size_t>(i)] + cb[static_cast<std::size_t>(i)]) % p_;
    }
    return encode(ca, p_);
}

FieldElement GaloisField::mul_raw(FieldElement a, FieldElement b) const {
    if (d_ == 1) return static_cast<int>((static_cast<long>(a) * b) % p_);
    auto ca = digits(a, p_, d_);
    auto cb = digits(b, p_, d_);
    std::vector<int> prod(static_cast<std::size_t>(2 * d_ - 1), 0);
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) {
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] +
                 ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(j)]) %
                p_;
        }
    }
    // Reduce by the monic modulus: x^d = -(lower-degree terms).
    for (int deg = 2 * d_ - 2; deg >= d_; --deg) {
        int c = prod[static_cast<std::size_t>(deg)];
        if (c == 0) continue;
        prod[static_cast<std::size_t>(deg)] = 0;
        for (int i = 0; i < d_; ++i) {
            int m = modulus_[static_cast<std::size_t>(i)];
            if (m == 0) continue;
            std::size_t idx = static_cast<std::size_t>(deg - d_ + i);
            prod[idx] = ((prod[idx] - c * m) % p_ + p_) % p_;
        }
    }
    prod.resize(static_cast<std::size_t>(d_));
    return encode(prod, p_);
}

FieldElement GaloisField::inv_raw(FieldElement a) const {
    if (d_ == 1) {
        // Extended Euclid mod p; works for primes of any size.
        int t = 0, new_t = 1;
        int r = p_, new_r = a;
        while (new_r != 0) {
            int quot = r / new_r;
            int tmp = t - quot * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - quot * new_r;
            r = new_r;
            new_r = tmp;
        }
        return t < 0 ? t + p_ : t;
    }
    for (int b = 1; b < q_; ++b) {
        if (mul_raw(a, b) == 1) return b;
    }
    throw std::logic_error("no inverse found; field tables corrupt");
}

FieldElement GaloisField::add(FieldElement a, FieldElement b) const {
    check_element(a);
    check_element(b);
    if (tabled_) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_raw(a, b);
}

FieldElement GaloisField::neg(FieldElement a) const {
    check_element(a);
    if (d_ == 1) return a == 0 ? 0 : p_ - a;
    auto c = digits(a, p_, d_);
    for (int& x : c) x = x == 0 ? 0 : p_ - x;
    return encode(c, p_);
}

FieldElement GaloisField::sub(FieldElement a, FieldElement b) const {
    return add(a, neg(b));
}

FieldElement GaloisField::mul(FieldElement a, FieldElement b) const {
    check_element(a);
    check_element(b);
    if (tabled_) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
    return mul_raw(a, b);
}

FieldElement GaloisField::inv(FieldElement a) const {
    check_element(a);
    if (a == 0) {
        throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) +
                                ")");
    }
    if (tabled_) return inv_table_[static_cast<std::size_t>(a)];
    return inv_raw(a);
}

} // namespace meshalkin
