#pragma once

#include "nubshift/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nubshift {

/// Laurent polynomial over the prime field F_p: coeffs[i] is the coefficient
/// of x^(val + i). Normal form keeps both end coefficients nonzero; the zero
/// polynomial is the empty coefficient list with val = 0.
class FpLaurent {
public:
    FpLaurent() : p_(2) {}
    FpLaurent(int p, long long val, std::vector<int> coeffs);

    static FpLaurent zero(int p) { return FpLaurent(p, 0, {}); }
    static FpLaurent one(int p) { return FpLaurent(p, 0, {1}); }
    static FpLaurent monomial(int p, long long e, int c = 1) { return FpLaurent(p, e, {c}); }

    int p() const { return p_; }
    long long val() const { return val_; }
    const std::vector<int>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    /// Units of the Laurent ring are the nonzero monomials.
    bool is_unit() const { return coeffs_.size() == 1; }
    /// Degree of the top term (val + len - 1); meaningless for zero.
    long long degree() const;
    int coeff_at(long long e) const;

    FpLaurent operator+(const FpLaurent& o) const;
    FpLaurent operator-(const FpLaurent& o) const;
    FpLaurent operator*(const FpLaurent& o) const;
    bool operator==(const FpLaurent& o) const;

    std::string to_string() const;

private:
    int p_;
    long long val_ = 0;
    std::vector<int> coeffs_;
    void normalize();
};

/// Gcd in the Laurent ring: valuations are shifted away, Euclid runs in
/// F_p[x], and the result is monic with valuation 0. gcd(0, 0) = 0.
FpLaurent laurent_gcd(const FpLaurent& a, const FpLaurent& b);

/// Remainder of a by m in F_p[x]; both must have valuation >= 0.
FpLaurent poly_mod(const FpLaurent& a, const FpLaurent& m);

/// Least k >= 1 with x^k = 1 mod q, for q with nonzero constant term.
long long multiplicative_order_of_x(const FpLaurent& q);

} // namespace nubshift
