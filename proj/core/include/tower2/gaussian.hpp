#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "tower2/ntheory.hpp"

namespace tower2 {

struct GaussianInt {
    BigInt re;
    BigInt im;

    GaussianInt() = default;
    GaussianInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}
    GaussianInt(long r, long i) : re(r), im(i) {}

    BigInt norm() const { return re * re + im * im; }
    GaussianInt conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) { return a.re == b.re && a.im == b.im; }

    std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const GaussianInt& z);

/// pi1 = e + 2if and pi2 = e - 2if with e odd, e, f > 0 and e^2 + 4f^2 = p.
struct GaussianPrimePair {
    std::int64_t p = 0;
    GaussianInt pi1;
    GaussianInt pi2;
    std::int64_t e = 0;
    std::int64_t f = 0;
};

/// Euclidean remainder: quotient coordinates are rounded to the nearest integer
/// with ties going toward negative infinity, so norm(r) <= norm(mu)/2.
GaussianInt gi_mod(const GaussianInt& alpha, const GaussianInt& mu);

bool gi_divides(const GaussianInt& mu, const GaussianInt& alpha);

GaussianInt gi_gcd(GaussianInt a, GaussianInt b);

GaussianInt gi_pow_mod(GaussianInt base, BigInt exp, const GaussianInt& mu);

/// Factor p = 1 (mod 4) as (e+2if)(e-2if); throws not_split otherwise.
GaussianPrimePair split_prime(std::int64_t p);

/// Quadratic residue symbol (alpha/pi) for a Gaussian prime pi of odd norm.
ResidueSymbol gi_quadratic_symbol(const GaussianInt& alpha, const GaussianInt& pi);

/// (1+i/pi).
ResidueSymbol symbol_one_plus_i(const GaussianInt& pi);

}  // namespace tower2
