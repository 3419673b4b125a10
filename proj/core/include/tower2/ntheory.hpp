#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace tower2 {

using BigInt = mpz_class;

/// A value of a Legendre, quartic or Gaussian residue symbol.
class ResidueSymbol {
public:
    constexpr ResidueSymbol() = default;

    /// Throws precondition unless v is -1, 0 or +1.
    static ResidueSymbol of(int v);
    static constexpr ResidueSymbol plus() { return ResidueSymbol(1); }
    static constexpr ResidueSymbol minus() { return ResidueSymbol(-1); }
    static constexpr ResidueSymbol zero() { return ResidueSymbol(0); }

    constexpr int value() const { return value_; }
    constexpr bool is_plus() const { return value_ == 1; }
    constexpr bool is_minus() const { return value_ == -1; }

    friend constexpr ResidueSymbol operator*(ResidueSymbol a, ResidueSymbol b) {
        return ResidueSymbol(a.value_ * b.value_);
    }
    friend constexpr ResidueSymbol operator-(ResidueSymbol a) { return ResidueSymbol(-a.value_); }
    friend constexpr bool operator==(ResidueSymbol, ResidueSymbol) = default;

private:
    constexpr explicit ResidueSymbol(int v) : value_(v) {}
    int value_ = 1;
};

/// Sieve of Eratosthenes. Requires bound >= 2.
std::vector<std::uint32_t> primes_up_to(std::uint64_t bound);

/// Deterministic Miller-Rabin. The witness set {2,...,37} is exact for every n < 2^64.
bool is_prime(std::uint64_t n);
bool is_prime(std::int64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Nonnegative residue of a modulo m (m > 0).
std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m);
std::uint64_t reduce_mod(const BigInt& a, std::uint64_t m);

/// Euler criterion. p must be an odd prime, otherwise invalid_modulus.
ResidueSymbol legendre(std::int64_t a, std::int64_t p);
ResidueSymbol legendre(const BigInt& a, std::int64_t p);

/// a^((p-1)/4) mod p for p = 1 (mod 4) and (a/p) = +1; symbol_undefined otherwise.
ResidueSymbol quartic_residue_symbol(std::int64_t a, std::int64_t p);

/// (m/2)_4 = (-1)^((m-1)/8) for m = 1 (mod 8); symbol_undefined otherwise.
ResidueSymbol quartic_symbol_of_two(std::int64_t m);

/// Square root of a modulo the odd prime p, normalized into [0, (p-1)/2].
/// Throws no_root for non-residues.
std::uint64_t sqrt_mod_prime(std::int64_t a, std::int64_t p);

bool is_squarefree(std::int64_t m);

/// Exact integer square root test; returns the root through *root when non-null.
bool is_perfect_square(const BigInt& x, BigInt* root = nullptr);

/// 2-adic valuation of a nonzero integer.
int two_adic_valuation(std::uint64_t x);

}  // namespace tower2
