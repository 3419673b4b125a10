#include "tower2/ntheory.hpp"

#include <array>
#include <string>

#include "tower2/error.hpp"

namespace tower2 {

ResidueSymbol ResidueSymbol::of(int v) {
    if (v < -1 || v > 1) {
        throw Error(ErrorKind::precondition, "residue symbol value out of range: " + std::to_string(v));
    }
    return ResidueSymbol(v);
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t bound) {
    if (bound < 2) {
        throw Error(ErrorKind::precondition, "primes_up_to requires bound >= 2");
    }
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t w : witnesses) {
        if (n % w == 0) return n == w;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t w : witnesses) {
        std::uint64_t x = pow_mod(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(std::int64_t n) { return n > 1 && is_prime(static_cast<std::uint64_t>(n)); }

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) {
    std::int64_t mm = static_cast<std::int64_t>(m);
    std::int64_t r = a % mm;
    if (r < 0) r += mm;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_mod(const BigInt& a, std::uint64_t m) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
    return r.get_ui();
}

namespace {

void require_odd_prime(std::int64_t p) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p)) {
        throw Error(ErrorKind::invalid_modulus, "not an odd prime: " + std::to_string(p));
    }
}

ResidueSymbol euler(std::uint64_t a, std::uint64_t p) {
    if (a == 0) return ResidueSymbol::zero();
    std::uint64_t r = pow_mod(a, (p - 1) / 2, p);
    return r == 1 ? ResidueSymbol::plus() : ResidueSymbol::minus();
}

}  // namespace

ResidueSymbol legendre(std::int64_t a, std::int64_t p) {
    require_odd_prime(p);
    return euler(reduce_mod(a, static_cast<std::uint64_t>(p)), static_cast<std::uint64_t>(p));
}

ResidueSymbol legendre(const BigInt& a, std::int64_t p) {
    require_odd_prime(p);
    return euler(reduce_mod(a, static_cast<std::uint64_t>(p)), static_cast<std::uint64_t>(p));
}

ResidueSymbol quartic_residue_symbol(std::int64_t a, std::int64_t p) {
    require_odd_prime(p);
    if (p % 4 != 1) {
        throw Error(ErrorKind::invalid_modulus, "quartic symbol needs p = 1 mod 4, got " + std::to_string(p));
    }
    if (!legendre(a, p).is_plus()) {
        throw Error(ErrorKind::symbol_undefined,
                    std::to_string(a) + " is not a quadratic residue mod " + std::to_string(p));
    }
    auto up = static_cast<std::uint64_t>(p);
    std::uint64_t r = pow_mod(reduce_mod(a, up), (up - 1) / 4, up);
    return r == 1 ? ResidueSymbol::plus() : ResidueSymbol::minus();
}

ResidueSymbol quartic_symbol_of_two(std::int64_t m) {
    if (((m % 8) + 8) % 8 != 1) {
        throw Error(ErrorKind::symbol_undefined, "(m/2)_4 needs m = 1 mod 8, got " + std::to_string(m));
    }
    std::int64_t e = (m - 1) / 8;
    return (e % 2 == 0) ? ResidueSymbol::plus() : ResidueSymbol::minus();
}

std::uint64_t sqrt_mod_prime(std::int64_t a, std::int64_t p) {
    require_odd_prime(p);
    auto up = static_cast<std::uint64_t>(p);
    std::uint64_t n = reduce_mod(a, up);
    if (n == 0) return 0;
    if (!euler(n, up).is_plus()) {
        throw Error(ErrorKind::no_root, std::to_string(a) + " has no square root mod " + std::to_string(p));
    }
    // Tonelli-Shanks
    std::uint64_t q = up - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (!euler(z, up).is_minus()) ++z;
    std::uint64_t c = pow_mod(z, q, up);
    std::uint64_t r = pow_mod(n, (q + 1) / 2, up);
    std::uint64_t t = pow_mod(n, q, up);
    int mexp = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mul_mod(t2, t2, up);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < mexp - i - 1; ++j) b = mul_mod(b, b, up);
        r = mul_mod(r, b, up);
        c = mul_mod(b, b, up);
        t = mul_mod(t, c, up);
        mexp = i;
    }
    return r <= up / 2 ? r : up - r;
}

bool is_squarefree(std::int64_t m) {
    if (m == 0) return false;
    std::uint64_t x = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
    for (std::uint64_t f = 2; f * f <= x; ++f) {
        if (x % (f * f) == 0) return false;
        if (x % f == 0) x /= f;
    }
    return true;
}

bool is_perfect_square(const BigInt& x, BigInt* root) {
    if (x < 0) return false;
    if (mpz_perfect_square_p(x.get_mpz_t()) == 0) return false;
    if (root != nullptr) {
        mpz_sqrt(root->get_mpz_t(), x.get_mpz_t());
    }
    return true;
}

int two_adic_valuation(std::uint64_t x) {
    if (x == 0) {
        throw Error(ErrorKind::precondition, "2-adic valuation of zero");
    }
    return __builtin_ctzll(x);
}

}  // namespace tower2
