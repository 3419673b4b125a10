#include "tower2/gaussian.hpp"

#include <ostream>
#include <sstream>

#include "tower2/error.hpp"

namespace tower2 {

std::string GaussianInt::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& z) {
    os << z.re;
    if (z.im >= 0) {
        os << '+' << z.im << 'i';
    } else {
        os << '-' << BigInt(-z.im) << 'i';
    }
    return os;
}

namespace {

// Nearest integer to x/n (n > 0), ties toward negative infinity: ceil((2x - n) / 2n).
BigInt round_div(const BigInt& x, const BigInt& n) {
    BigInt num = 2 * x - n;
    BigInt den = 2 * n;
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

GaussianInt gi_mod(const GaussianInt& alpha, const GaussianInt& mu) {
    if (mu.is_zero()) {
        throw Error(ErrorKind::division_by_zero, "gi_mod by zero");
    }
    BigInt n = mu.norm();
    GaussianInt num = alpha * mu.conj();
    GaussianInt q{round_div(num.re, n), round_div(num.im, n)};
    return alpha - q * mu;
}

bool gi_divides(const GaussianInt& mu, const GaussianInt& alpha) { return gi_mod(alpha, mu).is_zero(); }

GaussianInt gi_gcd(GaussianInt a, GaussianInt b) {
    while (!b.is_zero()) {
        GaussianInt r = gi_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

GaussianInt gi_pow_mod(GaussianInt base, BigInt exp, const GaussianInt& mu) {
    GaussianInt result = gi_mod(GaussianInt(1, 0), mu);
    base = gi_mod(base, mu);
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t()) != 0) result = gi_mod(result * base, mu);
        base = gi_mod(base * base, mu);
        exp >>= 1;
    }
    return result;
}

GaussianPrimePair split_prime(std::int64_t p) {
    if (p < 5 || p % 4 != 1 || !is_prime(p)) {
        throw Error(ErrorKind::not_split, std::to_string(p) + " is not a prime = 1 mod 4");
    }
    std::uint64_t r = sqrt_mod_prime(-1, p);
    GaussianInt g = gi_gcd(GaussianInt(p, 0), GaussianInt(static_cast<long>(r), 1));
    BigInt a = abs(g.re);
    BigInt b = abs(g.im);
    if (a * a + b * b != p) {
        throw Error(ErrorKind::construction_invariant, "Gaussian descent failed for " + std::to_string(p));
    }
    if (mpz_even_p(a.get_mpz_t()) != 0) std::swap(a, b);
    GaussianPrimePair out;
    out.p = p;
    out.e = a.get_si();
    out.f = BigInt(b / 2).get_si();
    out.pi1 = GaussianInt(out.e, 2 * out.f);
    out.pi2 = GaussianInt(out.e, -2 * out.f);
    return out;
}

ResidueSymbol gi_quadratic_symbol(const GaussianInt& alpha, const GaussianInt& pi) {
    BigInt n = pi.norm();
    if (n == 0 || mpz_even_p(n.get_mpz_t()) != 0) {
        throw Error(ErrorKind::invalid_prime, "Gaussian modulus must have odd norm: " + pi.to_string());
    }
    if (gi_divides(pi, alpha)) {
        throw Error(ErrorKind::zero_symbol, pi.to_string() + " divides " + alpha.to_string());
    }
    GaussianInt r = gi_pow_mod(alpha, (n - 1) / 2, pi);
    if (gi_divides(pi, r - GaussianInt(1, 0))) return ResidueSymbol::plus();
    if (gi_divides(pi, r + GaussianInt(1, 0))) return ResidueSymbol::minus();
    throw Error(ErrorKind::invalid_prime, pi.to_string() + " is not a Gaussian prime");
}

ResidueSymbol symbol_one_plus_i(const GaussianInt& pi) { return gi_quadratic_symbol(GaussianInt(1, 1), pi); }

}  // namespace tower2
