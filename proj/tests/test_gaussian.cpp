#include <gtest/gtest.h>

#include <random>

#include "tower2/error.hpp"
#include "tower2/gaussian.hpp"

using namespace tower2;

namespace {

std::vector<std::int64_t> primes_one_mod_four(std::uint64_t bound) {
    std::vector<std::int64_t> out;
    for (std::uint32_t p : primes_up_to(bound)) {
        if (p % 4 == 1) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST(GaussianInt, NormIsMultiplicative) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        GaussianInt a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000);
        GaussianInt b(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000);
        EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
    }
}

TEST(GiMod, Examples) {
    EXPECT_TRUE(gi_mod(GaussianInt(5, 0), GaussianInt(1, 2)).is_zero());
    EXPECT_TRUE(gi_mod(GaussianInt(17, -4), GaussianInt(1, 0)).is_zero());
    GaussianInt r = gi_mod(GaussianInt(3, 4), GaussianInt(2, 1));
    EXPECT_LE(r.norm(), 2);
    try {
        gi_mod(GaussianInt(1, 1), GaussianInt(0, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::division_by_zero);
    }
}

TEST(GiMod, RemainderBoundAndCongruence) {
    for (long ar = -12; ar <= 12; ++ar) {
        for (long ai = -12; ai <= 12; ++ai) {
            for (long mr = -5; mr <= 5; ++mr) {
                for (long mi = -5; mi <= 5; ++mi) {
                    GaussianInt mu(mr, mi);
                    if (mu.is_zero()) continue;
                    GaussianInt alpha(ar, ai);
                    GaussianInt r = gi_mod(alpha, mu);
                    EXPECT_LE(2 * r.norm(), mu.norm());
                    // alpha - r must be a multiple of mu: (alpha - r) conj(mu) divisible by N(mu)
                    GaussianInt t = (alpha - r) * mu.conj();
                    BigInt n = mu.norm();
                    EXPECT_EQ(BigInt(t.re % n), 0);
                    EXPECT_EQ(BigInt(t.im % n), 0);
                }
            }
        }
    }
}

TEST(SplitPrime, Examples) {
    auto five = split_prime(5);
    EXPECT_EQ(five.e, 1);
    EXPECT_EQ(five.f, 1);
    EXPECT_EQ(five.pi1, GaussianInt(1, 2));
    EXPECT_EQ(five.pi2, GaussianInt(1, -2));
    auto thirteen = split_prime(13);
    EXPECT_EQ(thirteen.e, 3);
    EXPECT_EQ(thirteen.pi1, GaussianInt(3, 2));
    auto tw9 = split_prime(29);
    EXPECT_EQ(tw9.e, 5);
    EXPECT_EQ(tw9.f, 1);
    EXPECT_EQ(tw9.pi1, GaussianInt(5, 2));
    try {
        split_prime(7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_split);
    }
}

TEST(SplitPrime, NormalFormInvariants) {
    for (std::int64_t p : primes_one_mod_four(20000)) {
        auto pp = split_prime(p);
        EXPECT_EQ(pp.e * pp.e + 4 * pp.f * pp.f, p);
        EXPECT_GT(pp.e, 0);
        EXPECT_GT(pp.f, 0);
        EXPECT_EQ(pp.e % 2, 1);
        EXPECT_EQ(pp.pi1 * pp.pi2, GaussianInt(static_cast<long>(p), 0));
    }
}

TEST(GaussianSymbol, ConjugatePrimes) {
    // (pi1/pi2) = -1 exactly when p = 5 mod 8
    for (std::int64_t p : primes_one_mod_four(3000)) {
        auto pp = split_prime(p);
        int expected = (p % 8 == 5) ? -1 : 1;
        EXPECT_EQ(gi_quadratic_symbol(pp.pi1, pp.pi2).value(), expected) << p;
        // (1+i/pi1)(1+i/pi2) = -1 iff p = 5 mod 8
        EXPECT_EQ((symbol_one_plus_i(pp.pi1) * symbol_one_plus_i(pp.pi2)).value(), expected) << p;
    }
}

TEST(GaussianSymbol, TableAnchors) {
    auto p5 = split_prime(5);
    auto p13 = split_prime(13);
    auto p53 = split_prime(53);
    EXPECT_EQ(gi_quadratic_symbol(p5.pi1, p5.pi2).value(), -1);
    EXPECT_EQ(gi_quadratic_symbol(p5.pi1, p13.pi1).value(), -1);
    EXPECT_EQ(gi_quadratic_symbol(p5.pi1, p53.pi1).value(), 1);
}

TEST(GaussianSymbol, PairIdentities) {
    auto primes = primes_one_mod_four(1200);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t j = i + 1; j < primes.size(); ++j) {
            auto a = split_prime(primes[i]);
            auto b = split_prime(primes[j]);
            ResidueSymbol s13 = gi_quadratic_symbol(a.pi1, b.pi1);
            ResidueSymbol s14 = gi_quadratic_symbol(a.pi1, b.pi2);
            ResidueSymbol s23 = gi_quadratic_symbol(a.pi2, b.pi1);
            ResidueSymbol s24 = gi_quadratic_symbol(a.pi2, b.pi2);
            if (legendre(primes[i], primes[j]).is_plus()) {
                EXPECT_TRUE(s13 == s23 && s13 == s14 && s13 == s24) << primes[i] << " " << primes[j];
            } else {
                EXPECT_TRUE(s13 == s24 && s13 == -s23 && s13 == -s14) << primes[i] << " " << primes[j];
            }
        }
    }
}

TEST(GaussianSymbol, Multiplicative) {
    std::mt19937_64 rng(5);
    auto primes = primes_one_mod_four(500);
    for (int k = 0; k < 300; ++k) {
        auto pp = split_prime(primes[rng() % primes.size()]);
        GaussianInt a(static_cast<long>(rng() % 199) - 99, static_cast<long>(rng() % 199) - 99);
        GaussianInt b(static_cast<long>(rng() % 199) - 99, static_cast<long>(rng() % 199) - 99);
        if (gi_divides(pp.pi1, a) || gi_divides(pp.pi1, b)) continue;
        EXPECT_EQ(gi_quadratic_symbol(a * b, pp.pi1), gi_quadratic_symbol(a, pp.pi1) * gi_quadratic_symbol(b, pp.pi1));
    }
}

TEST(GaussianSymbol, Errors) {
    auto p5 = split_prime(5);
    try {
        gi_quadratic_symbol(GaussianInt(5, 0), p5.pi1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::zero_symbol);
    }
    try {
        gi_quadratic_symbol(GaussianInt(3, 0), GaussianInt(1, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_prime);
    }
}
