#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tower2/error.hpp"
#include "tower2/quadfield.hpp"

using namespace tower2;

namespace {

std::vector<std::int64_t> negative_fundamental(std::int64_t bound) {
    std::vector<std::int64_t> out;
    for (std::int64_t D = -3; D > -bound; --D) {
        if (is_fundamental_discriminant(D)) out.push_back(D);
    }
    return out;
}

int count_prime_disc_divisors(std::int64_t D) {
    std::int64_t x = D < 0 ? -D : D;
    int t = 0;
    if (x % 2 == 0) {
        ++t;
        while (x % 2 == 0) x /= 2;
    }
    for (std::int64_t p = 3; p * p <= x; p += 2) {
        if (x % p == 0) {
            ++t;
            while (x % p == 0) x /= p;
        }
    }
    if (x > 1) ++t;
    return t;
}

}  // namespace

TEST(Discriminant, Examples) {
    EXPECT_EQ(discriminant_of(65), 65);
    EXPECT_EQ(discriminant_of(-455), -455);
    EXPECT_EQ(discriminant_of(-65), -260);
    EXPECT_EQ(discriminant_of(455), 1820);
    try {
        discriminant_of(12);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_radicand);
    }
    EXPECT_THROW(discriminant_of(1), Error);
}

TEST(Forms, ReductionProducesReducedEquivalentDisc) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 500);
        std::int64_t b = static_cast<std::int64_t>(rng() % 1001) - 500;
        std::int64_t c = (b * b) / (4 * a) + 1 + static_cast<std::int64_t>(rng() % 500);
        BinaryQuadraticForm f{a, b, c};
        if (f.disc() >= 0) continue;
        auto r = reduce_definite(f);
        EXPECT_TRUE(is_reduced_definite(r));
        EXPECT_EQ(r.disc(), f.disc());
    }
}

TEST(ClassGroupImaginary, Examples) {
    auto g4 = class_group_imaginary(-4);
    EXPECT_EQ(g4.h, 1u);
    EXPECT_TRUE(g4.cl2.is_trivial());

    auto g260 = class_group_imaginary(-260);
    EXPECT_EQ(g260.h, 8u);
    EXPECT_EQ(g260.cl2, AbelianType::from_orders({2, 4}));

    auto g455 = class_group_imaginary(-455);
    EXPECT_EQ(g455.invariant_factors, (std::vector<std::uint64_t>{2, 10}));

    try {
        class_group_imaginary(-1820);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_discriminant);
    }
}

TEST(ClassGroupImaginary, KnownClassNumbers) {
    // Heegner discriminants have class number one
    for (std::int64_t D : {-3, -4, -7, -8, -11, -19, -43, -67, -163}) {
        EXPECT_EQ(class_group_imaginary(D).h, 1u) << D;
    }
    EXPECT_EQ(class_group_imaginary(-23).h, 3u);
    EXPECT_EQ(class_group_imaginary(-56).h, 4u);
    EXPECT_EQ(class_group_imaginary(-84).invariant_factors, (std::vector<std::uint64_t>{2, 2}));
}

TEST(ClassGroupImaginary, MatchesReducedFormCount) {
    for (std::int64_t D : negative_fundamental(5000)) {
        auto g = class_group_imaginary(D);
        EXPECT_EQ(g.h, reduced_forms(D).size()) << D;
        std::uint64_t prod = 1;
        for (auto f : g.invariant_factors) prod *= f;
        EXPECT_EQ(prod, g.h) << D;
        for (std::size_t i = 1; i < g.invariant_factors.size(); ++i) {
            EXPECT_EQ(g.invariant_factors[i] % g.invariant_factors[i - 1], 0u) << D;
        }
    }
}

TEST(Composition, PrincipalIsIdentityAndOrdersDivideH) {
    for (std::int64_t D : negative_fundamental(1500)) {
        auto forms = reduced_forms(D);
        const auto one = principal_form(D);
        const std::uint64_t h = forms.size();
        for (const auto& f : forms) {
            EXPECT_EQ(compose(one, f), f);
            EXPECT_EQ(compose(f, inverse_form(f)), one);
            BinaryQuadraticForm x = one;
            for (std::uint64_t k = 0; k < h; ++k) x = compose(x, f);
            EXPECT_EQ(x, one) << D << " " << f.to_string();
        }
    }
}

TEST(Composition, Associative) {
    std::mt19937_64 rng(11);
    auto discs = negative_fundamental(3000);
    for (int i = 0; i < 300; ++i) {
        std::int64_t D = discs[rng() % discs.size()];
        auto forms = reduced_forms(D);
        const auto& a = forms[rng() % forms.size()];
        const auto& b = forms[rng() % forms.size()];
        const auto& c = forms[rng() % forms.size()];
        EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
        EXPECT_EQ(compose(a, b), compose(b, a));
    }
}

TEST(ClassGroupImaginary, GenusTwoRank) {
    std::mt19937_64 rng(17);
    auto discs = negative_fundamental(20000);
    for (int i = 0; i < 400; ++i) {
        std::int64_t D = discs[rng() % discs.size()];
        auto g = class_group_imaginary(D);
        EXPECT_EQ(g.cl2.rank(), count_prime_disc_divisors(D) - 1) << D;
    }
}

TEST(FundamentalUnit, Examples) {
    auto u65 = fundamental_unit(65);
    EXPECT_EQ(u65.x_num, 8);
    EXPECT_EQ(u65.y_num, 1);
    EXPECT_EQ(u65.denom, 1);
    EXPECT_EQ(u65.norm, -1);

    auto u5 = fundamental_unit(5);
    EXPECT_EQ(u5.x_num, 1);
    EXPECT_EQ(u5.y_num, 1);
    EXPECT_EQ(u5.denom, 2);
    EXPECT_EQ(u5.norm, -1);

    auto u455 = fundamental_unit(455);
    EXPECT_EQ(u455.norm, 1);
    EXPECT_THROW(fundamental_unit(1), Error);
    EXPECT_THROW(fundamental_unit(18), Error);
}

TEST(FundamentalUnit, NormEquationAndMinimality) {
    for (std::int64_t m = 2; m < 200; ++m) {
        if (!is_squarefree(m)) continue;
        auto u = fundamental_unit(m);
        ASSERT_TRUE(u.satisfies_norm_equation()) << m;
        // no smaller y solves x^2 - m y^2 = +-k (k = 4 in the half-integral lattice)
        const bool half = m % 4 == 1;
        const long k = half ? 4 : 1;
        const BigInt uy = u.y_num * (half ? 2 / u.denom : 1);
        const BigInt ux = u.x_num * (half ? 2 / u.denom : 1);
        const long limit = uy < 200000 ? uy.get_si() : 200000;
        for (long y = 1; y <= limit; ++y) {
            std::set<BigInt> xs;
            for (long sgn : {-1L, 1L}) {
                BigInt x2 = BigInt(m) * y * y + sgn * k;
                BigInt x;
                if (x2 > 0 && is_perfect_square(x2, &x)) xs.insert(x);
            }
            if (xs.empty()) continue;
            // the first solution is the fundamental unit: smallest y, then smallest x
            EXPECT_EQ(BigInt(y), uy) << m;
            EXPECT_EQ(*xs.begin(), ux) << m;
            break;
        }
    }
}

TEST(FundamentalUnit, IntegralForOneModEight) {
    for (std::int64_t m = 17; m < 5000; m += 8) {
        if (!is_squarefree(m)) continue;
        auto u = fundamental_unit(m);
        EXPECT_EQ(u.denom, 1) << m;
        EXPECT_TRUE(u.satisfies_norm_equation());
    }
}

TEST(NarrowClassNumber, Examples) {
    EXPECT_EQ(narrow_class_number_real(65), 2u);
    EXPECT_EQ(narrow_class_number_real(5), 1u);
    EXPECT_EQ(narrow_class_number_real(4 * 455), 8u);
    EXPECT_THROW(narrow_class_number_real(4 * 5), Error);
}

TEST(ClassNumberReal, Examples) {
    auto c65 = class_number_real(65);
    EXPECT_EQ(c65.h, 2u);
    EXPECT_EQ(c65.h2, 2u);
    EXPECT_EQ(class_number_real(145).h2, 4u);
    EXPECT_EQ(class_number_real(5).h, 1u);
    // a few classical values
    EXPECT_EQ(class_number_real(10).h, 2u);
    EXPECT_EQ(class_number_real(79).h, 3u);
    EXPECT_EQ(class_number_real(226).h, 8u);
    EXPECT_EQ(class_number_real(229).h, 3u);
}

TEST(ClassNumberReal, GenusTwoRankBound) {
    // the narrow class group has 2-rank t - 1, so 2^(t-1) divides h+
    for (std::int64_t D = 5; D < 6000; ++D) {
        if (!is_fundamental_discriminant(D)) continue;
        std::int64_t r = 1;
        while (r * r < D) ++r;
        if (r * r == D) continue;
        std::uint64_t hplus = narrow_class_number_real(D);
        std::uint64_t g = std::uint64_t{1} << (count_prime_disc_divisors(D) - 1);
        EXPECT_EQ(hplus % g, 0u) << D;
    }
}

TEST(TwoPart, Examples) {
    EXPECT_EQ(two_part({66, 2, 2}), AbelianType::from_orders({2, 2, 2}));
    EXPECT_EQ(two_part({88, 8}), AbelianType::from_orders({8, 8}));
    EXPECT_TRUE(two_part({1}).is_trivial());
    EXPECT_EQ(two_part({1984, 4}).to_string(), "(4, 64)");
}

TEST(SquareClass, Examples) {
    auto u65 = fundamental_unit(65);
    try {
        square_class_norm_plus(u65, 5, 13);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::precondition);
    }
    auto u305 = fundamental_unit(305);  // 5 * 61, norm +1
    ASSERT_EQ(u305.norm, 1);
    auto w = square_class_norm_plus(u305, 5, 61);
    EXPECT_EQ(w.root_a * w.root_a, w.factor_a);
    EXPECT_EQ(w.root_b * w.root_b, w.factor_b);

    auto u455 = fundamental_unit(455);
    auto w2 = square_class_radicand(u455, 5, 13, 7);
    EXPECT_EQ(w2.root_a * w2.root_a, w2.factor_a);
}
