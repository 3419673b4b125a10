#include <gtest/gtest.h>

#include <map>

#include "tower2/error.hpp"
#include "tower2/params.hpp"

using namespace tower2;

namespace {

const std::vector<ScanEntry>& census() {
    static const std::vector<ScanEntry> entries = scan(50000, 1);
    return entries;
}

}  // namespace

TEST(ValidateTriple, Examples) {
    EXPECT_EQ(validate_triple(5, 13, 7), (FieldTriple{5, 13, 7}));
    EXPECT_EQ(validate_triple(61, 5, 7), (FieldTriple{5, 61, 7}));
    EXPECT_EQ(triple_violation(13, 17, 3), "legendre(2,p2) != -1");
    EXPECT_EQ(triple_violation(5, 13, 11), "legendre(p1,q) != -1");
    EXPECT_EQ(triple_violation(5, 13, 9), "q = 9 is not prime");
    EXPECT_EQ(triple_violation(5, 5, 7), "p1 = p2");
    EXPECT_FALSE(triple_violation(5, 29, 3));
    try {
        validate_triple(13, 17, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_triple);
        EXPECT_NE(std::string(e.what()).find("legendre(2,p2)"), std::string::npos);
    }
}

TEST(ValidateTriple, ConditionsAreSymmetricInThePair) {
    for (std::int64_t p1 : {5, 13, 29, 37, 53, 61}) {
        for (std::int64_t p2 : {5, 13, 17, 29, 41, 61}) {
            for (std::int64_t q : {3, 7, 11, 19, 23}) {
                EXPECT_EQ(triple_violation(p1, p2, q).has_value(), triple_violation(p2, p1, q).has_value());
            }
        }
    }
}

TEST(Invariants, TableExamples) {
    const auto a = compute_invariants(validate_triple(5, 13, 7));
    EXPECT_EQ(a.gamma, -1);
    EXPECT_FALSE(a.delta);
    EXPECT_EQ(a.unit_norm, -1);
    EXPECT_EQ(a.m, 2);
    EXPECT_EQ(a.n, 1);
    EXPECT_EQ(a.coclass_g, 3);
    EXPECT_EQ(a.disc_k, 3312400);
    EXPECT_EQ(a.order_g, 64u);
    EXPECT_EQ(a.group_label, "64.180");
    ASSERT_TRUE(a.big_i);

    const auto b = compute_invariants(validate_triple(5, 61, 7));
    EXPECT_EQ(b.gamma, 1);
    EXPECT_EQ(b.delta, -1);
    EXPECT_EQ(b.unit_norm, 1);
    EXPECT_EQ(b.m, 3);
    EXPECT_EQ(b.n, 1);
    EXPECT_EQ(b.coclass_g, 4);
    EXPECT_EQ(b.group_label, "128.439");

    const auto c = compute_invariants(validate_triple(5, 29, 3));
    EXPECT_EQ(c.gamma, 1);
    EXPECT_EQ(c.delta, 1);
    EXPECT_EQ(c.unit_norm, -1);
    EXPECT_EQ(c.m, 2);
    EXPECT_EQ(c.n, 2);
    EXPECT_EQ(c.coclass_g, 3);
    EXPECT_EQ(c.disc_k, 3027600);
}

TEST(Invariants, OrientationChangesOnlyAsymmetricSymbols) {
    for (const auto& e : census()) {
        if (e.triple.d() > 8000) break;
        const auto s = compute_invariants(e.triple.swapped());
        EXPECT_EQ(s.gamma, e.inv.gamma);
        EXPECT_EQ(s.delta, e.inv.delta);
        EXPECT_EQ(s.big_i, e.inv.big_i);
        EXPECT_EQ(s.unit_norm, e.inv.unit_norm);
        EXPECT_EQ(s.m, e.inv.m);
        EXPECT_EQ(s.n, e.inv.n);
        EXPECT_EQ(s.group_label, e.inv.group_label);
    }
}

TEST(OrderClassCoclass, CaseAnalysis) {
    EXPECT_EQ(predicted_order_class_coclass(2, 1, -1, -1, std::nullopt), (OrderClassCoclass{64, 3, 3}));
    EXPECT_EQ(predicted_order_class_coclass(3, 1, 1, 1, -1), (OrderClassCoclass{128, 3, 4}));
    EXPECT_EQ(predicted_order_class_coclass(2, 2, 1, -1, std::nullopt), (OrderClassCoclass{128, 4, 3}));
}

TEST(GroupLabel, Mapping) {
    EXPECT_EQ(group_label(2, 1, -1), "64.180");
    EXPECT_EQ(group_label(3, 1, 1), "128.439");
    EXPECT_EQ(group_label(2, 2, 1), "128.986v");
    EXPECT_EQ(group_label(2, 4, -1), "512.60892");
    EXPECT_EQ(group_label(5, 1, -1), "512.60893");
    EXPECT_EQ(group_label(6, 1, -1), "512.60891-#1;3");
    EXPECT_EQ(group_label(2, 3, 1), "unlabeled(2,3,+1)");
}

TEST(Scan, SmallBounds) {
    EXPECT_TRUE(scan(105).empty());
    const auto small = scan(500);
    std::vector<std::int64_t> ds;
    for (const auto& e : small) ds.push_back(e.triple.d());
    EXPECT_NE(std::find(ds.begin(), ds.end(), 435), ds.end());
    EXPECT_NE(std::find(ds.begin(), ds.end(), 455), ds.end());
    EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end()));
}

TEST(Scan, ParallelMatchesSerial) {
    const auto a = scan(12000, 1);
    const auto b = scan(12000, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].triple, b[i].triple);
        EXPECT_EQ(a[i].inv.group_label, b[i].inv.group_label);
        EXPECT_EQ(a[i].inv.tau_ideal, b[i].inv.tau_ideal);
    }
}

TEST(Census, CountAndLabels) {
    ASSERT_EQ(census().size(), 207u);
    std::map<std::string, int> hist;
    for (const auto& e : census()) ++hist[e.inv.group_label];
    const std::map<std::string, int> expected{
        {"64.180", 57},   {"128.439", 32},   {"128.986", 28},   {"128.985", 26},
        {"128.986v", 18}, {"256.5492", 15},  {"512.60893", 10}, {"256.6721", 8},
        {"512.58909", 6}, {"256.6720", 4},   {"512.60892", 3},
    };
    EXPECT_EQ(hist, expected);
}

TEST(Census, Identities) {
    for (const auto& e : census()) {
        const auto& v = e.inv;
        SCOPED_TRACE(e.triple.to_string());
        if (v.gamma == 1) {
            ASSERT_TRUE(v.delta);
            EXPECT_EQ(*v.delta, v.pi_symbol);
        } else {
            ASSERT_TRUE(v.big_i);
            EXPECT_EQ(*v.big_i, v.pi_symbol * v.beta);
        }
        if (v.unit_norm == -1 && v.gamma == -1) {
            EXPECT_EQ(v.n, 1);
            EXPECT_GE(v.m, 2);
            EXPECT_EQ(v.m >= 3, *v.big_i == 1);
        } else if (v.unit_norm == -1) {
            EXPECT_EQ(v.m, 2);
            EXPECT_GE(v.n, 2);
            if (*v.delta == -1) EXPECT_EQ(v.n, 2);
        } else {
            EXPECT_EQ(v.gamma, 1);
            if (*v.delta == -1) {
                EXPECT_EQ(v.n, 1);
                EXPECT_GE(v.m, 3);
            } else {
                EXPECT_EQ(v.m, 2);
                EXPECT_GE(v.n, 2);
            }
        }
        const auto occ = predicted_order_class_coclass(v);
        EXPECT_EQ(occ.order, v.order_g);
        EXPECT_EQ(occ.order, std::uint64_t{1} << (v.m + v.n + 3));
        EXPECT_EQ(occ.coclass, v.coclass_g);
        EXPECT_EQ(v.disc_k, 16 * e.triple.d() * e.triple.d());
        EXPECT_EQ(quad_field_data(e.triple.d()).h2, 4u);
        EXPECT_EQ(quad_field_data(-e.triple.d()).h2, 4u);
    }
}

TEST(Census, SquareClassWitnesses) {
    for (const auto& e : census()) {
        const auto& t = e.triple;
        SCOPED_TRACE(t.to_string());
        const auto unit_d = fundamental_unit(t.d());
        const auto w = square_class_radicand(unit_d, t.p1, t.p2, t.q);
        EXPECT_TRUE(w.sign == 1 || w.sign == -1);
        if (e.inv.unit_norm == 1) {
            const auto unit = fundamental_unit(t.p1 * t.p2);
            const auto w1 = square_class_norm_plus(unit, t.p1, t.p2);
            EXPECT_TRUE(w1.sign == 1 || w1.sign == -1);
        }
    }
}
