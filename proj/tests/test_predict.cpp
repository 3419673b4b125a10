#include <gtest/gtest.h>

#include <fstream>

#include "tower2/error.hpp"
#include "tower2/group2.hpp"
#include "tower2/predict.hpp"

using namespace tower2;

namespace {

const std::filesystem::path kFixtureDir = TOWER2_FIXTURE_DIR;

const std::vector<ScanEntry>& census() {
    static const std::vector<ScanEntry> entries = scan(50000, 1);
    return entries;
}

F2Subspace sub(std::initializer_list<IdealClassVector> v) {
    std::vector<std::uint8_t> bits;
    for (auto x : v) bits.push_back(x.bits);
    return F2Subspace::span(bits);
}

constexpr IdealClassVector H1 = IdealClassVector::H1();
constexpr IdealClassVector H2 = IdealClassVector::H2();
constexpr IdealClassVector H3 = IdealClassVector::H3();

/// A scratch fixture file under the test temp directory.
std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("tower2_" + name);
    std::ofstream(path) << body;
    return path;
}

TableFixtureRow row_for(std::int64_t d, const std::string& file) {
    for (const auto& r : load_fixture_file(kFixtureDir / file)) {
        if (r.triple.d() == d) return r;
    }
    throw std::runtime_error("row not found");
}

bool all_match(const std::vector<ColumnVerdict>& v) {
    return std::all_of(v.begin(), v.end(), [](const ColumnVerdict& c) { return c.verdict == Verdict::match; });
}

}  // namespace

TEST(IdealClass, XorAndNames) {
    EXPECT_EQ((H1 * H2).bits, 3);
    EXPECT_EQ((H1 * H1).bits, 0);
    EXPECT_EQ((H1 * H3).to_string(), "H1H3");
    EXPECT_EQ(ideal_class(TauIdeal::H2H3), H2 * H3);
}

TEST(Catalog, EntriesAndCompositions) {
    const auto& cat = field_catalog();
    ASSERT_EQ(cat.size(), 14u);
    EXPECT_EQ(cat[0].label, "K1");
    EXPECT_EQ(cat[7].label, "L1");
    EXPECT_EQ(cat[2].normality, Normality::abelian);
    EXPECT_EQ(cat[3].normality, Normality::non_normal);
    EXPECT_EQ(cat[3].conjugate, "K7");
    EXPECT_EQ(cat[4].conjugate, "K6");
    EXPECT_EQ(cat[8].conjugate, "L3");
    EXPECT_EQ(cat[10].conjugate, "L5");
    EXPECT_EQ(cat[7].composition, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(l_composition(2), (std::array<int, 3>{1, 4, 6}));
    EXPECT_EQ(l_composition(7), (std::array<int, 3>{3, 5, 6}));
    // every pair of K fields lies in exactly one L field
    for (int a = 1; a <= 7; ++a) {
        for (int b = a + 1; b <= 7; ++b) {
            int count = 0;
            for (int j = 1; j <= 7; ++j) {
                const auto c = l_composition(j);
                count += std::count(c.begin(), c.end(), a) && std::count(c.begin(), c.end(), b);
            }
            EXPECT_EQ(count, 1) << a << ' ' << b;
        }
    }
    EXPECT_THROW(l_composition(8), Error);
}

TEST(Predict, LayerOneExamples) {
    FieldInvariants inv = compute_invariants(validate_triple(5, 61, 7));  // gamma = 1
    inv.pi_symbol = -1;
    auto p = predict_all(inv);
    EXPECT_EQ(p.cl2_k[3], type_2e({1, 1, 1}));
    EXPECT_EQ(p.cl2_k[0], type_2e({1, 1, 1}));

    inv = compute_invariants(validate_triple(5, 13, 7));  // gamma = -1, pi = -1
    ASSERT_EQ(inv.pi_symbol, -1);
    p = predict_all(inv);
    EXPECT_EQ(p.cl2_k[3], type_2e({1, 2}));
    EXPECT_EQ(p.cl2_k[4], type_2e({1, 1, 1}));
    EXPECT_EQ(p.cl2_k[0], type_2e({1, 2}));
    EXPECT_EQ(p.cl2_k[2], type_2e({2, 3}));
    EXPECT_EQ(p.order, 64u);
    EXPECT_EQ(p.h2_k3, 32u);
    EXPECT_EQ(p.tower_length, 2);
}

TEST(Predict, LayerTwoExamples) {
    const auto inv = compute_invariants(validate_triple(5, 61, 7));
    ASSERT_EQ(inv.unit_norm, 1);
    const auto p = predict_all(inv);
    EXPECT_EQ(p.cl2_l[0], type_2e({inv.m, inv.n + 1}));
    EXPECT_EQ(p.cl2_l[5], type_2e({3, 2}));  // 2135: printed (88, 4)
    for (const auto& k : p.kappa_l) EXPECT_EQ(k, F2Subspace::full());
}

TEST(Predict, KernelsAndTaussky) {
    for (const auto& e : census()) {
        const auto p = predict_all(e.inv);
        for (int j = 0; j < 7; ++j) {
            for (const auto& k : p.kappa_k[j]) {
                EXPECT_EQ(k.order(), j == 2 ? 2u : 4u);
                EXPECT_GT(k.intersect(p.norm_groups[j]).order(), 1u);
            }
        }
        EXPECT_EQ(p.kappa_k[0][0], sub({H1, H2}));
        if (e.inv.unit_norm == 1) {
            ASSERT_EQ(p.kappa_k[2].size(), 1u);
            EXPECT_EQ(p.kappa_k[2][0], sub({H1 * H2}));
        } else {
            EXPECT_EQ(p.kappa_k[2].size(), 2u);
        }
    }
}

TEST(Predict, GeneralizedFormulasAgreeOnRealizedCases) {
    for (const auto& e : census()) {
        const auto& v = e.inv;
        const auto p = predict_all(v);
        EXPECT_EQ(predicted_derived_type(v.m, v.n, v.unit_norm), p.derived) << e.triple.to_string();
        const auto occ = generalized_order_class_coclass(v.m, v.n, v.unit_norm);
        EXPECT_EQ(occ.nilpotency_class, v.class_g) << e.triple.to_string();
        EXPECT_EQ(occ.coclass, v.coclass_g);
    }
}

TEST(NormGroups, ArithmeticMatchesTableOverCensus) {
    for (const auto& e : census()) {
        const auto arith = arithmetic_norm_groups(e.triple);
        const auto p = predict_all(e.inv);
        for (int j = 0; j < 7; ++j) {
            EXPECT_EQ(arith[j], p.norm_groups[j]) << e.triple.to_string() << " K" << j + 1;
            EXPECT_EQ(arith[j].order(), 4u);
        }
    }
}

TEST(Consistency, Examples) {
    const auto a = consistency_check(compute_invariants(validate_triple(5, 13, 7)));
    EXPECT_TRUE(a.passed());
    ASSERT_TRUE(a.matched);
    const auto b = run_consistency(compute_invariants(validate_triple(5, 61, 7)));
    EXPECT_TRUE(b.passed());
    EXPECT_NE(b.transcript().find("verdict: PASS"), std::string::npos);
}

TEST(Consistency, WholeCensus) {
    for (const auto& e : census()) {
        const auto r = run_consistency(e.inv);
        EXPECT_TRUE(r.passed()) << r.transcript();
    }
}

TEST(Consistency, CorruptedInvariantsAreRejected) {
    auto inv = compute_invariants(validate_triple(5, 13, 7));
    inv.pi_symbol = -inv.pi_symbol;
    const auto r = run_consistency(inv);
    EXPECT_FALSE(r.passed());
    try {
        consistency_check(inv);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::theorem_inconsistency);
    }
}

TEST(TableWords, Lookup) {
    const auto inv = compute_invariants(validate_triple(5, 13, 7));
    EXPECT_EQ(table_words_k(inv, 3), "s, t");
    EXPECT_EQ(table_words_l(inv, 1), "t^2, s");
    EXPECT_EQ(table_words_l(inv, 2), "r, t^2");
    EXPECT_THROW(table_words_k(inv, 0), Error);
}

TEST(Fixtures, TupleParsing) {
    EXPECT_EQ(parse_tuple("(10, 2, 2)"), (std::vector<std::uint64_t>{10, 2, 2}));
    EXPECT_EQ(two_part_of_tuple({88, 8}), type_2e({3, 3}));
    EXPECT_EQ(two_part_of_tuple({40, 4}), type_2e({2, 3}));
    EXPECT_THROW(parse_tuple("10, 2"), Error);
    EXPECT_THROW(parse_tuple("(10, x)"), Error);
    EXPECT_THROW(parse_tuple("(0, 2)"), Error);
    EXPECT_THROW(two_part_of_tuple({6, 4}), Error);
}

TEST(Fixtures, FormatErrors) {
    const auto expect_format = [](const std::string& name, const std::string& body) {
        try {
            load_fixture_file(write_temp(name, body));
            ADD_FAILURE() << name;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::fixture_format) << name;
        }
    };
    expect_format("nohdr.txt", "455 = 5.13.7; 2, 1\n");
    expect_format("cells.txt", "columns: d = p1.p2.q; m, n\n455 = 5.13.7; 2, 1; 3\n");
    expect_format("prod.txt", "columns: d = p1.p2.q; m, n\n456 = 5.13.7; 2, 1\n");
    expect_format("tuple.txt", "columns: d = p1.p2.q; Cl(K1)\n455 = 5.13.7; (20, 3)\n");
    expect_format("empty.txt", "# nothing\n");
    EXPECT_THROW(load_fixture_file(kFixtureDir / "missing.txt"), Error);

    const auto rows = load_fixture_file(write_temp("col.txt", "columns: d = p1.p2.q; colour\n455 = 5.13.7; red\n"));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_THROW(verify_fixture(rows[0]), Error);
}

TEST(Fixtures, KnownRows) {
    const auto r455 = verify_fixture(row_for(455, "invariants_k.txt"));
    EXPECT_TRUE(all_match(r455));
    EXPECT_EQ(r455.size(), 10u);

    const auto r435 = verify_fixture(row_for(435, "invariants_k.txt"));
    EXPECT_TRUE(all_match(r435));

    const auto r2135 = verify_fixture(row_for(2135, "k_gamma_plus_pi_minus.txt"));
    EXPECT_TRUE(all_match(r2135));
    const auto k3 = std::find_if(r2135.begin(), r2135.end(), [](const ColumnVerdict& c) { return c.column == "Cl(K3) 2-part"; });
    ASSERT_NE(k3, r2135.end());
    EXPECT_EQ(k3->computed, "(8, 8)");
}

TEST(Fixtures, WholeSetMatches) {
    const auto rows = load_fixture_dir(kFixtureDir);
    EXPECT_EQ(rows.size(), 85u);
    const auto allow = load_allowlist(kFixtureDir / "allowlist.txt");
    for (const auto& r : rows) {
        for (const auto& v : verify_fixture(r, allow)) {
            EXPECT_NE(v.verdict, Verdict::mismatch) << r.source << ':' << r.line << ' ' << v.column << " printed "
                                                    << v.printed << " computed " << v.computed;
        }
    }
}

TEST(Fixtures, InjectedMismatchAndAllowlist) {
    auto row = row_for(455, "k_gamma_minus_pi_minus.txt");
    const auto it = std::find(row.headers.begin(), row.headers.end(), "Cl(K5)");
    ASSERT_NE(it, row.headers.end());
    row.cells[static_cast<std::size_t>(it - row.headers.begin())] = "(20, 2)";
    auto verdicts = verify_fixture(row);
    EXPECT_EQ(std::count_if(verdicts.begin(), verdicts.end(), [](auto& v) { return v.verdict == Verdict::mismatch; }), 1);

    const auto allow_path = write_temp("allow.txt", "# test\nk_gamma_minus_pi_minus.txt; 455; Cl(K5) 2-part; injected\n");
    verdicts = verify_fixture(row, load_allowlist(allow_path));
    EXPECT_EQ(std::count_if(verdicts.begin(), verdicts.end(), [](auto& v) { return v.verdict == Verdict::allowlisted; }), 1);

    EXPECT_THROW(load_allowlist(write_temp("bad_allow.txt", "x.txt; 455; Cl(K5) 2-part;\n")), Error);
}
