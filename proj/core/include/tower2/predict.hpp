#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tower2/abelian_type.hpp"
#include "tower2/f2space.hpp"
#include "tower2/params.hpp"

namespace tower2 {

/// An element of Cl2(k) = <[H1], [H2], [H3]>, elementary abelian of order 8.
/// Bit 0 is [H1], bit 1 is [H2], bit 2 is [H3]; the group law is XOR.
struct IdealClassVector {
    std::uint8_t bits = 0;

    static constexpr IdealClassVector H1() { return {1}; }
    static constexpr IdealClassVector H2() { return {2}; }
    static constexpr IdealClassVector H3() { return {4}; }

    constexpr IdealClassVector operator*(IdealClassVector o) const {
        return {static_cast<std::uint8_t>(bits ^ o.bits)};
    }
    std::string to_string() const;
    friend bool operator==(IdealClassVector, IdealClassVector) = default;
};

/// Basis names used when rendering subgroups of Cl2(k).
extern const char* const kIdealNames[3];

IdealClassVector ideal_class(TauIdeal t);

enum class Normality { abelian, galois, non_normal };
std::string to_string(Normality n);

struct FieldCatalogEntry {
    std::string label;     // "K1" .. "K7", "L1" .. "L7"
    std::string radicand;  // the square roots adjoined to k
    Normality normality = Normality::abelian;
    std::optional<std::string> conjugate;
    std::vector<int> composition;  // for L_j, the indices of its three K fields
};

/// K1..K7 followed by L1..L7.
const std::vector<FieldCatalogEntry>& field_catalog();

/// composition of L_j (1-based j), as three 1-based K indices.
std::array<int, 3> l_composition(int j);

/// N_j = N(Cl2(K_j)) computed from residue symbols: [H_i] lies in N_j exactly when the
/// radicand of K_j is a square modulo the Gaussian prime below H_i.
std::array<F2Subspace, 7> arithmetic_norm_groups(const FieldTriple& t);

struct PredictionReport {
    std::array<AbelianType, 7> cl2_k;
    std::array<AbelianType, 7> cl2_l;
    /// The in-proof table reading of Cl2(L_j); equal to cl2_l except where the two disagree.
    std::array<AbelianType, 7> cl2_l_table;
    /// Capitulation kernels; K3 carries two alternatives when N = -1.
    std::array<std::vector<F2Subspace>, 7> kappa_k;
    /// kappa_{K_j} = N_{partner}; none for K3.
    std::array<std::optional<int>, 7> kappa_norm_partner;
    std::array<F2Subspace, 7> norm_groups;
    std::array<F2Subspace, 7> kappa_l;
    AbelianType derived;
    std::uint64_t order = 0;
    int nilpotency_class = 0;
    int coclass = 0;
    std::uint64_t h2_k3 = 0;
    int tower_length = 2;
};

PredictionReport predict_all(const FieldInvariants& inv);

/// Type of G' = <sigma^2, tau^2> for any (m, n, N), not only the realized combinations.
AbelianType predicted_derived_type(int m, int n, int unit_norm);
/// Class max(m+1, n+2) for N = -1 and max(m, n+2) for N = +1; coclass follows.
OrderClassCoclass generalized_order_class_coclass(int m, int n, int unit_norm);

/// Generator words printed in the kappa and L tables for G_j = Gal(L/K_j) and Gal(L/L_j),
/// written over r = rho, s = sigma, t = tau, e.g. "s, tr, t^2".
std::string table_words_k(const FieldInvariants& inv, int j);
std::string table_words_l(const FieldInvariants& inv, int j);

struct ConsistencyAssignment {
    TauIdeal tau = TauIdeal::H1H3;
    std::optional<TauIdeal> kappa_k3;  // the K3 kernel choice when N = -1
    char variant = 'a';
    std::string to_string() const;
};

struct CheckLine {
    std::string item;
    std::string expected;
    std::string computed;
    bool ok = false;
};

struct ConsistencyAttempt {
    ConsistencyAssignment assignment;
    std::vector<CheckLine> lines;
    bool ok() const;
};

struct ConsistencyReport {
    std::vector<CheckLine> common;  // checks that do not depend on the assignment
    std::vector<ConsistencyAttempt> attempts;
    std::optional<std::size_t> matched;
    std::vector<std::string> notes;

    bool passed() const;
    std::string transcript() const;
};

/// Runs every assignment and records the first one matching everything; never throws on mismatch.
ConsistencyReport run_consistency(const FieldInvariants& inv);
/// As run_consistency, but a report with no matching assignment raises theorem_inconsistency.
ConsistencyReport consistency_check(const FieldInvariants& inv);

// ---- reference table fixtures ----

struct TableFixtureRow {
    std::string source;  // file name
    int line = 0;
    std::vector<std::pair<std::string, std::string>> conditions;  // e.g. {"gamma", "1"}
    std::vector<std::string> headers;
    std::vector<std::string> cells;
    FieldTriple triple;  // orientation as printed
};

/// Parses "(a, b, c)" into the listed integers; fixture_format on bad syntax.
std::vector<std::uint64_t> parse_tuple(const std::string& text);
/// Requires d1 | d2 | ... after sorting; fixture_format otherwise.
AbelianType two_part_of_tuple(const std::vector<std::uint64_t>& factors);

/// One fixture file: "#" comments, "@ key=value" conditions, one "columns:" header line,
/// then semicolon-separated rows.
std::vector<TableFixtureRow> load_fixture_file(const std::filesystem::path& path);
/// Every *.txt file in the directory except the allowlist, in name order.
std::vector<TableFixtureRow> load_fixture_dir(const std::filesystem::path& dir);

enum class Verdict { match, mismatch, not_checked, allowlisted };
std::string to_string(Verdict v);

struct ColumnVerdict {
    std::string column;
    std::string printed;
    std::string computed;
    Verdict verdict = Verdict::not_checked;
};

struct AllowlistEntry {
    std::string source;
    std::int64_t d = 0;
    std::string column;
    std::string justification;
};

/// Lines "file; d; column; justification"; every entry needs a justification.
std::vector<AllowlistEntry> load_allowlist(const std::filesystem::path& path);

std::vector<ColumnVerdict> verify_fixture(const TableFixtureRow& row,
                                          const std::vector<AllowlistEntry>& allowlist = {});

}  // namespace tower2
