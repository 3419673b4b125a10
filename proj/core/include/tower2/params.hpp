#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tower2/ntheory.hpp"
#include "tower2/quadfield.hpp"

namespace tower2 {

/// A prime triple (p1, p2, q) with d = p1 p2 q. validate_triple returns p1 < p2;
/// swapped() gives the other orientation, which changes only the asymmetric symbols.
struct FieldTriple {
    std::int64_t p1 = 0;
    std::int64_t p2 = 0;
    std::int64_t q = 0;

    std::int64_t d() const { return p1 * p2 * q; }
    FieldTriple swapped() const { return {p2, p1, q}; }
    std::string to_string() const;  // "p1.p2.q"
    friend bool operator==(const FieldTriple&, const FieldTriple&) = default;
};

/// Validates the defining conditions; each failure names the violated condition.
/// The returned triple has p1 < p2.
FieldTriple validate_triple(std::int64_t p1, std::int64_t p2, std::int64_t q);

/// Non-throwing variant: the name of the first violated condition, or nullopt.
std::optional<std::string> triple_violation(std::int64_t p1, std::int64_t p2, std::int64_t q);

enum class TauIdeal { H1H3, H2H3 };
std::string to_string(TauIdeal t);

struct FieldInvariants {
    FieldTriple triple;
    int gamma = 0;                 // (p1/p2)
    std::optional<int> delta;      // (p1/p2)_4 (p2/p1)_4, gamma = +1 only
    int unit_norm = 0;             // N(eps_{p1 p2})
    int m = 0;                     // 2^(m+1) = h2(-p1 p2)
    int n = 0;                     // 2^n = h2(p1 p2)
    int pi_symbol = 0;             // (pi1/pi3)
    int beta = 0;                  // (1+i/pi1)(1+i/pi3)
    std::optional<int> big_i;      // (p1p2/2)_4 (2p1/p2)_4 (2p2/p1)_4, gamma = -1 only
    std::int64_t disc_k = 0;       // 16 p1^2 p2^2 q^2
    std::uint64_t order_g = 0;     // 2^(m+n+3)
    int class_g = 0;
    int coclass_g = 0;
    TauIdeal tau_ideal = TauIdeal::H1H3;
    std::string group_label;
};

struct OrderClassCoclass {
    std::uint64_t order = 0;
    int nilpotency_class = 0;
    int coclass = 0;
    friend bool operator==(const OrderClassCoclass&, const OrderClassCoclass&) = default;
};

/// Case analysis from (gamma, N, delta, m, n).
OrderClassCoclass predicted_order_class_coclass(int m, int n, int gamma, int unit_norm, std::optional<int> delta);
OrderClassCoclass predicted_order_class_coclass(const FieldInvariants& inv);

/// Label by (m, n, N); "unlabeled(m,n,N)" outside the known families.
std::string group_label(int m, int n, int unit_norm);
std::string group_label(const FieldInvariants& inv);

/// The triple orientation is used as given (p1 > p2 is allowed).
FieldInvariants compute_invariants(const FieldTriple& t, QuadDataSource& source);
FieldInvariants compute_invariants(const FieldTriple& t);

/// All valid triples with d < max_d; p1 < p2, sorted by d.
std::vector<FieldTriple> enumerate_triples(std::int64_t max_d);

struct ScanEntry {
    FieldTriple triple;
    FieldInvariants inv;
};

/// compute_invariants over enumerate_triples(max_d) with `jobs` workers; output sorted by d.
/// The source must be safe for concurrent get() calls.
std::vector<ScanEntry> scan(std::int64_t max_d, unsigned jobs, QuadDataSource& source);
std::vector<ScanEntry> scan(std::int64_t max_d, unsigned jobs = 1);

}  // namespace tower2
