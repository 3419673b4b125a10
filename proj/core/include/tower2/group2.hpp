#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tower2/abelian_type.hpp"
#include "tower2/f2space.hpp"

namespace tower2 {

using Elem = std::uint32_t;

/// Operations that walk every element of a group (center, layers, transfers,
/// fingerprints) and subgroup closures refuse to go beyond 2^13 elements.
constexpr int kEnumerationCapLog2 = 13;
constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << kEnumerationCapLog2;

/// Structural constructions beyond this order are rejected outright.
constexpr int kStructuralCapLog2 = 16;

/// Largest group the coset enumerator turns into a multiplication table.
constexpr int kTableCapLog2 = 11;

using IntVec2 = std::array<std::int64_t, 2>;
using IntMat2 = std::array<IntVec2, 2>;

/// A = Z^2 / Lambda for a full-rank lattice Lambda spanned by two row vectors.
/// Elements are canonical pairs (w1 mod d1, w2 mod d2) with w = v V, where U Lambda V = diag(d1, d2).
class AbelianLattice {
public:
    explicit AbelianLattice(const IntMat2& rows);

    std::uint64_t d1() const { return d1_; }
    std::uint64_t d2() const { return d2_; }
    std::uint64_t order() const { return d1_ * d2_; }
    AbelianType type() const;
    const IntMat2& rows() const { return rows_; }
    const IntMat2& transform() const { return v_; }

    /// Canonical index of the class of (s, t) in original coordinates.
    Elem encode(std::int64_t s, std::int64_t t) const;
    Elem encode(const IntVec2& v) const { return encode(v[0], v[1]); }
    /// Canonical SNF coordinates of an index.
    IntVec2 canonical(Elem a) const { return {static_cast<std::int64_t>(a / d2_), static_cast<std::int64_t>(a % d2_)}; }
    /// Original coordinates (some representative) of an index.
    IntVec2 original(Elem a) const;

    Elem add(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem scale(Elem a, std::int64_t k) const;

private:
    IntMat2 rows_;
    IntMat2 v_{};
    IntMat2 v_inv_{};
    std::uint64_t d1_ = 1;
    std::uint64_t d2_ = 1;
};

/// Letters are 2g for generator g and 2g+1 for its inverse.
using Word = std::vector<int>;

namespace words {
Word gen(int g);
Word inverse(const Word& w);
Word power(const Word& w, std::int64_t e);
Word concat(std::initializer_list<Word> parts);
/// [a, b] = a^-1 b^-1 a b
Word comm(const Word& a, const Word& b);
Word free_reduce(const Word& w);
}  // namespace words

/// A finite 2-group with exact arithmetic on element indices 0..order-1 (0 is the identity).
class FiniteTwoGroup {
public:
    enum class Carrier { structural, enumerated };

    /// Cyclic extension of A by <rho>: elements rho^eps a, product
    /// (e1, a1)(e2, a2) = (e1 xor e2, phi^e2(a1) + a2 + [e1 and e2] r0).
    /// phi is given by the images of the two original basis vectors (rows of phi_rows).
    static FiniteTwoGroup structural(const AbelianLattice& lattice, const IntMat2& phi_rows, const IntVec2& r0);

    /// Regular representation from a complete coset table: action[c][g] is the coset c.x_g.
    /// The first `visible` generators are the distinguished generators.
    static FiniteTwoGroup from_coset_table(const std::vector<std::vector<std::uint32_t>>& action, int visible,
                                           std::vector<std::string> names);

    Carrier carrier() const { return carrier_; }
    std::uint64_t order() const { return order_; }
    int order_log2() const { return __builtin_ctzll(order_); }
    Elem identity() const { return 0; }

    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::int64_t e) const;
    /// [a, b] = a^-1 b^-1 a b
    Elem comm(Elem a, Elem b) const;
    /// a^b = b^-1 a b
    Elem conj(Elem a, Elem b) const;
    std::uint64_t element_order(Elem a) const;
    Elem evaluate(const Word& w) const;

    const std::vector<Elem>& generators() const { return gens_; }
    const std::vector<std::string>& generator_names() const { return names_; }

    /// Structural accessors.
    const AbelianLattice& lattice() const;
    Elem element(int eps, std::int64_t s, std::int64_t t) const;
    Elem rho() const { return element(1, 0, 0); }
    Elem sigma() const { return element(0, 1, 0); }
    Elem tau() const { return element(0, 0, 1); }
    Elem phi(Elem a_index) const { return phi_[a_index]; }
    Elem r0() const { return r0_; }

    /// Throws size_cap when the group has more than 2^13 elements.
    void require_enumerable(const char* what) const;

private:
    Carrier carrier_ = Carrier::structural;
    std::uint64_t order_ = 1;
    std::vector<Elem> gens_;
    std::vector<std::string> names_;
    // structural
    std::optional<AbelianLattice> lattice_;
    std::vector<Elem> phi_;
    Elem r0_ = 0;
    std::uint64_t a_order_ = 1;
    // enumerated
    std::vector<Elem> table_;
    std::vector<Elem> inverse_;
};

/// Group of the parametric presentation for parameters (m, n, N), with the rho^2 variant
/// ('a': rho^2 = tau^(2^(n+1)) sigma^(2^(m-1)), 'b': rho^2 = sigma^(2^(m-1))) when N = +1.
FiniteTwoGroup build_presented_group(int m, int n, int unit_norm, char variant = 'a');

/// The defining relators of the same presentation on generators rho, sigma, tau.
std::vector<Word> presented_group_relators(int m, int n, int unit_norm, char variant = 'a');

struct CosetEnumerationOptions {
    std::size_t max_cosets = std::size_t{1} << 22;
};

/// Hasse-Low-Todd-Coxeter enumeration of the cosets of the trivial subgroup.
/// Returns the compact coset table (one row per element, one column per generator).
std::vector<std::vector<std::uint32_t>> enumerate_cosets(int num_generators, const std::vector<Word>& relators,
                                                         const CosetEnumerationOptions& opts = {});

FiniteTwoGroup coset_enumerate(int num_generators, const std::vector<Word>& relators,
                               std::vector<std::string> names = {}, int visible = -1,
                               const CosetEnumerationOptions& opts = {});

enum class Family { mainline_cc3, seq985, seq986, mainline_cc4, seq5492 };
std::string to_string(Family f);
std::optional<Family> parse_family(const std::string& s);

/// Generators (x, y, z, then the pc-generators) and relators of a family presentation.
struct Presentation {
    int num_generators = 0;
    int visible = 3;
    std::vector<std::string> names;
    std::vector<Word> relators;
    std::uint64_t expected_order = 0;
};
Presentation family_presentation(Family family, int param);
FiniteTwoGroup build_family_group(Family family, int param);

/// A subgroup given by generators and its full element set.
struct Subgroup {
    std::vector<Elem> gens;
    std::vector<Elem> elements;  // sorted ascending
    std::vector<bool> member;    // indexed by element of the parent

    std::uint64_t order() const { return elements.size(); }
    bool contains(Elem g) const { return member[g]; }
    std::uint64_t index_in(const FiniteTwoGroup& g) const { return g.order() / order(); }
    bool same_elements(const Subgroup& o) const { return elements == o.elements; }
};

Subgroup subgroup_closure(const FiniteTwoGroup& g, const std::vector<Elem>& gens);
/// Subgroup with the given element set (must be closed); a small generating set is chosen.
Subgroup subgroup_from_elements(const FiniteTwoGroup& g, const std::vector<Elem>& elements);
Subgroup whole_group(const FiniteTwoGroup& g);
Subgroup trivial_subgroup(const FiniteTwoGroup& g);
/// Smallest subgroup of `within` containing S and normalized by the generators of `within`.
Subgroup normal_closure(const FiniteTwoGroup& g, const std::vector<Elem>& s, const Subgroup& within);
Subgroup normal_closure(const FiniteTwoGroup& g, const std::vector<Elem>& s);
Subgroup derived_subgroup(const FiniteTwoGroup& g, const Subgroup& h);
Subgroup derived_subgroup(const FiniteTwoGroup& g);
/// gamma_1 = G, gamma_{i+1} = [gamma_i, G], ending with the trivial group.
std::vector<Subgroup> lower_central_series(const FiniteTwoGroup& g);
int nilpotency_class(const FiniteTwoGroup& g);
Subgroup center(const FiniteTwoGroup& g);

/// Type of H/K for K normal in H with abelian quotient; not_abelian otherwise.
AbelianType quotient_invariants(const FiniteTwoGroup& g, const Subgroup& h, const Subgroup& k);
/// Type of an abelian subgroup H.
AbelianType abelian_invariants(const FiniteTwoGroup& g, const Subgroup& h);
/// Type of H/H'.
AbelianType abelianization(const FiniteTwoGroup& g, const Subgroup& h);

/// G/G' = (2,2,2) with a chosen basis; bits[g] gives the coordinates of gG'.
struct QuotientBasis {
    Subgroup derived;
    std::array<Elem, 3> basis{};
    std::vector<std::uint8_t> bits;
    std::array<Elem, 8> representative{};  // representative of each vector
};
/// rank_error unless the cosets of the three basis elements generate G/G' = (2,2,2).
QuotientBasis quotient_basis(const FiniteTwoGroup& g, const std::array<Elem, 3>& basis);
/// Basis from the first three distinguished generators.
QuotientBasis quotient_basis(const FiniteTwoGroup& g);

/// Preimage of a subgroup of G/G'.
Subgroup preimage(const FiniteTwoGroup& g, const QuotientBasis& qb, const F2Subspace& s);
/// Image in G/G' of a subgroup containing G'.
F2Subspace image(const QuotientBasis& qb, const Subgroup& h);

/// Index-2 subgroups (layer1[f-1] is the kernel of the functional f) and
/// index-4 subgroups containing G' (layer2[v-1] is the preimage of <v>).
struct Layers {
    std::array<Subgroup, 7> layer1;
    std::array<Subgroup, 7> layer2;
    std::array<F2Subspace, 7> layer1_image;
    std::array<F2Subspace, 7> layer2_image;
};
Layers layer_subgroups(const FiniteTwoGroup& g, const QuotientBasis& qb);

/// Artin transfer G -> H/H' computed with right-coset representatives.
/// Keeps a pointer to g, which must outlive the transfer.
class Transfer {
public:
    Transfer(const FiniteTwoGroup& g, const Subgroup& h);
    /// Uses the given transversal (one representative per right coset, any order).
    Transfer(const FiniteTwoGroup& g, const Subgroup& h, const std::vector<Elem>& transversal);

    /// Element of H representing V(gG') modulo H'.
    Elem apply(Elem x) const;
    /// Whether two elements of H agree modulo H'.
    bool congruent(Elem a, Elem b) const { return label_[a] == label_[b]; }
    bool trivial(Elem h) const { return label_[h] == label_[0]; }
    const Subgroup& target_derived() const { return derived_; }
    const std::vector<Elem>& transversal() const { return reps_; }

private:
    void init(const std::vector<Elem>& transversal);

    const FiniteTwoGroup* g_;
    Subgroup h_;
    Subgroup derived_;
    std::vector<std::uint32_t> coset_of_;  // right coset index of each element of G
    std::vector<Elem> reps_;
    std::vector<std::uint32_t> label_;  // label of hH' for h in H
};

/// Kernel of the transfer to H, as a subgroup of G/G' in the basis of qb.
F2Subspace transfer_kernel(const FiniteTwoGroup& g, const QuotientBasis& qb, const Subgroup& h);

struct GroupFingerprint {
    std::uint64_t order = 0;
    int nilpotency_class = 0;
    int coclass = 0;
    AbelianType abelianization;
    AbelianType derived;   // type of G' (of G'/G'' when G' is not abelian)
    AbelianType center;
    std::vector<AbelianType> ttt1;  // sorted
    std::vector<AbelianType> ttt2;  // sorted
    std::vector<int> tkt1;          // sorted transfer-kernel orders on layer 1
    std::vector<int> tkt2;          // sorted transfer-kernel orders on layer 2
    std::vector<std::uint64_t> element_orders;  // entry e counts elements of order 2^e
    std::vector<std::uint64_t> squares1;        // sorted counts of distinct squares in layer-1 subgroups

    std::string to_string() const;
    friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

GroupFingerprint fingerprint(const FiniteTwoGroup& g);

}  // namespace tower2
