#include <algorithm>
#include <limits>
#include <sstream>

#include "tower2/error.hpp"
#include "tower2/group2.hpp"

namespace tower2 {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

int log2_exact(std::uint64_t x) {
    if (x == 0 || (x & (x - 1)) != 0) {
        throw Error(ErrorKind::construction_invariant, "expected a power of two, got " + std::to_string(x));
    }
    return __builtin_ctzll(x);
}

Subgroup normal_closure_under(const FiniteTwoGroup& g, const std::vector<Elem>& s, const std::vector<Elem>& by) {
    Subgroup h = subgroup_closure(g, s);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < h.gens.size(); ++i) {
            for (Elem w : by) {
                const Elem c = g.conj(h.gens[i], w);
                if (!h.contains(c)) {
                    std::vector<Elem> gens = h.gens;
                    gens.push_back(c);
                    h = subgroup_closure(g, gens);
                    changed = true;
                }
            }
        }
    }
    return h;
}

std::vector<Elem> pairwise_commutators(const FiniteTwoGroup& g, const std::vector<Elem>& a,
                                       const std::vector<Elem>& b) {
    std::vector<Elem> out;
    for (Elem x : a) {
        for (Elem y : b) {
            const Elem c = g.comm(x, y);
            if (c != 0) out.push_back(c);
        }
    }
    return out;
}

bool generators_commute(const FiniteTwoGroup& g, const Subgroup& h) {
    for (std::size_t i = 0; i < h.gens.size(); ++i) {
        for (std::size_t j = i + 1; j < h.gens.size(); ++j) {
            if (g.comm(h.gens[i], h.gens[j]) != 0) return false;
        }
    }
    return true;
}

}  // namespace

Subgroup subgroup_closure(const FiniteTwoGroup& g, const std::vector<Elem>& gens) {
    Subgroup h;
    h.member.assign(g.order(), false);
    h.member[0] = true;
    h.elements.push_back(0);
    for (Elem x : gens) {
        if (x >= g.order()) throw Error(ErrorKind::precondition, "element index out of range");
        if (x != 0 && std::find(h.gens.begin(), h.gens.end(), x) == h.gens.end()) h.gens.push_back(x);
    }
    for (std::size_t k = 0; k < h.elements.size(); ++k) {
        const Elem e = h.elements[k];
        for (Elem x : h.gens) {
            const Elem y = g.mul(e, x);
            if (!h.member[y]) {
                h.member[y] = true;
                h.elements.push_back(y);
                if (h.elements.size() > kEnumerationCap) {
                    throw Error(ErrorKind::size_cap, "subgroup closure exceeds 2^" +
                                                         std::to_string(kEnumerationCapLog2) + " elements");
                }
            }
        }
    }
    std::sort(h.elements.begin(), h.elements.end());
    return h;
}

Subgroup subgroup_from_elements(const FiniteTwoGroup& g, const std::vector<Elem>& elements) {
    Subgroup h = subgroup_closure(g, {});
    std::vector<Elem> gens;
    for (Elem x : elements) {
        if (!h.contains(x)) {
            gens.push_back(x);
            h = subgroup_closure(g, gens);
        }
    }
    std::vector<Elem> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted != h.elements && !(sorted.empty() && h.order() == 1)) {
        throw Error(ErrorKind::precondition, "element set is not a subgroup");
    }
    return h;
}

Subgroup whole_group(const FiniteTwoGroup& g) {
    g.require_enumerable("whole group");
    return subgroup_closure(g, g.generators());
}

Subgroup trivial_subgroup(const FiniteTwoGroup& g) { return subgroup_closure(g, {}); }

Subgroup normal_closure(const FiniteTwoGroup& g, const std::vector<Elem>& s, const Subgroup& within) {
    return normal_closure_under(g, s, within.gens);
}

Subgroup normal_closure(const FiniteTwoGroup& g, const std::vector<Elem>& s) {
    return normal_closure_under(g, s, g.generators());
}

Subgroup derived_subgroup(const FiniteTwoGroup& g, const Subgroup& h) {
    return normal_closure_under(g, pairwise_commutators(g, h.gens, h.gens), h.gens);
}

Subgroup derived_subgroup(const FiniteTwoGroup& g) {
    return normal_closure_under(g, pairwise_commutators(g, g.generators(), g.generators()), g.generators());
}

std::vector<Subgroup> lower_central_series(const FiniteTwoGroup& g) {
    std::vector<Subgroup> series;
    std::vector<Elem> current = g.generators();
    std::uint64_t previous = g.order();
    for (;;) {
        Subgroup next = normal_closure_under(g, pairwise_commutators(g, current, g.generators()), g.generators());
        if (next.order() >= previous && next.order() > 1) {
            throw Error(ErrorKind::construction_invariant, "lower central series does not descend");
        }
        previous = next.order();
        current = next.gens;
        series.push_back(std::move(next));
        if (previous == 1) return series;
    }
}

int nilpotency_class(const FiniteTwoGroup& g) { return static_cast<int>(lower_central_series(g).size()); }

Subgroup center(const FiniteTwoGroup& g) {
    g.require_enumerable("center");
    std::vector<Elem> z;
    for (Elem x = 0; x < g.order(); ++x) {
        bool central = true;
        for (Elem y : g.generators()) {
            if (g.comm(x, y) != 0) {
                central = false;
                break;
            }
        }
        if (central) z.push_back(x);
    }
    return subgroup_from_elements(g, z);
}

AbelianType quotient_invariants(const FiniteTwoGroup& g, const Subgroup& h, const Subgroup& k) {
    for (Elem x : k.gens) {
        if (!h.contains(x)) throw Error(ErrorKind::precondition, "quotient: K is not contained in H");
        for (Elem y : h.gens) {
            if (!k.contains(g.conj(x, y))) throw Error(ErrorKind::precondition, "quotient: K is not normal in H");
        }
    }
    for (std::size_t i = 0; i < h.gens.size(); ++i) {
        for (std::size_t j = i + 1; j < h.gens.size(); ++j) {
            if (!k.contains(g.comm(h.gens[i], h.gens[j]))) {
                throw Error(ErrorKind::not_abelian, "quotient H/K is not abelian");
            }
        }
    }
    const int total = log2_exact(h.order() / k.order());
    // c[i] = log2 #{cosets whose order divides 2^i}; c[i] - c[i-1] counts exponents >= i
    std::vector<std::uint64_t> count(total + 1, 0);
    for (Elem x : h.elements) {
        Elem y = x;
        for (int i = 0; i <= total; ++i) {
            if (k.contains(y)) {
                for (int j = i; j <= total; ++j) ++count[j];
                break;
            }
            y = g.mul(y, y);
        }
    }
    std::vector<int> c(total + 2, 0);
    for (int i = 0; i <= total; ++i) c[i] = log2_exact(count[i] / k.order());
    if (c[total] != total) throw Error(ErrorKind::construction_invariant, "quotient exponent exceeds its order");
    std::vector<int> exponents;
    for (int i = 1; i <= total; ++i) {
        const int at_least_i = c[i] - c[i - 1];
        const int at_least_next = i < total ? c[i + 1] - c[i] : 0;
        for (int r = 0; r < at_least_i - at_least_next; ++r) exponents.push_back(i);
    }
    return AbelianType::from_exponents(exponents);
}

AbelianType abelian_invariants(const FiniteTwoGroup& g, const Subgroup& h) {
    if (!generators_commute(g, h)) throw Error(ErrorKind::not_abelian, "subgroup is not abelian");
    return quotient_invariants(g, h, trivial_subgroup(g));
}

AbelianType abelianization(const FiniteTwoGroup& g, const Subgroup& h) {
    return quotient_invariants(g, h, derived_subgroup(g, h));
}

QuotientBasis quotient_basis(const FiniteTwoGroup& g, const std::array<Elem, 3>& basis) {
    g.require_enumerable("quotient basis");
    QuotientBasis qb;
    qb.derived = derived_subgroup(g);
    qb.basis = basis;
    if (g.order() / qb.derived.order() != 8) {
        throw Error(ErrorKind::rank_error,
                    "G/G' has order " + std::to_string(g.order() / qb.derived.order()) + ", expected 8");
    }
    for (Elem b : basis) {
        if (!qb.derived.contains(g.mul(b, b))) throw Error(ErrorKind::rank_error, "G/G' is not elementary");
    }
    for (int v = 0; v < 8; ++v) {
        Elem r = 0;
        for (int i = 0; i < 3; ++i) {
            if ((v >> i) & 1) r = g.mul(r, basis[i]);
        }
        if (v != 0 && qb.derived.contains(r)) throw Error(ErrorKind::rank_error, "basis elements are dependent mod G'");
        qb.representative[v] = r;
    }
    qb.bits.assign(g.order(), 0);
    std::vector<bool> seen(g.order(), false);
    for (int v = 0; v < 8; ++v) {
        for (Elem d : qb.derived.elements) {
            const Elem x = g.mul(qb.representative[v], d);
            if (seen[x]) throw Error(ErrorKind::rank_error, "basis does not separate the cosets of G'");
            seen[x] = true;
            qb.bits[x] = static_cast<std::uint8_t>(v);
        }
    }
    return qb;
}

QuotientBasis quotient_basis(const FiniteTwoGroup& g) {
    const auto& gens = g.generators();
    if (gens.size() < 3) throw Error(ErrorKind::rank_error, "fewer than three distinguished generators");
    return quotient_basis(g, {gens[0], gens[1], gens[2]});
}

Subgroup preimage(const FiniteTwoGroup& g, const QuotientBasis& qb, const F2Subspace& s) {
    std::vector<Elem> gens = qb.derived.gens;
    F2Subspace spanned = F2Subspace::trivial();
    std::vector<std::uint8_t> chosen;
    for (std::uint8_t v : s.vectors()) {
        if (!spanned.contains(v)) {
            chosen.push_back(v);
            spanned = F2Subspace::span(chosen);
            gens.push_back(qb.representative[v]);
        }
    }
    return subgroup_closure(g, gens);
}

F2Subspace image(const QuotientBasis& qb, const Subgroup& h) {
    for (Elem d : qb.derived.gens) {
        if (!h.contains(d)) throw Error(ErrorKind::precondition, "subgroup does not contain G'");
    }
    std::vector<std::uint8_t> vs;
    for (Elem x : h.gens) vs.push_back(qb.bits[x]);
    return F2Subspace::span(vs);
}

Layers layer_subgroups(const FiniteTwoGroup& g, const QuotientBasis& qb) {
    Layers out;
    for (int f = 1; f < 8; ++f) {
        std::uint8_t mask = 0;
        for (int v = 0; v < 8; ++v) {
            if (__builtin_popcount(f & v) % 2 == 0) mask |= static_cast<std::uint8_t>(1u << v);
        }
        out.layer1_image[f - 1] = F2Subspace::from_mask(mask);
        out.layer1[f - 1] = preimage(g, qb, out.layer1_image[f - 1]);
    }
    for (int v = 1; v < 8; ++v) {
        out.layer2_image[v - 1] = F2Subspace::span({static_cast<std::uint8_t>(v)});
        out.layer2[v - 1] = preimage(g, qb, out.layer2_image[v - 1]);
    }
    return out;
}

Transfer::Transfer(const FiniteTwoGroup& g, const Subgroup& h) : g_(&g), h_(h) {
    g.require_enumerable("transfer");
    std::vector<Elem> reps;
    std::vector<bool> covered(g.order(), false);
    for (Elem x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (Elem y : h.elements) covered[g.mul(y, x)] = true;
    }
    init(reps);
}

Transfer::Transfer(const FiniteTwoGroup& g, const Subgroup& h, const std::vector<Elem>& transversal)
    : g_(&g), h_(h) {
    g.require_enumerable("transfer");
    init(transversal);
}

void Transfer::init(const std::vector<Elem>& transversal) {
    const FiniteTwoGroup& g = *g_;
    reps_ = transversal;
    coset_of_.assign(g.order(), kUnassigned);
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        for (Elem y : h_.elements) {
            const Elem x = g.mul(y, reps_[i]);
            if (coset_of_[x] != kUnassigned) throw Error(ErrorKind::precondition, "not a right transversal");
            coset_of_[x] = static_cast<std::uint32_t>(i);
        }
    }
    if (reps_.size() * h_.order() != g.order()) throw Error(ErrorKind::precondition, "transversal is incomplete");

    derived_ = derived_subgroup(g, h_);
    label_.assign(g.order(), kUnassigned);
    std::uint32_t next = 0;
    for (Elem x : h_.elements) {
        if (label_[x] != kUnassigned) continue;
        for (Elem d : derived_.elements) label_[g.mul(x, d)] = next;
        ++next;
    }
}

Elem Transfer::apply(Elem x) const {
    const FiniteTwoGroup& g = *g_;
    Elem prod = 0;
    for (Elem r : reps_) {
        const Elem y = g.mul(r, x);
        const Elem back = reps_[coset_of_[y]];
        prod = g.mul(prod, g.mul(y, g.inv(back)));
    }
    return prod;
}

F2Subspace transfer_kernel(const FiniteTwoGroup& g, const QuotientBasis& qb, const Subgroup& h) {
    const Transfer t(g, h);
    std::uint8_t mask = 1;
    for (int v = 1; v < 8; ++v) {
        if (t.trivial(t.apply(qb.representative[v]))) mask |= static_cast<std::uint8_t>(1u << v);
    }
    return F2Subspace::from_mask(mask);
}

std::string GroupFingerprint::to_string() const {
    std::ostringstream os;
    auto list = [&](const std::vector<AbelianType>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].to_string();
        os << ']';
    };
    auto ints = [&](const auto& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << ']';
    };
    os << "order=" << order << " class=" << nilpotency_class << " coclass=" << coclass
       << " ab=" << abelianization.to_string() << " derived=" << derived.to_string()
       << " center=" << center.to_string() << " ttt1=";
    list(ttt1);
    os << " ttt2=";
    list(ttt2);
    os << " tkt1=";
    ints(tkt1);
    os << " tkt2=";
    ints(tkt2);
    os << " orders=";
    ints(element_orders);
    os << " squares1=";
    ints(squares1);
    return os.str();
}

GroupFingerprint fingerprint(const FiniteTwoGroup& g) {
    g.require_enumerable("fingerprint");
    GroupFingerprint fp;
    fp.order = g.order();
    const int log_order = log2_exact(g.order());
    fp.nilpotency_class = nilpotency_class(g);
    fp.coclass = log_order - fp.nilpotency_class;

    const Subgroup all = whole_group(g);
    const Subgroup derived = derived_subgroup(g);
    fp.abelianization = quotient_invariants(g, all, derived);
    if (generators_commute(g, derived)) {
        fp.derived = abelian_invariants(g, derived);
    } else {
        fp.derived = quotient_invariants(g, derived, derived_subgroup(g, derived));
    }
    fp.center = abelian_invariants(g, center(g));
    fp.element_orders.assign(log_order + 1, 0);
    for (Elem x = 0; x < g.order(); ++x) ++fp.element_orders[log2_exact(g.element_order(x))];

    if (fp.abelianization == AbelianType::from_orders({2, 2, 2})) {
        const QuotientBasis qb = quotient_basis(g);
        const Layers layers = layer_subgroups(g, qb);
        for (const Subgroup& h : layers.layer1) {
            fp.ttt1.push_back(abelianization(g, h));
            fp.tkt1.push_back(transfer_kernel(g, qb, h).order());
            std::vector<bool> is_square(g.order(), false);
            std::uint64_t distinct = 0;
            for (Elem x : h.elements) {
                const Elem y = g.mul(x, x);
                if (!is_square[y]) {
                    is_square[y] = true;
                    ++distinct;
                }
            }
            fp.squares1.push_back(distinct);
        }
        for (const Subgroup& h : layers.layer2) {
            fp.ttt2.push_back(abelianization(g, h));
            fp.tkt2.push_back(transfer_kernel(g, qb, h).order());
        }
        std::sort(fp.ttt1.begin(), fp.ttt1.end());
        std::sort(fp.ttt2.begin(), fp.ttt2.end());
        std::sort(fp.tkt1.begin(), fp.tkt1.end());
        std::sort(fp.tkt2.begin(), fp.tkt2.end());
        std::sort(fp.squares1.begin(), fp.squares1.end());
    }
    return fp;
}

}  // namespace tower2
