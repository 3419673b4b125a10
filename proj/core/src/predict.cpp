#include "tower2/predict.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tower2/error.hpp"
#include "tower2/gaussian.hpp"
#include "tower2/group2.hpp"

namespace tower2 {

const char* const kIdealNames[3] = {"H1", "H2", "H3"};

namespace {

F2Subspace cls(std::initializer_list<std::uint8_t> vs) { return F2Subspace::span(vs); }

constexpr std::uint8_t H1 = 1, H2 = 2, H3 = 4;

std::string render(const F2Subspace& s) { return s.to_string(kIdealNames); }

}  // namespace

std::string IdealClassVector::to_string() const { return vector_name(bits, kIdealNames); }

IdealClassVector ideal_class(TauIdeal t) { return {static_cast<std::uint8_t>(t == TauIdeal::H1H3 ? H1 | H3 : H2 | H3)}; }

std::string to_string(Normality n) {
    switch (n) {
        case Normality::abelian: return "abelian";
        case Normality::galois: return "galois";
        case Normality::non_normal: return "non-normal";
    }
    return "?";
}

std::array<int, 3> l_composition(int j) {
    static const std::array<std::array<int, 3>, 7> table = {{
        {1, 2, 3}, {1, 4, 6}, {1, 5, 7}, {2, 4, 5}, {2, 6, 7}, {3, 4, 7}, {3, 5, 6},
    }};
    if (j < 1 || j > 7) throw Error(ErrorKind::precondition, "L index out of range");
    return table[static_cast<std::size_t>(j - 1)];
}

const std::vector<FieldCatalogEntry>& field_catalog() {
    static const std::vector<FieldCatalogEntry> catalog = [] {
        const std::array<const char*, 7> radicands = {"p1", "p2", "q", "pi1 pi3", "pi1 pi4", "pi2 pi3", "pi2 pi4"};
        const std::array<int, 8> k_partner = {0, 0, 0, 0, 7, 6, 5, 4};
        std::vector<FieldCatalogEntry> out;
        for (int j = 1; j <= 7; ++j) {
            FieldCatalogEntry e;
            e.label = "K" + std::to_string(j);
            e.radicand = std::string("sqrt(") + radicands[j - 1] + ")";
            e.normality = j <= 3 ? Normality::abelian : Normality::non_normal;
            if (k_partner[j]) e.conjugate = "K" + std::to_string(k_partner[j]);
            out.push_back(e);
        }
        const std::array<int, 8> l_partner = {0, 0, 3, 2, 5, 4, 0, 0};
        for (int j = 1; j <= 7; ++j) {
            FieldCatalogEntry e;
            e.label = "L" + std::to_string(j);
            const auto comp = l_composition(j);
            e.composition.assign(comp.begin(), comp.end());
            for (int c : comp) {
                if (!e.radicand.empty()) e.radicand += ", ";
                e.radicand += std::string("sqrt(") + radicands[c - 1] + ")";
            }
            e.normality = j == 1 ? Normality::abelian : (j >= 6 ? Normality::galois : Normality::non_normal);
            if (l_partner[j]) e.conjugate = "L" + std::to_string(l_partner[j]);
            out.push_back(e);
        }
        return out;
    }();
    return catalog;
}

std::array<F2Subspace, 7> arithmetic_norm_groups(const FieldTriple& t) {
    const GaussianPrimePair g1 = split_prime(t.p1), g2 = split_prime(t.p2);
    const GaussianInt pi1 = g1.pi1, pi2 = g1.pi2, pi3 = g2.pi1, pi4 = g2.pi2;
    const GaussianInt q(t.q, 0);
    // H1, H2, H3 lie above pi1, pi2, pi3.
    const std::array<GaussianInt, 3> below = {pi1, pi2, pi3};
    // K_j = k(sqrt a) = k(sqrt b) with ab = d
    const std::array<std::pair<GaussianInt, GaussianInt>, 7> radicands = {{
        {GaussianInt(t.p1, 0), GaussianInt(t.p2 * t.q, 0)},
        {GaussianInt(t.p2, 0), GaussianInt(t.p1 * t.q, 0)},
        {q, GaussianInt(t.p1 * t.p2, 0)},
        {pi1 * pi3, q * pi2 * pi4},
        {pi1 * pi4, q * pi2 * pi3},
        {pi2 * pi3, q * pi1 * pi4},
        {pi2 * pi4, q * pi1 * pi3},
    }};
    std::array<F2Subspace, 7> out;
    for (std::size_t j = 0; j < 7; ++j) {
        // the character is a linear functional; N_j is its kernel
        std::uint8_t functional = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& [a, b] = radicands[j];
            const GaussianInt& alpha = gi_divides(below[i], a) ? b : a;
            if (gi_quadratic_symbol(alpha, below[i]).value() == -1) functional |= static_cast<std::uint8_t>(1u << i);
        }
        std::uint8_t mask = 0;
        for (int v = 0; v < 8; ++v) {
            if (__builtin_popcount(v & functional) % 2 == 0) mask |= static_cast<std::uint8_t>(1u << v);
        }
        out[j] = F2Subspace::from_mask(mask);
    }
    return out;
}

AbelianType predicted_derived_type(int m, int n, int unit_norm) {
    if (unit_norm == 1) return type_2e({m - 1, n + 1});
    // <a, b> with a = sigma^2 of order 2^m, b = tau^2, a^(2^(m-1)) = b^(2^n)
    const int e1 = std::min(m - 1, n);
    return type_2e({e1, m + n - e1});
}

OrderClassCoclass generalized_order_class_coclass(int m, int n, int unit_norm) {
    OrderClassCoclass out;
    out.order = std::uint64_t{1} << (m + n + 3);
    out.nilpotency_class = unit_norm == -1 ? std::max(m + 1, n + 2) : std::max(m, n + 2);
    out.coclass = m + n + 3 - out.nilpotency_class;
    return out;
}

PredictionReport predict_all(const FieldInvariants& inv) {
    const int m = inv.m, n = inv.n, pi = inv.pi_symbol, beta = inv.beta;
    const bool plus = inv.gamma == 1;
    PredictionReport r;

    const AbelianType t222 = AbelianType::from_orders({2, 2, 2});
    const AbelianType t24 = AbelianType::from_orders({2, 4});
    r.cl2_k[0] = r.cl2_k[1] = plus ? t222 : t24;
    r.cl2_k[2] = plus ? type_2e({n + 2, m}) : type_2e({n + 1, m + 1});
    if (plus) {
        for (int j = 3; j < 7; ++j) r.cl2_k[j] = pi == -1 ? t222 : t24;
    } else {
        const AbelianType outer = pi == -1 ? t24 : t222;  // K4, K7
        const AbelianType inner = pi == -1 ? t222 : t24;  // K5, K6
        r.cl2_k[3] = r.cl2_k[6] = outer;
        r.cl2_k[4] = r.cl2_k[5] = inner;
    }

    r.cl2_l[0] = inv.unit_norm == -1 ? type_2e({std::min(m, n), std::max(m + 1, n + 1)}) : type_2e({m, n + 1});
    const AbelianType middle = (!plus || pi == 1) ? t24 : t222;
    for (int j = 1; j < 5; ++j) r.cl2_l[j] = middle;
    if (plus) {
        if (pi == 1) {
            r.cl2_l[5] = r.cl2_l[6] = type_2e({1, n + 2});
        } else {
            const AbelianType a = type_2e({m - 1, n + 2});
            const AbelianType b = type_2e({std::min(m - 1, n + 1), std::max(m, n + 2)});
            r.cl2_l[5] = beta == 1 ? a : b;
            r.cl2_l[6] = beta == 1 ? b : a;
        }
    } else {
        const AbelianType a = type_2e({n + 1, m});
        const AbelianType b = type_2e({std::min(m - 1, n), std::max(m + 1, n + 2)});
        r.cl2_l[5] = pi == 1 ? a : b;
        r.cl2_l[6] = pi == 1 ? b : a;
    }

    // the in-proof table states L6/L7 directly in m and n
    r.cl2_l_table = r.cl2_l;
    if (plus && pi == -1) {
        r.cl2_l_table[5] = beta == 1 ? type_2e({m - 1, n + 2}) : type_2e({m, n + 1});
        r.cl2_l_table[6] = beta == 1 ? type_2e({m, n + 1}) : type_2e({m - 1, n + 1});
    } else if (!plus) {
        r.cl2_l_table[5] = pi == 1 ? type_2e({2, m}) : type_2e({1, m + 1});
        r.cl2_l_table[6] = pi == 1 ? type_2e({1, m + 1}) : type_2e({2, m});
    }

    r.kappa_k[0] = {cls({H1, H2})};
    r.kappa_k[1] = {cls({H1 | H2, H3})};
    if (inv.unit_norm == 1) {
        r.kappa_k[2] = {cls({H1 | H2})};
    } else {
        r.kappa_k[2] = {cls({H1 | H3}), cls({H2 | H3})};
    }
    r.kappa_k[3] = {cls({H1, H3})};
    r.kappa_k[4] = {cls({H1, H2 | H3})};
    r.kappa_k[5] = {cls({H2, H3})};
    r.kappa_k[6] = {cls({H2, H1 | H3})};

    if (plus) {
        r.kappa_norm_partner = {2, 1, std::nullopt, 4, 5, 6, 7};
        if (pi == -1) r.kappa_norm_partner = {2, 1, std::nullopt, 7, 6, 5, 4};
    } else {
        r.kappa_norm_partner = {1, 2, std::nullopt, 4, 6, 5, 7};
        if (pi == 1) r.kappa_norm_partner = {1, 2, std::nullopt, 7, 5, 6, 4};
    }

    const F2Subspace n13 = cls({H1, H3}), n2_13 = cls({H2, H1 | H3}), n1_23 = cls({H1, H2 | H3}),
                     n23 = cls({H2, H3});
    r.norm_groups[0] = plus ? cls({H3, H1 | H2}) : cls({H1, H2});
    r.norm_groups[1] = plus ? cls({H1, H2}) : cls({H1 | H2, H3});
    r.norm_groups[2] = cls({H1 | H3, H2 | H3});
    if (plus) {
        r.norm_groups[3] = pi == 1 ? n13 : n2_13;
        r.norm_groups[4] = pi == 1 ? n1_23 : n23;
        r.norm_groups[5] = pi == 1 ? n23 : n1_23;
        r.norm_groups[6] = pi == 1 ? n2_13 : n13;
    } else {
        r.norm_groups[3] = pi == 1 ? n2_13 : n13;
        r.norm_groups[4] = pi == 1 ? n1_23 : n23;
        r.norm_groups[5] = pi == 1 ? n23 : n1_23;
        r.norm_groups[6] = pi == 1 ? n13 : n2_13;
    }
    r.kappa_l.fill(F2Subspace::full());

    if (!plus) {
        r.derived = type_2e({1, m});
    } else if (inv.unit_norm == -1) {
        r.derived = type_2e({1, n + 1});
    } else if (inv.delta && *inv.delta == -1) {
        r.derived = type_2e({m - 1, 2});
    } else {
        r.derived = type_2e({1, n + 1});
    }
    const OrderClassCoclass occ = predicted_order_class_coclass(inv);
    r.order = occ.order;
    r.nilpotency_class = occ.nilpotency_class;
    r.coclass = occ.coclass;
    r.h2_k3 = std::uint64_t{1} << (n + m + 2);
    return r;
}

// ---- generator words of the in-proof tables ----

namespace {

struct WordPair {
    const char* left;
    const char* right;  // nullptr when the entry does not split
};

// Index [j][pi == 1]; the left word belongs to beta = 1 (gamma = 1) or I = 1 (gamma = -1).
const WordPair kWordsKPlus[7][2] = {
    {{"s, tr, t^2", nullptr}, {"s, tr, t^2", nullptr}},
    {{"s, r, t^2", nullptr}, {"s, r, t^2", nullptr}},
    {{"t, s", nullptr}, {"t, s", nullptr}},
    {{"t, sr, s^2", "st, sr, s^2"}, {"t, r", "st, r"}},
    {{"sr, st, s^2", "sr, t, s^2"}, {"st, r", "t, r"}},
    {{"r, st, s^2", "r, t, s^2"}, {"st, sr", "t, sr"}},
    {{"r, t, s^2", "r, st, s^2"}, {"t, sr", "st, sr"}},
};

const WordPair kWordsKMinus[7][2] = {
    {{"s, r", nullptr}, {"s, r", nullptr}},
    {{"s, tr", nullptr}, {"s, tr", nullptr}},
    {{"s, t", nullptr}, {"s, t", nullptr}},
    {{"st, r", "t, r"}, {"t, sr, s^2", "tr, st, t^2"}},
    {{"t, sr, s^2", "st, sr, t^2"}, {"st, r", "t, r"}},
    {{"t, r, s^2", "r, st, t^2"}, {"st, sr", "sr, t"}},
    {{"sr, st", "t, sr"}, {"r, t, s^2", "r, st, t^2"}},
};

const WordPair kWordsLPlus[7][2] = {
    {{"t^2, s", nullptr}, {"t^2, s", nullptr}},
    {{"str, s^2, t^2", "tr, s^2, t^2"}, {"tr, t^2", "str, t^2"}},
    {{"tr, s^2, t^2", "str, s^2, t^2"}, {"str, t^2", "tr, t^2"}},
    {{"sr, s^2, t^2", nullptr}, {"r, t^2", nullptr}},
    {{"r, s^2, t^2", nullptr}, {"rs, t^2", nullptr}},
    {{"t, s^2", "st, s^2"}, {"t, s^2", "st, s^2"}},
    {{"st, s^2", "t, s^2"}, {"st, s^2", "t, s^2"}},
};

const WordPair kWordsLMinus[7][2] = {
    {{"t^2, s", nullptr}, {"t^2, s", nullptr}},
    {{"r, t^2", nullptr}, {"sr, t^2", nullptr}},
    {{"sr, t^2", nullptr}, {"r, t^2", nullptr}},
    {{"str, s^2", "tr, s^2"}, {"str, s^2", "tr, s^2"}},
    {{"tr, s^2", "str, s^2"}, {"tr, s^2", "str, s^2"}},
    {{"st, t^2", "t, s^2"}, {"t, s^2", "st, t^2"}},
    {{"t, s^2", "st, t^2"}, {"st, t^2", "t, s^2"}},
};

std::string pick(const WordPair (&table)[7][2], const FieldInvariants& inv, int j) {
    if (j < 1 || j > 7) throw Error(ErrorKind::precondition, "field index out of range");
    const WordPair& w = table[j - 1][inv.pi_symbol == 1 ? 1 : 0];
    if (!w.right) return w.left;
    const int selector = inv.gamma == 1 ? inv.beta : inv.big_i.value_or(1);
    return selector == 1 ? w.left : w.right;
}

/// Words over r, s, t separated by commas; a letter may carry an exponent "^k".
std::vector<Elem> evaluate_words(const FiniteTwoGroup& g, const std::string& text) {
    const auto& gens = g.generators();
    std::vector<Elem> out;
    Elem current = 0;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == ' ') continue;
        if (c == ',') {
            out.push_back(current);
            current = 0;
            any = false;
            continue;
        }
        const std::size_t idx = c == 'r' ? 0 : c == 's' ? 1 : c == 't' ? 2 : 3;
        if (idx == 3) throw Error(ErrorKind::precondition, "bad generator word: " + text);
        std::int64_t e = 1;
        if (i + 1 < text.size() && text[i + 1] == '^') {
            std::size_t k = i + 2;
            e = 0;
            while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) e = 10 * e + (text[k++] - '0');
            i = k - 1;
        }
        current = g.mul(current, g.pow(gens[idx], e));
        any = true;
    }
    if (any) out.push_back(current);
    return out;
}

}  // namespace

std::string table_words_k(const FieldInvariants& inv, int j) {
    return pick(inv.gamma == 1 ? kWordsKPlus : kWordsKMinus, inv, j);
}

std::string table_words_l(const FieldInvariants& inv, int j) {
    return pick(inv.gamma == 1 ? kWordsLPlus : kWordsLMinus, inv, j);
}

// ---- consistency harness ----

std::string ConsistencyAssignment::to_string() const {
    std::ostringstream os;
    os << "tau=" << tower2::to_string(tau);
    if (kappa_k3) os << " kappa(K3)=<" << tower2::to_string(*kappa_k3) << ">";
    os << " variant=" << variant;
    return os.str();
}

bool ConsistencyAttempt::ok() const {
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
}

bool ConsistencyReport::passed() const {
    return matched.has_value() &&
           std::all_of(common.begin(), common.end(), [](const CheckLine& l) { return l.ok; });
}

namespace {

void render_lines(std::ostream& os, const std::vector<CheckLine>& lines, const char* indent) {
    for (const CheckLine& l : lines) {
        os << indent << (l.ok ? "[ok]   " : "[FAIL] ") << l.item << ": expected " << l.expected;
        if (l.computed != l.expected) os << ", computed " << l.computed;
        os << '\n';
    }
}

}  // namespace

std::string ConsistencyReport::transcript() const {
    std::ostringstream os;
    os << "assignment-independent checks\n";
    render_lines(os, common, "  ");
    for (std::size_t i = 0; i < attempts.size(); ++i) {
        const ConsistencyAttempt& a = attempts[i];
        os << "assignment " << a.assignment.to_string() << (a.ok() ? ": all checks pass" : ": mismatch") << '\n';
        if (matched && *matched == i) {
            render_lines(os, a.lines, "  ");
        } else {
            std::vector<CheckLine> failed;
            for (const CheckLine& l : a.lines) {
                if (!l.ok) failed.push_back(l);
            }
            render_lines(os, failed, "  ");
        }
    }
    for (const std::string& n : notes) os << "note: " << n << '\n';
    os << "verdict: " << (passed() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

namespace {

/// Linear bijection Cl2(k) -> G/G' from H1 -> rho, H1H2 -> sigma, tau_ideal -> tau.
struct Dictionary {
    std::array<std::uint8_t, 8> to_group{};
    std::array<std::uint8_t, 8> to_class{};
};

Dictionary make_dictionary(TauIdeal tau) {
    const std::uint8_t rho = 1, sigma = 2, tau_bit = 4;
    const std::array<std::uint8_t, 3> image = {
        rho,
        static_cast<std::uint8_t>(rho ^ sigma),
        static_cast<std::uint8_t>(tau == TauIdeal::H1H3 ? tau_bit ^ rho : tau_bit ^ rho ^ sigma),
    };
    Dictionary d;
    for (int v = 0; v < 8; ++v) {
        std::uint8_t w = 0;
        for (int i = 0; i < 3; ++i) {
            if ((v >> i) & 1) w ^= image[static_cast<std::size_t>(i)];
        }
        d.to_group[static_cast<std::size_t>(v)] = w;
        d.to_class[w] = static_cast<std::uint8_t>(v);
    }
    return d;
}

F2Subspace map_subspace(const F2Subspace& s, const std::array<std::uint8_t, 8>& f) {
    std::uint8_t mask = 0;
    for (std::uint8_t v : s.vectors()) mask |= static_cast<std::uint8_t>(1u << f[v]);
    return F2Subspace::from_mask(mask);
}

CheckLine line(std::string item, std::string expected, std::string computed) {
    CheckLine l;
    l.item = std::move(item);
    l.ok = expected == computed;
    l.expected = std::move(expected);
    l.computed = std::move(computed);
    return l;
}

/// The printed words are read modulo G': the check compares <words, G'> with h.
CheckLine words_line(const FiniteTwoGroup& g, const std::string& item, const std::string& words, const Subgroup& derived,
                     const Subgroup& h) {
    std::vector<Elem> gens = evaluate_words(g, words);
    gens.insert(gens.end(), derived.gens.begin(), derived.gens.end());
    const Subgroup w = subgroup_closure(g, gens);
    CheckLine l;
    l.item = item;
    l.expected = "<" + words + ", G'> of order " + std::to_string(h.order());
    if (w.same_elements(h)) {
        l.computed = l.expected;
        l.ok = true;
    } else {
        l.computed = "<" + words + ", G'> of order " + std::to_string(w.order()) + ", not equal";
    }
    return l;
}

std::string order_string(std::uint64_t x) { return std::to_string(x); }

ConsistencyAttempt run_attempt(const FieldInvariants& inv, const PredictionReport& pred,
                               const std::array<F2Subspace, 7>& norms, const ConsistencyAssignment& as,
                               std::array<AbelianType, 7>* l_types) {
    ConsistencyAttempt out;
    out.assignment = as;
    const FiniteTwoGroup g = build_presented_group(inv.m, inv.n, inv.unit_norm, as.variant);
    const QuotientBasis qb = quotient_basis(g);
    const Dictionary dict = make_dictionary(as.tau);
    auto& lines = out.lines;

    const Subgroup derived = qb.derived;
    lines.push_back(line("|G|", order_string(pred.order), order_string(g.order())));
    lines.push_back(line("G'", pred.derived.to_string(), abelian_invariants(g, derived).to_string()));
    const int cls = nilpotency_class(g);
    lines.push_back(line("class", std::to_string(pred.nilpotency_class), std::to_string(cls)));
    lines.push_back(line("coclass", std::to_string(pred.coclass), std::to_string(g.order_log2() - cls)));

    std::array<Subgroup, 7> gk;
    for (std::size_t j = 0; j < 7; ++j) {
        const std::string k = "K" + std::to_string(j + 1);
        gk[j] = preimage(g, qb, map_subspace(norms[j], dict.to_group));
        lines.push_back(line("Cl2(" + k + ")", pred.cl2_k[j].to_string(), abelianization(g, gk[j]).to_string()));
        F2Subspace expected = pred.kappa_k[j].front();
        if (j == 2 && as.kappa_k3) expected = F2Subspace::span({ideal_class(*as.kappa_k3).bits});
        const F2Subspace kernel = map_subspace(transfer_kernel(g, qb, gk[j]), dict.to_class);
        lines.push_back(line("kappa(" + k + ")", render(expected), render(kernel)));
        if (pred.kappa_norm_partner[j]) {
            const int p = *pred.kappa_norm_partner[j];
            lines.push_back(line("kappa(" + k + ") = N" + std::to_string(p), render(norms[p - 1]), render(kernel)));
        }
        lines.push_back(words_line(g, "G_" + std::to_string(j + 1) + " words", table_words_k(inv, static_cast<int>(j + 1)), derived, gk[j]));
    }
    for (std::size_t j = 0; j < 7; ++j) {
        const std::string l = "L" + std::to_string(j + 1);
        F2Subspace n = F2Subspace::full();
        for (int c : l_composition(static_cast<int>(j + 1))) n = n.intersect(norms[static_cast<std::size_t>(c - 1)]);
        const Subgroup h = preimage(g, qb, map_subspace(n, dict.to_group));
        lines.push_back(line("[G:Gal(L/" + l + ")]", "4", std::to_string(h.index_in(g))));
        const AbelianType t = abelianization(g, h);
        if (l_types) (*l_types)[j] = t;
        lines.push_back(line("Cl2(" + l + ")", pred.cl2_l[j].to_string(), t.to_string()));
        lines.push_back(line("kappa(" + l + ")", render(pred.kappa_l[j]),
                             render(map_subspace(transfer_kernel(g, qb, h), dict.to_class))));
        lines.push_back(words_line(g, "Gal(L/" + l + ") words", table_words_l(inv, static_cast<int>(j + 1)), derived, h));
    }
    return out;
}

}  // namespace

ConsistencyReport run_consistency(const FieldInvariants& inv) {
    ConsistencyReport report;
    const PredictionReport pred = predict_all(inv);
    const std::array<F2Subspace, 7> norms = arithmetic_norm_groups(inv.triple);

    for (std::size_t j = 0; j < 7; ++j) {
        const std::string k = "K" + std::to_string(j + 1);
        report.common.push_back(line("N(" + k + ") table", render(pred.norm_groups[j]), render(norms[j])));
        for (const F2Subspace& kappa : pred.kappa_k[j]) {
            const bool taussky = kappa.intersect(pred.norm_groups[j]).order() > 1;
            report.common.push_back(line("Taussky A " + k + " kernel " + render(kappa), "nontrivial",
                                         taussky ? "nontrivial" : "trivial"));
        }
    }
    report.common.push_back(line("h2(K3)", order_string(pred.h2_k3),
                                 order_string(std::uint64_t{1} << pred.cl2_k[2].order_log2())));

    std::vector<ConsistencyAssignment> assignments;
    const TauIdeal other = inv.tau_ideal == TauIdeal::H1H3 ? TauIdeal::H2H3 : TauIdeal::H1H3;
    for (TauIdeal tau : {inv.tau_ideal, other}) {
        std::vector<std::optional<TauIdeal>> k3 = {std::nullopt};
        if (inv.unit_norm == -1) k3 = {tau, tau == TauIdeal::H1H3 ? TauIdeal::H2H3 : TauIdeal::H1H3};
        for (const auto& kk : k3) {
            for (char variant : inv.unit_norm == 1 ? std::vector<char>{'a', 'b'} : std::vector<char>{'a'}) {
                assignments.push_back({tau, kk, variant});
            }
        }
    }

    std::array<AbelianType, 7> l_types{};
    for (const ConsistencyAssignment& as : assignments) {
        std::array<AbelianType, 7> types{};
        report.attempts.push_back(run_attempt(inv, pred, norms, as, &types));
        if (!report.matched && report.attempts.back().ok()) {
            report.matched = report.attempts.size() - 1;
            l_types = types;
        }
    }

    if (report.matched) {
        const ConsistencyAssignment& as = report.attempts[*report.matched].assignment;
        if (as.tau != inv.tau_ideal) {
            report.notes.push_back("matching assignment uses tau=" + to_string(as.tau) +
                                   ", the symbol rule gives " + to_string(inv.tau_ideal));
        }
        for (std::size_t j = 0; j < 7; ++j) {
            if (pred.cl2_l[j] == pred.cl2_l_table[j]) continue;
            const std::string l = "L" + std::to_string(j + 1);
            // a matching assignment already agrees with the group reading
            report.notes.push_back(l + ": group reading " + pred.cl2_l[j].to_string() + ", table reading " +
                                   pred.cl2_l_table[j].to_string() + ", group gives " + l_types[j].to_string());
        }
    }
    return report;
}

ConsistencyReport consistency_check(const FieldInvariants& inv) {
    ConsistencyReport report = run_consistency(inv);
    if (!report.passed()) {
        throw Error(ErrorKind::theorem_inconsistency,
                    inv.triple.to_string() + " has no assignment matching every check\n" + report.transcript());
    }
    return report;
}

}  // namespace tower2
