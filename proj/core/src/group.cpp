#include <algorithm>
#include <sstream>

#include "tower2/error.hpp"
#include "tower2/group2.hpp"

namespace tower2 {

namespace words {

Word gen(int g) { return {2 * g}; }

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& l : out) l ^= 1;
    return out;
}

Word power(const Word& w, std::int64_t e) {
    const Word base = e < 0 ? inverse(w) : w;
    Word out;
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) out.insert(out.end(), base.begin(), base.end());
    return free_reduce(out);
}

Word concat(std::initializer_list<Word> parts) {
    Word out;
    for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
    return free_reduce(out);
}

Word comm(const Word& a, const Word& b) { return concat({inverse(a), inverse(b), a, b}); }

Word free_reduce(const Word& w) {
    Word out;
    for (int l : w) {
        if (!out.empty() && out.back() == (l ^ 1)) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

}  // namespace words

FiniteTwoGroup FiniteTwoGroup::structural(const AbelianLattice& lattice, const IntMat2& phi_rows, const IntVec2& r0) {
    FiniteTwoGroup g;
    g.carrier_ = Carrier::structural;
    g.lattice_ = lattice;
    g.a_order_ = lattice.order();
    g.order_ = 2 * g.a_order_;
    if (g.order_ > (std::uint64_t{1} << kStructuralCapLog2)) {
        throw Error(ErrorKind::size_cap, "structural group of order " + std::to_string(g.order_) + " exceeds 2^" +
                                             std::to_string(kStructuralCapLog2));
    }
    if ((g.order_ & (g.order_ - 1)) != 0) {
        throw Error(ErrorKind::construction_invariant, "group order is not a power of two");
    }

    auto image = [&](const IntVec2& v) -> IntVec2 {
        return {v[0] * phi_rows[0][0] + v[1] * phi_rows[1][0], v[0] * phi_rows[0][1] + v[1] * phi_rows[1][1]};
    };
    for (const IntVec2& row : lattice.rows()) {
        if (lattice.encode(image(row)) != 0) {
            throw Error(ErrorKind::construction_invariant, "action does not preserve the relation lattice");
        }
    }
    for (const IntVec2& e : {IntVec2{1, 0}, IntVec2{0, 1}}) {
        if (lattice.encode(image(image(e))) != lattice.encode(e)) {
            throw Error(ErrorKind::construction_invariant, "action is not an involution");
        }
    }
    g.r0_ = lattice.encode(r0);
    if (lattice.scale(g.r0_, 2) != 0) throw Error(ErrorKind::construction_invariant, "2 r0 != 0");
    if (lattice.encode(image(r0)) != g.r0_) throw Error(ErrorKind::construction_invariant, "phi(r0) != r0");

    g.phi_.resize(g.a_order_);
    for (Elem a = 0; a < g.a_order_; ++a) g.phi_[a] = lattice.encode(image(lattice.original(a)));
    g.gens_ = {g.element(1, 0, 0), g.element(0, 1, 0), g.element(0, 0, 1)};
    g.names_ = {"rho", "sigma", "tau"};
    return g;
}

FiniteTwoGroup FiniteTwoGroup::from_coset_table(const std::vector<std::vector<std::uint32_t>>& action, int visible,
                                                std::vector<std::string> names) {
    const std::size_t n = action.size();
    if (n == 0) throw Error(ErrorKind::precondition, "empty coset table");
    if (n > (std::size_t{1} << kTableCapLog2)) {
        throw Error(ErrorKind::size_cap, "enumerated group of order " + std::to_string(n) + " exceeds 2^" +
                                             std::to_string(kTableCapLog2));
    }
    const std::size_t ngens = action[0].size();

    // spanning tree: element d is reached from parent[d] by generator via[d]
    std::vector<std::uint32_t> parent(n, 0), via(n, 0), order_bfs;
    std::vector<bool> seen(n, false);
    seen[0] = true;
    order_bfs.push_back(0);
    for (std::size_t k = 0; k < order_bfs.size(); ++k) {
        const std::uint32_t c = order_bfs[k];
        for (std::size_t x = 0; x < ngens; ++x) {
            const std::uint32_t d = action[c][x];
            if (!seen[d]) {
                seen[d] = true;
                parent[d] = c;
                via[d] = static_cast<std::uint32_t>(x);
                order_bfs.push_back(d);
            }
        }
    }
    if (order_bfs.size() != n) throw Error(ErrorKind::construction_invariant, "coset table is not transitive");

    FiniteTwoGroup g;
    g.carrier_ = Carrier::enumerated;
    g.order_ = n;
    g.table_.assign(n * n, 0);
    for (std::size_t c = 0; c < n; ++c) g.table_[c * n] = static_cast<Elem>(c);
    for (std::size_t k = 1; k < n; ++k) {
        const std::uint32_t d = order_bfs[k];
        for (std::size_t c = 0; c < n; ++c) {
            g.table_[c * n + d] = action[g.table_[c * n + parent[d]]][via[d]];
        }
    }
    g.inverse_.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
            if (g.table_[c * n + d] == 0) {
                g.inverse_[c] = static_cast<Elem>(d);
                break;
            }
        }
    }
    if (visible < 0) visible = static_cast<int>(ngens);
    for (int x = 0; x < visible; ++x) g.gens_.push_back(action[0][x]);
    names.resize(static_cast<std::size_t>(visible));
    for (int x = 0; x < visible; ++x) {
        if (names[x].empty()) names[x] = "g" + std::to_string(x + 1);
    }
    g.names_ = std::move(names);
    return g;
}

Elem FiniteTwoGroup::mul(Elem a, Elem b) const {
    if (carrier_ == Carrier::enumerated) return table_[static_cast<std::size_t>(a) * order_ + b];
    const Elem e1 = static_cast<Elem>(a / a_order_), e2 = static_cast<Elem>(b / a_order_);
    Elem x = static_cast<Elem>(a % a_order_);
    const Elem y = static_cast<Elem>(b % a_order_);
    if (e2) x = phi_[x];
    Elem s = lattice_->add(x, y);
    if (e1 && e2) s = lattice_->add(s, r0_);
    return static_cast<Elem>((e1 ^ e2) * a_order_ + s);
}

Elem FiniteTwoGroup::inv(Elem a) const {
    if (carrier_ == Carrier::enumerated) return inverse_[a];
    const Elem x = static_cast<Elem>(a % a_order_);
    if (a < a_order_) return lattice_->neg(x);
    return static_cast<Elem>(a_order_ + lattice_->neg(lattice_->add(phi_[x], r0_)));
}

Elem FiniteTwoGroup::pow(Elem a, std::int64_t e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elem result = 0;
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

Elem FiniteTwoGroup::comm(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

Elem FiniteTwoGroup::conj(Elem a, Elem b) const { return mul(mul(inv(b), a), b); }

std::uint64_t FiniteTwoGroup::element_order(Elem a) const {
    std::uint64_t k = 1;
    for (Elem x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

Elem FiniteTwoGroup::evaluate(const Word& w) const {
    Elem x = 0;
    for (int l : w) {
        const Elem g = gens_.at(static_cast<std::size_t>(l >> 1));
        x = mul(x, (l & 1) ? inv(g) : g);
    }
    return x;
}

const AbelianLattice& FiniteTwoGroup::lattice() const {
    if (!lattice_) throw Error(ErrorKind::precondition, "group has no structural carrier");
    return *lattice_;
}

Elem FiniteTwoGroup::element(int eps, std::int64_t s, std::int64_t t) const {
    return static_cast<Elem>((eps & 1) * a_order_ + lattice().encode(s, t));
}

void FiniteTwoGroup::require_enumerable(const char* what) const {
    if (order_ > kEnumerationCap) {
        std::ostringstream os;
        os << what << " needs all " << order_ << " elements; the limit is 2^" << kEnumerationCapLog2;
        throw Error(ErrorKind::size_cap, os.str());
    }
}

namespace {

void check_params(int m, int n, int unit_norm, char variant) {
    if (m < 2) throw Error(ErrorKind::precondition, "m must be at least 2");
    if (n < 1) throw Error(ErrorKind::precondition, "n must be at least 1");
    if (unit_norm != 1 && unit_norm != -1) throw Error(ErrorKind::precondition, "N must be +1 or -1");
    if (variant != 'a' && variant != 'b') throw Error(ErrorKind::precondition, "variant must be 'a' or 'b'");
    if (m + n + 3 > kStructuralCapLog2) {
        throw Error(ErrorKind::size_cap, "order 2^" + std::to_string(m + n + 3) + " exceeds the structural limit");
    }
}

}  // namespace

FiniteTwoGroup build_presented_group(int m, int n, int unit_norm, char variant) {
    check_params(m, n, unit_norm, variant);
    const std::int64_t M = std::int64_t{1} << m;
    const std::int64_t T = std::int64_t{1} << (n + 1);
    FiniteTwoGroup g;
    if (unit_norm == -1) {
        const AbelianLattice lat({{{M, -T}, {0, 2 * T}}});
        g = FiniteTwoGroup::structural(lat, {{{M - 1, 0}, {0, -1}}}, {M / 2, T / 2});
    } else {
        const AbelianLattice lat({{{M, 0}, {0, 2 * T}}});
        g = FiniteTwoGroup::structural(lat, {{{-1, 0}, {0, T - 1}}}, {M / 2, variant == 'a' ? T : 0});
    }
    if (g.order_log2() != m + n + 3) {
        throw Error(ErrorKind::construction_invariant, "order is not 2^(m+n+3)");
    }
    return g;
}

std::vector<Word> presented_group_relators(int m, int n, int unit_norm, char variant) {
    check_params(m, n, unit_norm, variant);
    using namespace words;
    const Word rho = gen(0), sigma = gen(1), tau = gen(2);
    const std::int64_t M = std::int64_t{1} << m;
    const std::int64_t T = std::int64_t{1} << (n + 1);
    if (unit_norm == -1) {
        return {
            power(rho, 4),
            power(sigma, 2 * M),
            power(tau, 2 * T),
            concat({power(sigma, M), power(tau, -T)}),
            concat({power(rho, -2), power(tau, T / 2), power(sigma, M / 2)}),
            comm(tau, sigma),
            concat({comm(sigma, rho), power(sigma, -(M - 2))}),
            concat({comm(rho, tau), power(tau, -2)}),
        };
    }
    const Word rho_sq = variant == 'a' ? concat({power(tau, T), power(sigma, M / 2)}) : power(sigma, M / 2);
    return {
        power(rho, 4),
        power(sigma, M),
        power(tau, 2 * T),
        concat({power(rho, -2), rho_sq}),
        comm(tau, sigma),
        concat({comm(rho, sigma), power(sigma, -2)}),
        concat({comm(tau, rho), power(tau, -(T - 2))}),
    };
}

}  // namespace tower2
