#include "tower2/params.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "tower2/error.hpp"
#include "tower2/gaussian.hpp"

namespace tower2 {

std::string FieldTriple::to_string() const {
    std::ostringstream os;
    os << p1 << '.' << p2 << '.' << q;
    return os.str();
}

std::string to_string(TauIdeal t) { return t == TauIdeal::H1H3 ? "H1H3" : "H2H3"; }

std::optional<std::string> triple_violation(std::int64_t p1, std::int64_t p2, std::int64_t q) {
    if (!is_prime(p1)) return "p1 = " + std::to_string(p1) + " is not prime";
    if (!is_prime(p2)) return "p2 = " + std::to_string(p2) + " is not prime";
    if (!is_prime(q)) return "q = " + std::to_string(q) + " is not prime";
    if (p1 == p2) return "p1 = p2";
    if (p1 % 4 != 1) return "p1 = 1 mod 4 fails";
    if (p2 % 4 != 1) return "p2 = 1 mod 4 fails";
    if (q % 4 != 3) return "q = 3 mod 4 fails";
    if (!legendre(2, p1).is_minus()) return "legendre(2,p1) != -1";
    if (!legendre(2, p2).is_minus()) return "legendre(2,p2) != -1";
    if (!legendre(p1, q).is_minus()) return "legendre(p1,q) != -1";
    if (!legendre(p2, q).is_minus()) return "legendre(p2,q) != -1";
    return std::nullopt;
}

FieldTriple validate_triple(std::int64_t p1, std::int64_t p2, std::int64_t q) {
    if (auto why = triple_violation(p1, p2, q)) {
        throw Error(ErrorKind::invalid_triple, *why);
    }
    if (p1 > p2) std::swap(p1, p2);
    return {p1, p2, q};
}

OrderClassCoclass predicted_order_class_coclass(int m, int n, int gamma, int unit_norm, std::optional<int> delta) {
    OrderClassCoclass out;
    out.order = std::uint64_t{1} << (m + n + 3);
    const bool cc4 = gamma == 1 && unit_norm == 1 && delta && *delta == -1;
    if (gamma == -1) {
        out.nilpotency_class = m + 1;
    } else if (cc4) {
        out.nilpotency_class = m;
    } else {
        out.nilpotency_class = n + 2;
    }
    out.coclass = cc4 ? 4 : 3;
    return out;
}

OrderClassCoclass predicted_order_class_coclass(const FieldInvariants& inv) {
    return predicted_order_class_coclass(inv.m, inv.n, inv.gamma, inv.unit_norm, inv.delta);
}

std::string group_label(int m, int n, int unit_norm) {
    if (unit_norm == -1) {
        if (m == 2 && n == 1) return "64.180";
        if (m == 2 && n == 2) return "128.985";
        if (m == 2 && n == 3) return "256.6720";
        if (m == 2 && n == 4) return "512.60892";
        if (n == 1 && m == 3) return "128.986";
        if (n == 1 && m == 4) return "256.6721";
        if (n == 1 && m == 5) return "512.60893";
        if (n == 1 && m == 6) return "512.60891-#1;3";
    } else {
        if (m == 2 && n == 2) return "128.986v";
        if (n == 1 && m == 3) return "128.439";
        if (n == 1 && m == 4) return "256.5492";
        if (n == 1 && m == 5) return "512.58909";
    }
    std::ostringstream os;
    os << "unlabeled(" << m << ',' << n << ',' << (unit_norm > 0 ? "+1" : "-1") << ')';
    return os.str();
}

std::string group_label(const FieldInvariants& inv) { return group_label(inv.m, inv.n, inv.unit_norm); }

namespace {

int exact_log2(std::uint64_t x, const char* what) {
    if (x == 0 || (x & (x - 1)) != 0) {
        throw Error(ErrorKind::construction_invariant, std::string(what) + " is not a power of two");
    }
    return __builtin_ctzll(x);
}

}  // namespace

FieldInvariants compute_invariants(const FieldTriple& t, QuadDataSource& source) {
    if (auto why = triple_violation(t.p1, t.p2, t.q)) {
        throw Error(ErrorKind::invalid_triple, *why);
    }
    const std::int64_t p1 = t.p1, p2 = t.p2, q = t.q;
    FieldInvariants inv;
    inv.triple = t;
    inv.gamma = legendre(p1, p2).value();
    if (inv.gamma == 1) {
        inv.delta = (quartic_residue_symbol(p1, p2) * quartic_residue_symbol(p2, p1)).value();
    } else {
        inv.big_i = (quartic_symbol_of_two(p1 * p2) * quartic_residue_symbol(2 * p1, p2) *
                     quartic_residue_symbol(2 * p2, p1))
                        .value();
    }
    const QuadFieldData real = source.get(p1 * p2);
    const QuadFieldData imag = source.get(-p1 * p2);
    if (!real.unit) {
        throw Error(ErrorKind::construction_invariant, "missing fundamental unit for " + std::to_string(p1 * p2));
    }
    inv.unit_norm = real.unit->norm;
    inv.n = exact_log2(real.h2, "h2(p1 p2)");
    inv.m = exact_log2(imag.h2, "h2(-p1 p2)") - 1;

    const GaussianPrimePair g1 = split_prime(p1);
    const GaussianPrimePair g2 = split_prime(p2);
    inv.pi_symbol = gi_quadratic_symbol(g1.pi1, g2.pi1).value();
    inv.beta = (symbol_one_plus_i(g1.pi1) * symbol_one_plus_i(g2.pi1)).value();

    inv.disc_k = 16 * (p1 * p2 * q) * (p1 * p2 * q);
    const OrderClassCoclass occ = predicted_order_class_coclass(inv);
    inv.order_g = occ.order;
    inv.class_g = occ.nilpotency_class;
    inv.coclass_g = occ.coclass;
    if (inv.gamma == 1) {
        inv.tau_ideal = inv.beta == 1 ? TauIdeal::H1H3 : TauIdeal::H2H3;
    } else {
        inv.tau_ideal = (*inv.big_i == inv.pi_symbol) ? TauIdeal::H1H3 : TauIdeal::H2H3;
    }
    inv.group_label = group_label(inv);
    return inv;
}

FieldInvariants compute_invariants(const FieldTriple& t) {
    DirectQuadSource src;
    return compute_invariants(t, src);
}

std::vector<FieldTriple> enumerate_triples(std::int64_t max_d) {
    std::vector<FieldTriple> out;
    if (max_d <= 105) return out;
    const auto primes = primes_up_to(static_cast<std::uint64_t>(max_d / 15 + 2));
    std::vector<std::int64_t> five_mod_eight;
    std::vector<std::int64_t> three_mod_four;
    for (std::uint32_t p : primes) {
        if (p % 8 == 5) five_mod_eight.push_back(p);
        if (p % 4 == 3) three_mod_four.push_back(p);
    }
    for (std::size_t i = 0; i < five_mod_eight.size(); ++i) {
        const std::int64_t p1 = five_mod_eight[i];
        for (std::size_t j = i + 1; j < five_mod_eight.size(); ++j) {
            const std::int64_t p2 = five_mod_eight[j];
            if (p1 * p2 * 3 >= max_d) break;
            for (std::int64_t q : three_mod_four) {
                if (p1 * p2 * q >= max_d) break;
                if (!triple_violation(p1, p2, q)) out.push_back({p1, p2, q});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const FieldTriple& a, const FieldTriple& b) { return a.d() < b.d(); });
    return out;
}

std::vector<ScanEntry> scan(std::int64_t max_d, unsigned jobs, QuadDataSource& source) {
    const std::vector<FieldTriple> triples = enumerate_triples(max_d);
    std::vector<ScanEntry> out(triples.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= triples.size()) return;
            try {
                out[k] = {triples[k], compute_invariants(triples[k], source)};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<ScanEntry> scan(std::int64_t max_d, unsigned jobs) {
    DirectQuadSource src;
    return scan(max_d, jobs, src);
}

}  // namespace tower2
