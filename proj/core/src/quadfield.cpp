#include "tower2/quadfield.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tower2/error.hpp"

namespace tower2 {

namespace {

constexpr std::int64_t kMaxAbsDisc = std::int64_t{1} << 31;

std::int64_t floor_sqrt(std::int64_t x) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

struct Xgcd {
    std::int64_t g, x, y;
};

// g = x a + y b, g >= 0
Xgcd xgcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

void check_disc_range(std::int64_t D) {
    if (D == 0 || D >= kMaxAbsDisc || D <= -kMaxAbsDisc) {
        throw Error(ErrorKind::invalid_discriminant, "discriminant out of supported range: " + std::to_string(D));
    }
}

std::uint64_t two_power_part(std::uint64_t h) { return h == 0 ? 0 : (std::uint64_t{1} << __builtin_ctzll(h)); }

}  // namespace

std::string BinaryQuadraticForm::to_string() const {
    std::ostringstream os;
    os << '(' << a << ", " << b << ", " << c << ')';
    return os.str();
}

std::int64_t discriminant_of(std::int64_t m) {
    if (m == 0 || m == 1 || !is_squarefree(m)) {
        throw Error(ErrorKind::invalid_radicand, "not a squarefree radicand: " + std::to_string(m));
    }
    return mod_pos(m, 4) == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 0 || D == 1) return false;
    std::int64_t r = mod_pos(D, 4);
    if (r == 1) return is_squarefree(D);
    if (r != 0) return false;
    std::int64_t m = D / 4;
    std::int64_t rm = mod_pos(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

bool is_reduced_definite(const BinaryQuadraticForm& f) {
    if (f.a <= 0) return false;
    if (std::abs(f.b) > f.a || f.a > f.c) return false;
    if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

BinaryQuadraticForm reduce_definite(BinaryQuadraticForm f) {
    const std::int64_t D = f.disc();
    if (D >= 0 || f.a <= 0) {
        throw Error(ErrorKind::invalid_discriminant, "not a positive definite form: " + f.to_string());
    }
    for (;;) {
        // normalize b into (-a, a]
        std::int64_t two_a = 2 * f.a;
        std::int64_t b = mod_pos(f.b, two_a);
        if (b > f.a) b -= two_a;
        f.b = b;
        f.c = (f.b * f.b - D) / (4 * f.a);
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if ((f.a == f.c || f.b == -f.a) && f.b < 0) f.b = -f.b;
        return f;
    }
}

BinaryQuadraticForm principal_form(std::int64_t D) {
    check_disc_range(D);
    std::int64_t b = mod_pos(D, 4) == 1 ? 1 : 0;
    BinaryQuadraticForm f{1, b, (b * b - D) / 4};
    return D < 0 ? reduce_definite(f) : f;
}

BinaryQuadraticForm inverse_form(const BinaryQuadraticForm& f) { return reduce_definite({f.a, -f.b, f.c}); }

BinaryQuadraticForm compose(const BinaryQuadraticForm& f1, const BinaryQuadraticForm& f2) {
    const std::int64_t D = f1.disc();
    if (D != f2.disc()) {
        throw Error(ErrorKind::invalid_discriminant, "composition of forms with different discriminants");
    }
    BinaryQuadraticForm p = f1, r = f2;
    if (p.a > r.a) std::swap(p, r);
    const std::int64_t a1 = p.a, b1 = p.b;
    const std::int64_t a2 = r.a, b2 = r.b, c2 = r.c;
    const std::int64_t s = (b1 + b2) / 2;
    const std::int64_t n = b2 - s;
    std::int64_t d = 0, y1 = 0;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        Xgcd e = xgcd(a2, a1);
        d = e.g;
        y1 = e.x;
    }
    std::int64_t d1 = 0, x2 = 0, y2 = 0;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Xgcd e = xgcd(s, d);
        d1 = e.g;
        x2 = e.x;
        y2 = -e.y;
    }
    const std::int64_t v1 = a1 / d1;
    const std::int64_t v2 = a2 / d1;
    const std::int64_t rr = mod_pos(mod_pos(y1 * y2, v1) * mod_pos(n, v1) - mod_pos(x2 * c2, v1), v1);
    const std::int64_t b3 = b2 + 2 * v2 * rr;
    const std::int64_t a3 = v1 * v2;
    const std::int64_t c3 = (c2 * d1 + rr * (b2 + v2 * rr)) / v1;
    BinaryQuadraticForm out{a3, b3, c3};
    if (out.disc() != D) {
        throw Error(ErrorKind::construction_invariant, "composition changed the discriminant");
    }
    return reduce_definite(out);
}

std::vector<BinaryQuadraticForm> reduced_forms(std::int64_t D) {
    check_disc_range(D);
    if (D >= 0 || (mod_pos(D, 4) != 0 && mod_pos(D, 4) != 1)) {
        throw Error(ErrorKind::invalid_discriminant, "not a negative discriminant: " + std::to_string(D));
    }
    std::vector<BinaryQuadraticForm> out;
    const std::int64_t amax = floor_sqrt(-D / 3);
    for (std::int64_t a = 1; a <= amax; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (mod_pos(b - D, 2) != 0) continue;
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            std::int64_t c = num / (4 * a);
            BinaryQuadraticForm f{a, b, c};
            if (!is_reduced_definite(f)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            out.push_back(f);
        }
    }
    return out;
}

namespace {

struct FormKey {
    std::int64_t a, b;
    bool operator==(const FormKey&) const = default;
};

struct FormKeyHash {
    std::size_t operator()(const FormKey& k) const {
        return std::hash<std::int64_t>()(k.a * 1000003 + k.b);
    }
};

std::vector<BinaryQuadraticForm> prime_forms(std::int64_t D) {
    std::vector<BinaryQuadraticForm> gens;
    const std::int64_t bound = floor_sqrt(-D / 3);
    if (bound < 2) return gens;
    for (std::uint32_t p32 : primes_up_to(static_cast<std::uint64_t>(bound))) {
        const std::int64_t p = p32;
        std::int64_t b = -1;
        if (p == 2) {
            switch (mod_pos(D, 8)) {
                case 0: b = 0; break;
                case 1: b = 1; break;
                case 4: b = 2; break;
                default: break;
            }
        } else {
            if (legendre(D, p).is_minus()) continue;
            std::int64_t r = static_cast<std::int64_t>(sqrt_mod_prime(D, p));
            b = (mod_pos(r - D, 2) == 0) ? r : p - r;
        }
        if (b < 0) continue;
        gens.push_back(reduce_definite({p, b, (b * b - D) / (4 * p)}));
    }
    return gens;
}

// Invariant factors of a finite abelian group from the element orders.
std::vector<std::uint64_t> invariant_factors_from_orders(const std::vector<std::uint64_t>& orders,
                                                         std::uint64_t h) {
    std::map<std::uint64_t, std::vector<int>> exps_by_prime;
    std::uint64_t rest = h;
    for (std::uint64_t p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        int vmax = 0;
        while (rest % p == 0) {
            rest /= p;
            ++vmax;
        }
        // counts[k] = #{g : ord(g) divides p^k}
        std::vector<std::uint64_t> counts(vmax + 1, 0);
        for (std::uint64_t o : orders) {
            std::uint64_t pk = 1;
            for (int k = 0; k <= vmax; ++k) {
                if (pk % o == 0) counts[k]++;
                pk *= p;
            }
        }
        std::vector<int> log_counts(vmax + 1, 0);
        for (int k = 0; k <= vmax; ++k) {
            std::uint64_t c = counts[k];
            int l = 0;
            while (c > 1) {
                c /= p;
                ++l;
            }
            log_counts[k] = l;
        }
        // number of cyclic factors with exponent >= k
        std::vector<int> at_least(vmax + 2, 0);
        for (int k = 1; k <= vmax; ++k) at_least[k] = log_counts[k] - log_counts[k - 1];
        std::vector<int> exps;
        for (int k = 1; k <= vmax; ++k) {
            for (int j = 0; j < at_least[k] - at_least[k + 1]; ++j) exps.push_back(k);
        }
        std::sort(exps.rbegin(), exps.rend());
        exps_by_prime[p] = exps;
    }
    std::size_t len = 0;
    for (auto& [p, e] : exps_by_prime) len = std::max(len, e.size());
    std::vector<std::uint64_t> factors(len, 1);
    for (auto& [p, e] : exps_by_prime) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) factors[i] *= p;
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

}  // namespace

ImaginaryClassGroup class_group_imaginary(std::int64_t D) {
    check_disc_range(D);
    if (D >= 0 || !is_fundamental_discriminant(D)) {
        throw Error(ErrorKind::invalid_discriminant, "not a negative fundamental discriminant: " + std::to_string(D));
    }
    const BinaryQuadraticForm one = principal_form(D);
    const std::vector<BinaryQuadraticForm> gens = prime_forms(D);

    std::vector<BinaryQuadraticForm> elems{one};
    std::unordered_map<FormKey, std::size_t, FormKeyHash> index{{{one.a, one.b}, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            BinaryQuadraticForm x = compose(elems[i], g);
            if (index.emplace(FormKey{x.a, x.b}, elems.size()).second) elems.push_back(x);
        }
    }
    const std::uint64_t h = elems.size();
    std::vector<std::uint64_t> orders;
    orders.reserve(h);
    for (const auto& f : elems) {
        std::uint64_t o = 1;
        BinaryQuadraticForm x = f;
        while (!(x == one)) {
            x = compose(x, f);
            ++o;
            if (o > h) throw Error(ErrorKind::construction_invariant, "element order exceeds class number");
        }
        orders.push_back(o);
    }
    ImaginaryClassGroup out;
    out.disc = D;
    out.h = h;
    out.invariant_factors = invariant_factors_from_orders(orders, h);
    out.cl2 = two_part(out.invariant_factors);
    return out;
}

AbelianType two_part(const std::vector<std::uint64_t>& factors) {
    std::vector<int> exps;
    for (std::uint64_t f : factors) {
        if (f == 0) throw Error(ErrorKind::precondition, "zero invariant factor");
        if (f == 1) continue;
        exps.push_back(__builtin_ctzll(f));
    }
    return AbelianType::from_exponents(std::move(exps));
}

bool FundamentalUnit::satisfies_norm_equation() const {
    BigInt lhs = x_num * x_num - BigInt(static_cast<long>(radicand)) * y_num * y_num;
    return lhs == BigInt(norm * denom * denom);
}

std::string FundamentalUnit::to_string() const {
    std::ostringstream os;
    if (denom == 1) {
        os << x_num << " + " << y_num << "*sqrt(" << radicand << ")";
    } else {
        os << "(" << x_num << " + " << y_num << "*sqrt(" << radicand << "))/" << denom;
    }
    return os.str();
}

FundamentalUnit fundamental_unit(std::int64_t m) {
    if (m <= 1 || !is_squarefree(m)) {
        throw Error(ErrorKind::invalid_radicand, "fundamental_unit needs a squarefree m > 1: " + std::to_string(m));
    }
    const bool half = mod_pos(m, 4) == 1;
    const std::int64_t s = floor_sqrt(m);
    // Convergents p/q of theta = (P + sqrt m)/Q approximate minus the conjugate of the
    // integral basis element: theta = sqrt m, or (sqrt m - 1)/2 when m = 1 mod 4.
    std::int64_t P = half ? -1 : 0;
    std::int64_t Q = half ? 2 : 1;
    // convergents start from p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0
    BigInt p_prev = 0, p_cur = 1;
    BigInt q_prev = 1, q_cur = 0;
    for (std::int64_t iter = 0; iter < 2 * m + 10; ++iter) {
        const std::int64_t a = (P + s) / Q;
        BigInt p_next = a * p_cur + p_prev;
        BigInt q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        P = a * Q - P;
        Q = (m - P * P) / Q;

        FundamentalUnit u;
        u.radicand = m;
        if (half) {
            // p/q approximates (sqrt m - 1)/2, the unit is p + q (1 + sqrt m)/2
            u.x_num = 2 * p_cur + q_cur;
            u.y_num = q_cur;
            u.denom = 2;
            if (mpz_even_p(u.y_num.get_mpz_t()) != 0) {
                u.x_num /= 2;
                u.y_num /= 2;
                u.denom = 1;
            }
        } else {
            u.x_num = p_cur;
            u.y_num = q_cur;
            u.denom = 1;
        }
        if (u.y_num == 0) continue;
        BigInt nrm = u.x_num * u.x_num - BigInt(static_cast<long>(m)) * u.y_num * u.y_num;
        BigInt dd = u.denom * u.denom;
        if (nrm == dd || nrm == -dd) {
            u.norm = (nrm > 0) ? 1 : -1;
            if (mod_pos(m, 8) == 1 && u.denom != 1) {
                throw Error(ErrorKind::construction_invariant, "half-integral unit for m = 1 mod 8");
            }
            return u;
        }
    }
    throw Error(ErrorKind::construction_invariant, "continued fraction did not close for m = " + std::to_string(m));
}

std::uint64_t narrow_class_number_real(std::int64_t D) {
    check_disc_range(D);
    if (D <= 0 || !is_fundamental_discriminant(D)) {
        throw Error(ErrorKind::invalid_discriminant, "not a positive fundamental discriminant: " + std::to_string(D));
    }
    const std::int64_t s = floor_sqrt(D);
    if (s * s == D) {
        throw Error(ErrorKind::invalid_discriminant, "square discriminant: " + std::to_string(D));
    }
    // Reduced indefinite forms: 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b.
    std::vector<BinaryQuadraticForm> forms;
    for (std::int64_t b = 1; b <= s; ++b) {
        if (mod_pos(b - D, 2) != 0) continue;
        const std::int64_t ac = (b * b - D) / 4;  // negative
        const std::int64_t n = -ac;
        // |a| = x with sqrt D - b < 2x < sqrt D + b, i.e. s - b < 2x <= s + b
        for (std::int64_t x = std::max<std::int64_t>(1, (s - b) / 2); 2 * x <= s + b; ++x) {
            if (2 * x <= s - b || n % x != 0) continue;
            for (int sign : {1, -1}) {
                BinaryQuadraticForm f{sign * x, b, -sign * (n / x)};
                if (std::gcd(std::gcd(x, b), n / x) != 1) continue;
                forms.push_back(f);
            }
        }
    }
    std::unordered_map<FormKey, std::size_t, FormKeyHash> index;
    for (std::size_t i = 0; i < forms.size(); ++i) index[{forms[i].a, forms[i].b}] = i;
    std::vector<bool> seen(forms.size(), false);
    std::uint64_t cycles = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            const BinaryQuadraticForm& f = forms[j];
            const std::int64_t c = f.c;
            const std::int64_t two_c = 2 * std::abs(c);
            const std::int64_t b2 = s - mod_pos(s + f.b, two_c);
            auto it = index.find({c, b2});
            if (it == index.end()) {
                throw Error(ErrorKind::construction_invariant, "reduction step left the reduced set");
            }
            j = it->second;
        }
    }
    return cycles;
}

RealClassNumber class_number_real(std::int64_t m) {
    const std::int64_t D = discriminant_of(m);
    if (m <= 1) throw Error(ErrorKind::invalid_radicand, "class_number_real needs m > 1");
    const std::uint64_t hplus = narrow_class_number_real(D);
    const FundamentalUnit u = fundamental_unit(m);
    RealClassNumber out;
    out.h = u.norm == -1 ? hplus : hplus / 2;
    out.h2 = two_power_part(out.h);
    return out;
}

QuadFieldData quad_field_data(std::int64_t m) {
    QuadFieldData out;
    out.radicand = m;
    out.disc = discriminant_of(m);
    if (m < 0) {
        ImaginaryClassGroup g = class_group_imaginary(out.disc);
        out.h = g.h;
        out.h2 = two_power_part(g.h);
        out.cl2 = g.cl2;
        out.structure = g.invariant_factors;
    } else {
        out.unit = fundamental_unit(m);
        const std::uint64_t hplus = narrow_class_number_real(out.disc);
        out.h = out.unit->norm == -1 ? hplus : hplus / 2;
        out.h2 = two_power_part(out.h);
    }
    return out;
}

namespace {

SquareClassWitness find_square_pair(const BigInt& x, const BigInt& fa, const BigInt& fb, const char* what) {
    for (int s : {1, -1}) {
        SquareClassWitness w;
        w.sign = s;
        w.factor_a = fa * (x + s);
        w.factor_b = fb * (x - s);
        if (is_perfect_square(w.factor_a, &w.root_a) && is_perfect_square(w.factor_b, &w.root_b)) return w;
    }
    throw Error(ErrorKind::lemma_violation, std::string("no sign makes both factors squares: ") + what);
}

}  // namespace

SquareClassWitness square_class_norm_plus(const FundamentalUnit& unit, std::int64_t p1, std::int64_t p2) {
    if (unit.radicand != p1 * p2 || unit.norm != 1 || unit.denom != 1) {
        throw Error(ErrorKind::precondition, "case (1) needs the integral norm +1 unit of Q(sqrt(p1 p2))");
    }
    return find_square_pair(unit.x_num, BigInt(2 * p1), BigInt(2 * p2), "2p1(a+s), 2p2(a-s)");
}

SquareClassWitness square_class_radicand(const FundamentalUnit& unit, std::int64_t p1, std::int64_t p2,
                                         std::int64_t q) {
    if (unit.radicand != p1 * p2 * q || unit.denom != 1 || unit.norm != 1) {
        throw Error(ErrorKind::precondition, "case (2) needs the integral norm +1 unit of Q(sqrt(p1 p2 q))");
    }
    return find_square_pair(unit.x_num, BigInt(p1 * p2), BigInt(q), "p1p2(x+s), q(x-s)");
}

}  // namespace tower2
