// HLT coset enumeration over the trivial subgroup, following the formulation
// in Holt, Eick and O'Brien, Handbook of Computational Group Theory, ch. 5.

#include <algorithm>

#include "tower2/error.hpp"
#include "tower2/group2.hpp"

namespace tower2 {

namespace {

constexpr std::int32_t kUndef = -1;

class CosetTable {
public:
    CosetTable(int num_generators, std::size_t max_cosets)
        : cols_(2 * num_generators), max_cosets_(max_cosets) {
        new_coset();
    }

    std::int32_t& at(std::int32_t c, int x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
    std::size_t size() const { return p_.size(); }
    bool live(std::int32_t c) const { return p_[c] == c; }
    int cols() const { return cols_; }

    std::int32_t new_coset() {
        if (p_.size() >= max_cosets_) {
            throw Error(ErrorKind::enumeration_overflow,
                        "coset table exhausted after " + std::to_string(max_cosets_) + " cosets");
        }
        const auto c = static_cast<std::int32_t>(p_.size());
        p_.push_back(c);
        table_.resize(table_.size() + cols_, kUndef);
        return c;
    }

    void define(std::int32_t c, int x) {
        const std::int32_t d = new_coset();
        at(c, x) = d;
        at(d, x ^ 1) = c;
    }

    void scan_and_fill(std::int32_t c, const Word& w) {
        if (w.empty()) return;
        std::int32_t f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        for (;;) {
            while (i <= j && at(f, w[i]) != kUndef) f = at(f, w[i++]);
            if (i > j) {
                if (f != c) coincidence(f, c);
                return;
            }
            while (j >= i && at(b, w[j] ^ 1) != kUndef) b = at(b, w[j--] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                at(f, w[i]) = b;
                at(b, w[i] ^ 1) = f;
                return;
            }
            define(f, w[i]);
        }
    }

    std::int32_t rep(std::int32_t k) {
        std::int32_t l = k;
        while (p_[l] != l) l = p_[l];
        while (p_[k] != l) {
            const std::int32_t next = p_[k];
            p_[k] = l;
            k = next;
        }
        return l;
    }

    void merge(std::int32_t k, std::int32_t l, std::vector<std::int32_t>& queue) {
        k = rep(k);
        l = rep(l);
        if (k == l) return;
        const std::int32_t lo = std::min(k, l), hi = std::max(k, l);
        p_[hi] = lo;
        queue.push_back(hi);
    }

    void coincidence(std::int32_t a, std::int32_t b) {
        std::vector<std::int32_t> queue;
        merge(a, b, queue);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::int32_t e = queue[qi];
            for (int x = 0; x < cols_; ++x) {
                const std::int32_t f = at(e, x);
                if (f == kUndef) continue;
                if (at(f, x ^ 1) == e) at(f, x ^ 1) = kUndef;
                const std::int32_t e1 = rep(e), f1 = rep(f);
                if (at(e1, x) != kUndef) {
                    merge(f1, at(e1, x), queue);
                } else if (at(f1, x ^ 1) != kUndef) {
                    merge(e1, at(f1, x ^ 1), queue);
                } else {
                    at(e1, x) = f1;
                    at(f1, x ^ 1) = e1;
                }
            }
        }
    }

private:
    int cols_;
    std::size_t max_cosets_;
    std::vector<std::int32_t> p_;
    std::vector<std::int32_t> table_;
};

}  // namespace

std::vector<std::vector<std::uint32_t>> enumerate_cosets(int num_generators, const std::vector<Word>& relators,
                                                         const CosetEnumerationOptions& opts) {
    if (num_generators < 1) throw Error(ErrorKind::precondition, "presentation needs a generator");
    std::vector<Word> rels;
    for (const Word& r : relators) {
        for (int l : r) {
            if (l < 0 || l >= 2 * num_generators) {
                throw Error(ErrorKind::precondition, "relator letter out of range");
            }
        }
        Word w = words::free_reduce(r);
        if (!w.empty()) rels.push_back(std::move(w));
    }

    CosetTable t(num_generators, opts.max_cosets);
    for (std::size_t c = 0; c < t.size(); ++c) {
        const auto cc = static_cast<std::int32_t>(c);
        for (const Word& r : rels) {
            if (!t.live(cc)) break;
            t.scan_and_fill(cc, r);
        }
        if (!t.live(cc)) continue;
        for (int x = 0; x < t.cols(); ++x) {
            if (t.at(cc, x) == kUndef) t.define(cc, x);
        }
    }

    // compact: live cosets in BFS order from the subgroup coset
    std::vector<std::int32_t> number(t.size(), -1);
    std::vector<std::int32_t> order{0};
    number[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (int x = 0; x < t.cols(); x += 2) {
            const std::int32_t d = t.rep(t.at(order[k], x));
            if (number[d] < 0) {
                number[d] = static_cast<std::int32_t>(order.size());
                order.push_back(d);
            }
        }
    }
    std::vector<std::vector<std::uint32_t>> out(order.size(), std::vector<std::uint32_t>(num_generators));
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (int x = 0; x < num_generators; ++x) {
            out[k][x] = static_cast<std::uint32_t>(number[t.rep(t.at(order[k], 2 * x))]);
        }
    }
    return out;
}

FiniteTwoGroup coset_enumerate(int num_generators, const std::vector<Word>& relators, std::vector<std::string> names,
                               int visible, const CosetEnumerationOptions& opts) {
    return FiniteTwoGroup::from_coset_table(enumerate_cosets(num_generators, relators, opts), visible,
                                            std::move(names));
}

}  // namespace tower2
