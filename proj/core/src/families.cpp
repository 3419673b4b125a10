#include <map>
#include <set>
#include <utility>

#include "tower2/error.hpp"
#include "tower2/group2.hpp"

namespace tower2 {

std::string to_string(Family f) {
    switch (f) {
        case Family::mainline_cc3: return "mainline-cc3";
        case Family::seq985: return "seq985";
        case Family::seq986: return "seq986";
        case Family::mainline_cc4: return "mainline-cc4";
        case Family::seq5492: return "seq5492";
    }
    return "?";
}

std::optional<Family> parse_family(const std::string& s) {
    for (Family f : {Family::mainline_cc3, Family::seq985, Family::seq986, Family::mainline_cc4, Family::seq5492}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

namespace {

// Collects the pc-generators as extra presentation generators. Each one gets a
// defining commutator relator; every other generator pair must commute.
class PcBuilder {
public:
    PcBuilder() {
        for (const char* g : {"x", "y", "z"}) add_generator(g);
    }

    int add_generator(const std::string& name) {
        index_[name] = static_cast<int>(names_.size());
        names_.push_back(name);
        return index_[name];
    }

    Word g(const std::string& name) const { return words::gen(index_.at(name)); }

    Word product(std::initializer_list<std::string> names) const {
        Word w;
        for (const auto& n : names) {
            const Word part = g(n);
            w.insert(w.end(), part.begin(), part.end());
        }
        return w;
    }

    /// new = [a, b]
    void define_commutator(const std::string& result, const std::string& a, const std::string& b) {
        add_generator(result);
        relators_.push_back(words::concat({words::inverse(g(result)), words::comm(g(a), g(b))}));
        defined_pairs_.insert(std::minmax(index_.at(a), index_.at(b)));
    }

    /// a^2 = w (the empty word is the identity)
    void power(const std::string& a, const Word& w) {
        relators_.push_back(words::concat({words::power(g(a), 2), words::inverse(w)}));
        powered_.insert(index_.at(a));
    }

    Presentation finish(std::uint64_t expected_order) {
        const int n = static_cast<int>(names_.size());
        for (int a = 0; a < n; ++a) {
            if (!powered_.count(a)) relators_.push_back(words::power(words::gen(a), 2));
        }
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (!defined_pairs_.count({a, b})) relators_.push_back(words::comm(words::gen(b), words::gen(a)));
            }
        }
        Presentation p;
        p.num_generators = n;
        p.visible = 3;
        p.names = names_;
        p.relators = std::move(relators_);
        p.expected_order = expected_order;
        return p;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<Word> relators_;
    std::set<std::pair<int, int>> defined_pairs_;
    std::set<int> powered_;
};

std::string sub(const char* base, int j) { return base + std::to_string(j); }

Presentation coclass3_family(int n_last, bool perturb_y, bool perturb_z) {
    // generators s2, t2, ..., t_last with t_j = [t_{j-1}, x]
    PcBuilder b;
    b.define_commutator("s2", "y", "x");
    b.define_commutator("t2", "z", "x");
    for (int j = 3; j <= n_last; ++j) b.define_commutator(sub("t", j), sub("t", j - 1), "x");

    const std::string last = sub("t", n_last);
    b.power("x", b.g("s2"));
    b.power("y", perturb_y ? b.product({"s2", last}) : b.g("s2"));
    b.power("z", perturb_z ? b.product({"t2", "t3", last}) : b.product({"t2", "t3"}));
    for (int j = 2; j <= n_last - 2; ++j) b.power(sub("t", j), b.product({sub("t", j + 1), sub("t", j + 2)}));
    b.power(sub("t", n_last - 1), b.g(last));
    return b.finish(std::uint64_t{1} << (n_last + 3));
}

Presentation coclass4_family(int m, bool perturb_x) {
    PcBuilder b;
    b.define_commutator("s2", "y", "x");
    b.define_commutator("t2", "z", "x");
    for (int j = 3; j <= m; ++j) b.define_commutator(sub("s", j), sub("s", j - 1), "x");
    b.define_commutator("t3", "t2", "x");

    const std::string last = sub("s", m);
    if (perturb_x) b.power("x", b.g(last));
    b.power("y", b.product({"s2", "s3"}));
    b.power("z", b.g("t2"));
    for (int j = 2; j <= m - 2; ++j) b.power(sub("s", j), b.product({sub("s", j + 1), sub("s", j + 2)}));
    b.power(sub("s", m - 1), b.g(last));
    b.power("t2", b.g("t3"));
    return b.finish(std::uint64_t{1} << (m + 4));
}

}  // namespace

Presentation family_presentation(Family family, int param) {
    const int minimum = (family == Family::mainline_cc3 || family == Family::seq985) ? 2 : 3;
    if (param < minimum) {
        throw Error(ErrorKind::precondition,
                    to_string(family) + " needs a parameter of at least " + std::to_string(minimum));
    }
    switch (family) {
        case Family::mainline_cc3: return coclass3_family(param + 2, false, false);
        case Family::seq985: return coclass3_family(param + 2, true, false);
        case Family::seq986: return coclass3_family(param + 1, false, true);
        case Family::mainline_cc4: return coclass4_family(param, false);
        case Family::seq5492: return coclass4_family(param, true);
    }
    throw Error(ErrorKind::precondition, "unknown family");
}

FiniteTwoGroup build_family_group(Family family, int param) {
    const Presentation p = family_presentation(family, param);
    FiniteTwoGroup g = coset_enumerate(p.num_generators, p.relators, p.names, p.visible);
    if (g.order() != p.expected_order) {
        throw Error(ErrorKind::presentation_error, to_string(family) + "(" + std::to_string(param) +
                                                       ") enumerates to order " + std::to_string(g.order()) +
                                                       ", expected " + std::to_string(p.expected_order));
    }
    return g;
}

}  // namespace tower2
