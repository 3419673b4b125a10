#include "tower2/f2space.hpp"

#include "tower2/error.hpp"

namespace tower2 {

F2Subspace F2Subspace::from_mask(std::uint8_t mask) {
    if ((mask & 1) == 0) throw Error(ErrorKind::precondition, "subspace mask must contain the zero vector");
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            if (((mask >> a) & 1) && ((mask >> b) & 1) && !((mask >> (a ^ b)) & 1)) {
                throw Error(ErrorKind::precondition, "subspace mask is not closed under addition");
            }
        }
    }
    F2Subspace s;
    s.mask_ = mask;
    return s;
}

F2Subspace F2Subspace::span(std::initializer_list<std::uint8_t> vectors) {
    return span(std::vector<std::uint8_t>(vectors));
}

F2Subspace F2Subspace::span(const std::vector<std::uint8_t>& vectors) {
    std::uint8_t mask = 1;
    for (std::uint8_t v : vectors) {
        std::uint8_t add = 0;
        for (int a = 0; a < 8; ++a) {
            if ((mask >> a) & 1) add |= static_cast<std::uint8_t>(1u << ((a ^ v) & 7));
        }
        mask |= add;
    }
    return from_mask(mask);
}

std::vector<std::uint8_t> F2Subspace::vectors() const {
    std::vector<std::uint8_t> out;
    for (int v = 0; v < 8; ++v) {
        if (contains(static_cast<std::uint8_t>(v))) out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

std::string vector_name(std::uint8_t v, const char* const names[3]) {
    if (v == 0) return "1";
    std::string s;
    for (int i = 0; i < 3; ++i) {
        if ((v >> i) & 1) s += names[i];
    }
    return s;
}

std::string F2Subspace::to_string(const char* const names[3]) const {
    // list a minimal generating set, smallest vectors first
    std::vector<std::uint8_t> gens;
    F2Subspace cur = trivial();
    for (std::uint8_t v : vectors()) {
        if (!cur.contains(v)) {
            gens.push_back(v);
            std::vector<std::uint8_t> tmp = gens;
            cur = span(tmp);
        }
    }
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ", ";
        s += vector_name(gens[i], names);
    }
    return s + ">";
}

}  // namespace tower2
