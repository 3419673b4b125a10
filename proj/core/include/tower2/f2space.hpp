#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tower2 {

/// A subgroup of the elementary abelian group (Z/2)^3, stored as the set of its member
/// vectors: bit v of the mask is set when vector v (0..7) belongs to the subgroup.
class F2Subspace {
public:
    constexpr F2Subspace() = default;

    static F2Subspace trivial() { return from_mask(1); }
    static F2Subspace full() { return from_mask(0xff); }
    static F2Subspace from_mask(std::uint8_t mask);
    /// Subgroup generated by the given vectors.
    static F2Subspace span(std::initializer_list<std::uint8_t> vectors);
    static F2Subspace span(const std::vector<std::uint8_t>& vectors);

    std::uint8_t mask() const { return mask_; }
    bool contains(std::uint8_t v) const { return (mask_ >> (v & 7)) & 1; }
    int order() const { return __builtin_popcount(mask_); }
    F2Subspace intersect(const F2Subspace& o) const { return from_mask(mask_ & o.mask_); }
    std::vector<std::uint8_t> vectors() const;

    /// Render with the given names for the three basis vectors, e.g. "<H1, H2H3>".
    std::string to_string(const char* const names[3]) const;

    friend bool operator==(const F2Subspace&, const F2Subspace&) = default;

private:
    std::uint8_t mask_ = 1;
};

/// Product notation for a vector, e.g. 0b101 with names H1,H2,H3 gives "H1H3"; zero gives "1".
std::string vector_name(std::uint8_t v, const char* const names[3]);

}  // namespace tower2
