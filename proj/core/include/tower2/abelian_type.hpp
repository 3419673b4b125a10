#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tower2 {

/// Abelian type invariants of a finite abelian 2-group Z/2^e1 x Z/2^e2 x ...
/// Exponents are kept sorted nondecreasing and strictly positive; the empty list is the trivial group.
class AbelianType {
public:
    AbelianType() = default;

    static AbelianType from_exponents(std::vector<int> exponents);

    /// Built from printed orders such as (2, 4) or (4, 8, 2); each entry must be a power of two >= 2.
    static AbelianType from_orders(std::initializer_list<std::uint64_t> orders);
    static AbelianType from_orders(const std::vector<std::uint64_t>& orders);

    const std::vector<int>& exponents() const { return exponents_; }
    int rank() const { return static_cast<int>(exponents_.size()); }
    int order_log2() const;
    bool is_trivial() const { return exponents_.empty(); }

    /// Rendered as printed orders, e.g. "(2, 4)". The trivial group renders as "1".
    std::string to_string() const;

    /// Parse the to_string format back.
    static AbelianType parse(const std::string& text);

    friend bool operator==(const AbelianType&, const AbelianType&) = default;
    friend auto operator<=>(const AbelianType&, const AbelianType&) = default;

private:
    std::vector<int> exponents_;
};

/// Exponent type (2^e1, 2^e2) with e1, e2 >= 1 given directly, sorted.
AbelianType type_2e(std::initializer_list<int> exponents);

}  // namespace tower2
