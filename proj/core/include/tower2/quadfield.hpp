#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tower2/abelian_type.hpp"
#include "tower2/ntheory.hpp"

namespace tower2 {

/// Binary quadratic form a x^2 + b xy + c y^2. Coefficients are int64; discriminants are
/// limited to |D| < 2^31 so that composition never overflows.
struct BinaryQuadraticForm {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    std::int64_t disc() const { return b * b - 4 * a * c; }
    friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
    std::string to_string() const;
};

/// D = m if m = 1 (mod 4), else 4m. m must be squarefree and different from 0 and 1.
std::int64_t discriminant_of(std::int64_t m);

bool is_fundamental_discriminant(std::int64_t D);

/// Reduced positive definite form equivalent to f (D < 0, a > 0).
BinaryQuadraticForm reduce_definite(BinaryQuadraticForm f);
bool is_reduced_definite(const BinaryQuadraticForm& f);

/// Composition of two primitive definite forms of the same discriminant, reduced.
BinaryQuadraticForm compose(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g);
BinaryQuadraticForm principal_form(std::int64_t D);
BinaryQuadraticForm inverse_form(const BinaryQuadraticForm& f);

/// All reduced definite forms of discriminant D (brute force; the class number oracle).
std::vector<BinaryQuadraticForm> reduced_forms(std::int64_t D);

struct ImaginaryClassGroup {
    std::int64_t disc = 0;
    std::uint64_t h = 0;
    std::vector<std::uint64_t> invariant_factors;  // d1 | d2 | ..., ascending, each >= 2
    AbelianType cl2;
};

/// Class group of the imaginary quadratic order of fundamental discriminant D < 0,
/// generated by prime forms through composition.
ImaginaryClassGroup class_group_imaginary(std::int64_t D);

/// x_num + y_num sqrt(m), divided by denom.
struct FundamentalUnit {
    BigInt x_num;
    BigInt y_num;
    int denom = 1;
    std::int64_t radicand = 0;
    int norm = 1;

    /// (x_num^2 - m y_num^2) / denom^2 == norm, exactly.
    bool satisfies_norm_equation() const;
    std::string to_string() const;
};

/// Fundamental unit of the maximal order of Q(sqrt m), m > 1 squarefree, via continued fractions.
FundamentalUnit fundamental_unit(std::int64_t m);

/// Narrow class number h+ of the real quadratic order of fundamental discriminant D > 0,
/// as the number of cycles of reduced indefinite forms.
std::uint64_t narrow_class_number_real(std::int64_t D);

struct RealClassNumber {
    std::uint64_t h = 0;
    std::uint64_t h2 = 0;
};

RealClassNumber class_number_real(std::int64_t m);

/// 2-primary part of the abelian group with the given invariant factors.
AbelianType two_part(const std::vector<std::uint64_t>& factors);

/// Invariants of Q(sqrt m) consumed by the rest of the library.
struct QuadFieldData {
    std::int64_t radicand = 0;
    std::int64_t disc = 0;
    std::uint64_t h = 0;
    std::uint64_t h2 = 0;
    std::optional<AbelianType> cl2;                         // imaginary case
    std::optional<std::vector<std::uint64_t>> structure;    // imaginary case
    std::optional<FundamentalUnit> unit;                    // real case
};

QuadFieldData quad_field_data(std::int64_t m);

/// Supplier of per-radicand data; lets callers interpose a cache.
class QuadDataSource {
public:
    virtual ~QuadDataSource() = default;
    virtual QuadFieldData get(std::int64_t m) = 0;
};

class DirectQuadSource final : public QuadDataSource {
public:
    QuadFieldData get(std::int64_t m) override { return quad_field_data(m); }
};

/// Witness for the unit square-class statements: for sign s, both
/// factor_a * (x + s) and factor_b * (x - s) are perfect squares with the recorded roots.
struct SquareClassWitness {
    int sign = 0;
    BigInt factor_a;
    BigInt factor_b;
    BigInt root_a;
    BigInt root_b;
};

/// Case (1): unit = eps_{p1 p2} = a + b sqrt(p1 p2) of norm +1; finds s with 2p1(a+s) and 2p2(a-s) squares.
SquareClassWitness square_class_norm_plus(const FundamentalUnit& unit, std::int64_t p1, std::int64_t p2);

/// Case (2): unit = eps_d = x + y sqrt(d), d = p1 p2 q; finds s with p1p2(x+s) and q(x-s) squares.
SquareClassWitness square_class_radicand(const FundamentalUnit& unit, std::int64_t p1, std::int64_t p2,
                                         std::int64_t q);

}  // namespace tower2
