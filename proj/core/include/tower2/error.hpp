#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tower2 {

/// Every failure raised by the library carries one of these kinds.
enum class ErrorKind {
    invalid_modulus,
    symbol_undefined,
    no_root,
    division_by_zero,
    not_split,
    zero_symbol,
    invalid_prime,
    invalid_radicand,
    invalid_discriminant,
    not_fundamental,
    invalid_triple,
    lemma_violation,
    construction_invariant,
    enumeration_overflow,
    presentation_error,
    not_abelian,
    rank_error,
    size_cap,
    fixture_format,
    theorem_inconsistency,
    precondition,
    io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tower2
