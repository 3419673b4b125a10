#include "tower2/error.hpp"

namespace tower2 {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_modulus: return "invalid-modulus";
        case ErrorKind::symbol_undefined: return "symbol-undefined";
        case ErrorKind::no_root: return "no-root";
        case ErrorKind::division_by_zero: return "division-by-zero";
        case ErrorKind::not_split: return "not-split";
        case ErrorKind::zero_symbol: return "zero-symbol";
        case ErrorKind::invalid_prime: return "invalid-prime";
        case ErrorKind::invalid_radicand: return "invalid-radicand";
        case ErrorKind::invalid_discriminant: return "invalid-discriminant";
        case ErrorKind::not_fundamental: return "not-fundamental";
        case ErrorKind::invalid_triple: return "invalid-triple";
        case ErrorKind::lemma_violation: return "lemma-violation";
        case ErrorKind::construction_invariant: return "construction-invariant";
        case ErrorKind::enumeration_overflow: return "enumeration-overflow";
        case ErrorKind::presentation_error: return "presentation-error";
        case ErrorKind::not_abelian: return "not-abelian";
        case ErrorKind::rank_error: return "rank-error";
        case ErrorKind::size_cap: return "size-cap";
        case ErrorKind::fixture_format: return "fixture-format";
        case ErrorKind::theorem_inconsistency: return "theorem-inconsistency";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace tower2
