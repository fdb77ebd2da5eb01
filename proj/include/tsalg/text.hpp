#pragma once

// Canonical printing and parsing of frequencies, phases, scalars and elements.
//
// Grammar (precedence adj > * and / > unary - > binary + and -):
//   expr    := signed {('+' | '-') signed}
//   signed  := '-' signed | product
//   product := factor {('*' | '/') factor}        '/' divides by a scalar
//   factor  := '(' expr ')' | 'adj' '(' expr ')' | 'M' '(' freq ')'
//            | 'D' '(' freq ')' | 'V' '(' dil ')' | 'exp' '(' ['-'] 'i' '*' phase1 ')'
//            | number | number'i' | 'i'
//   freq    := q*atom@dil terms joined by + and -; a bare number is q*ONE
//   dil     := q*symbol terms; a bare number is q*UNIT
//   phase1  := '(' phase ')' | one phase term; a phase term is q*a*b@dil

#include <string>
#include <string_view>
#include <vector>

#include "tsalg/algebra.hpp"

namespace tsalg {

std::string to_string(const DilationIndex& t);
std::string to_string(const Frequency& f);
std::string to_string(const PhaseExponent& theta);
std::string to_string(const GaussQ& z);
std::string to_string(const PhaseSum& s);
std::string to_string(const Scalar& s);
std::string to_string(const Element& x);

/// Symbols are checked against the table when one is given: identifiers in
/// frequency and phase positions must be atoms, in dilation positions
/// dilation symbols (UnknownSymbol otherwise). Syntax errors throw
/// ParseError; both carry the offending byte span.
Element parse_element(std::string_view text, const AtomTable* table = nullptr);
Frequency parse_frequency(std::string_view text, const AtomTable* table = nullptr);
DilationIndex parse_dilation(std::string_view text, const AtomTable* table = nullptr);
PhaseExponent parse_phase(std::string_view text, const AtomTable* table = nullptr);

/// A pure product of letters and scalars, left to right, for normalize_word.
/// Returns false (leaving `out` unspecified) when the text is not such a
/// product; syntax errors still throw.
bool parse_word(std::string_view text, std::vector<Letter>& out, const AtomTable* table = nullptr);

} // namespace tsalg
