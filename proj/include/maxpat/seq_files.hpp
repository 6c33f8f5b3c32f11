#pragma once

#include <iosfwd>
#include <string>

#include "maxpat/sequence.hpp"

namespace maxpat {

// Sequence literal files hold a finite prefix, either as one line of
// single-character symbols or as whitespace-separated integer symbols.
// Lines starting with '#' are ignored except for an optional header
//   #alphabet: a,b,c
// fixing the alphabet and its order; otherwise the alphabet is inferred
// from the content and sorted (numerically when every label is numeric).
// Reads past the stored prefix throw std::out_of_range, so callers must
// bound their scans by the literal length.
Sequence read_literal(std::istream& in);
Sequence read_literal_file(const std::string& path);

// Length of the stored prefix (0 for non-literal sequences).
std::uint64_t literal_length(const Sequence& alpha);

// Writes `length` symbols in the same format (single-char alphabets on one
// line, otherwise whitespace-separated), preceded by the alphabet header.
void write_literal(std::ostream& out, const Sequence& alpha, std::uint64_t length);

} // namespace maxpat
