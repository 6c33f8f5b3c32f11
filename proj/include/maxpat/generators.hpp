#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxpat/sequence.hpp"

namespace maxpat {

// Raised when a construction cannot certify the requested index range.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- periodic

// w repeated forever; w must be non-empty.
Sequence periodic_source(const Alphabet& alphabet, std::vector<Symbol> word);
// Convenience: single-char labels, e.g. "012".
Sequence periodic_source(const std::string& word);

// Finite prefix followed by a periodic tail (tail may be empty, in which
// case reads past the prefix throw std::out_of_range).
Sequence literal_source(const Alphabet& alphabet, std::vector<Symbol> prefix,
                        std::vector<Symbol> tail);

// ------------------------------------------------------------ substitution

struct SubstitutionRule {
    Alphabet alphabet;
    std::vector<std::vector<Symbol>> images; // one per symbol
    Symbol seed = 0;
};

// Fixed point lim rule^n(seed). Requires every image non-empty, every image
// symbol in the alphabet, and rule(seed) beginning with seed with length
// >= 2 so the expansion grows. Prefixes are memoized; growth is geometric.
Sequence substitution_source(const SubstitutionRule& rule);

Sequence fibonacci_word();  // 0 -> 01, 1 -> 0, seed 0
Sequence thue_morse_word(); // 0 -> 01, 1 -> 10, seed 0

// ---------------------------------------------------------------- rotation

struct Rational64 {
    long long num = 0;
    long long den = 1;
};

// Coding of an irrational circle rotation x -> x + theta (mod 1).
// theta is specified by the leading continued fraction coefficients
// [a0; a1, a2, ...]; every irrational with that expansion prefix lies
// strictly between the last convergent and the mediant with the previous
// one, which is the error interval the certification uses. The partition
// of [0,1) into half-open arcs [cut_i, cut_{i+1}) is given by exact
// rational cut points (the first must be 0) labelled with symbols.
struct RotationCoding {
    std::vector<std::uint64_t> slope_cf;               // a0, a1, ..., aD
    Rational64 intercept;                              // start point in [0,1)
    std::vector<std::pair<Rational64, Symbol>> cuts;   // ascending, cuts[0].first == 0
    Alphabet alphabet;
};

// at(n) = label of the arc containing intercept + n * (pD/qD) mod 1, where
// pD/qD is the last convergent. The constructor proves, in exact rational
// arithmetic, that for every n < length_guarantee the whole error interval
// of the true rotation lands in arcs of one label, and throws
// PrecisionError otherwise (deepen the continued fraction to fix that).
Sequence rotation_source(const RotationCoding& coding, std::uint64_t length_guarantee);

// ---------------------------------------------------------------- toeplitz

// Pattern entries: a symbol, or a hole (nullopt) to be filled recursively.
struct ToeplitzPattern {
    Alphabet alphabet;
    std::vector<std::optional<Symbol>> pattern;
};

// The pattern is written periodically; the subsequence of remaining holes
// is then filled by the same construction, i.e. the result is the unique
// sequence whose hole subsequence equals the sequence itself. Requires at
// least one hole, at least one symbol, length >= 2, and a non-hole first
// entry (a leading hole is never filled at index 0).
Sequence toeplitz_source(const ToeplitzPattern& pattern);
// Convenience: single-char labels with '?' for holes, e.g. "101?".
Sequence toeplitz_source(const std::string& pattern);

// -------------------------------------------------------------- interleave

// One entry per residue class mod m, read at position q for index m*q + i.
struct InterleaveSpec {
    struct Constant { std::string label; };
    struct PeriodicWord { std::vector<std::string> labels; };
    using Entry = std::variant<Constant, PeriodicWord, Sequence>;
    std::vector<Entry> entries;
};

// at(m*q + i) = entries[i] evaluated at q. The alphabet is the union of the
// entry alphabets, ordered by first appearance across entries.
Sequence interleave_source(const InterleaveSpec& spec);

// ---------------------------------------------------- named interleavings

// Three interleaved families over a two-letter aperiodic ingredient x
// (default: the Fibonacci word).

// m = ell-1 residues: x on residue 0 and the ell-2 distinct constants
// 2..ell-1 on the others. Alphabet size ell >= 3; the maximal pattern
// complexity is 2k + ell - 2, the minimum possible for an aperiodic
// sequence on ell letters.
Sequence strong_sturmian_source(std::uint32_t ell,
                                std::optional<Sequence> x = std::nullopt);

// m = 5 residues (x, 2, 3, 3, 2) over 4 letters: repeated constants push
// the maximal pattern complexity to 2k + 3 = 2k + m - 2 > 2k + ell - 2.
Sequence surplus_constants_source(std::optional<Sequence> x = std::nullopt);

// m = 3 residues (x, x, 2): two aperiodic residues give complexity 4k.
Sequence twin_sturmian_source(std::optional<Sequence> x = std::nullopt);

} // namespace maxpat
