#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "maxpat/sequence.hpp"

namespace maxpat {

// A finite set of sampling offsets 0 = tau(0) < tau(1) < ... < tau(k-1).
// Sliding the window along the sequence yields the word
//   alpha[n + tau(0)] ... alpha[n + tau(k-1)].
class Window {
public:
    // Validates: non-empty, first index 0, strictly increasing.
    static Window from_indices(std::vector<std::uint32_t> indices);

    // The block window {0, 1, ..., k-1}.
    static Window block(std::size_t k);

    std::size_t size() const { return indices_.size(); }
    std::uint32_t operator[](std::size_t i) const { return indices_[i]; }
    std::uint32_t max_index() const { return indices_.back(); }
    const std::vector<std::uint32_t>& indices() const { return indices_; }

    // Immediate extension by one more offset h > max_index().
    Window extended(std::uint32_t h) const;

    // Drop the last offset (k must be >= 2).
    Window restricted() const;

    // Lexicographic on the index vectors; used for witness tie-breaks.
    auto operator<=>(const Window&) const = default;

    std::string to_string() const; // "{0,2,5}"

private:
    explicit Window(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {}
    std::vector<std::uint32_t> indices_;
};

using Word = std::vector<Symbol>;

// All words seen when sliding a window across scan_length start positions,
// with the bookkeeping needed to judge whether the scan was long enough.
struct WordSet {
    std::vector<Word> words;        // sorted lexicographically
    std::uint32_t scan_length = 0;
    std::uint32_t last_new_at = 0;  // largest n that contributed an unseen word
    bool stable = false;            // last_new_at <= scan_length / 2

    std::size_t size() const { return words.size(); }
    bool contains(const Word& w) const;
};

// The word read through the window at start position n.
Word tau_word(const Sequence& alpha, const Window& tau, std::uint64_t n);

// Words over start positions n in [0, scan_length). The count is monotone
// non-decreasing in scan_length.
WordSet tau_words(const Sequence& alpha, const Window& tau, std::uint32_t scan_length);

std::string render_word(const Word& w, const Alphabet& alphabet);

} // namespace maxpat
