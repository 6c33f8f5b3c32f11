#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maxpat {

// Internal symbol code. Sequences store dense codes 0..size-1; the Alphabet
// maps codes to display labels. Keeping codes dense lets the search kernels
// index arrays by symbol.
using Symbol = std::uint8_t;

class Alphabet {
public:
    // Empty; a placeholder until a real alphabet is assigned.
    Alphabet() = default;

    // Labels "0", "1", ..., as strings.
    explicit Alphabet(std::size_t size);

    // Labels in the given order. Order is fixed and total from then on.
    static Alphabet from_labels(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(Symbol s) const;
    std::optional<Symbol> code_of(std::string_view label) const;

    // True when every label is a single character, so words can be rendered
    // without separators.
    bool single_char() const;

    bool operator==(const Alphabet& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
};

} // namespace maxpat
