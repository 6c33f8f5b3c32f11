#include "maxpat/alphabet.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace maxpat {

Alphabet::Alphabet(std::size_t size) {
    if (size == 0 || size > 255)
        throw std::invalid_argument("alphabet size must be in [1, 255]");
    labels_.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        labels_.push_back(std::to_string(i));
}

Alphabet Alphabet::from_labels(std::vector<std::string> labels) {
    if (labels.empty() || labels.size() > 255)
        throw std::invalid_argument("alphabet size must be in [1, 255]");
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty())
            throw std::invalid_argument("empty alphabet label");
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate alphabet label: " + l);
    }
    Alphabet a;
    a.labels_ = std::move(labels);
    return a;
}

const std::string& Alphabet::label(Symbol s) const {
    if (s >= labels_.size())
        throw std::out_of_range("symbol code " + std::to_string(s) + " outside alphabet");
    return labels_[s];
}

std::optional<Symbol> Alphabet::code_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return static_cast<Symbol>(i);
    return std::nullopt;
}

bool Alphabet::single_char() const {
    return std::all_of(labels_.begin(), labels_.end(),
                       [](const std::string& l) { return l.size() == 1; });
}

} // namespace maxpat
