#include "maxpat/window.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace maxpat {

Window Window::from_indices(std::vector<std::uint32_t> indices) {
    if (indices.empty())
        throw std::invalid_argument("window must be non-empty");
    if (indices.front() != 0)
        throw std::invalid_argument("window must start at offset 0");
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1])
            throw std::invalid_argument("window offsets must be strictly increasing");
    return Window(std::move(indices));
}

Window Window::block(std::size_t k) {
    if (k == 0)
        throw std::invalid_argument("window must be non-empty");
    std::vector<std::uint32_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0u);
    return Window(std::move(idx));
}

Window Window::extended(std::uint32_t h) const {
    if (h <= indices_.back())
        throw std::invalid_argument("extension offset must exceed the window maximum");
    std::vector<std::uint32_t> idx = indices_;
    idx.push_back(h);
    return Window(std::move(idx));
}

Window Window::restricted() const {
    if (indices_.size() < 2)
        throw std::invalid_argument("cannot restrict a singleton window");
    std::vector<std::uint32_t> idx(indices_.begin(), indices_.end() - 1);
    return Window(std::move(idx));
}

std::string Window::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(indices_[i]);
    }
    s += '}';
    return s;
}

bool WordSet::contains(const Word& w) const {
    return std::binary_search(words.begin(), words.end(), w);
}

Word tau_word(const Sequence& alpha, const Window& tau, std::uint64_t n) {
    Word w(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i)
        w[i] = alpha.at(n + tau[i]);
    return w;
}

namespace {

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (Symbol s : w) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

WordSet tau_words(const Sequence& alpha, const Window& tau, std::uint32_t scan_length) {
    if (scan_length == 0)
        throw std::invalid_argument("scan length must be positive");
    // One linear pass over the needed prefix, then pure array reads.
    const std::size_t need = static_cast<std::size_t>(scan_length) + tau.max_index();
    std::vector<Symbol> prefix = materialize(alpha, need);

    std::unordered_set<Word, WordHash> seen;
    WordSet out;
    out.scan_length = scan_length;
    Word w(tau.size());
    for (std::uint32_t n = 0; n < scan_length; ++n) {
        for (std::size_t i = 0; i < tau.size(); ++i)
            w[i] = prefix[n + tau[i]];
        if (seen.insert(w).second)
            out.last_new_at = n;
    }
    out.words.assign(seen.begin(), seen.end());
    std::sort(out.words.begin(), out.words.end());
    out.stable = out.last_new_at <= scan_length / 2;
    return out;
}

std::string render_word(const Word& w, const Alphabet& alphabet) {
    const bool tight = alphabet.single_char();
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !tight)
            s += ' ';
        s += alphabet.label(w[i]);
    }
    return s;
}

} // namespace maxpat
