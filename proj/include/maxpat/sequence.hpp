#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "maxpat/alphabet.hpp"

namespace maxpat {

// A one-sided infinite symbolic sequence. Implementations must be immutable
// after construction and safe for concurrent at() calls from multiple
// workers; any memoization has to behave as a pure cache.
class SequenceSource {
public:
    virtual ~SequenceSource() = default;
    virtual Symbol at(std::uint64_t n) const = 0;
    // Indices < stored_length() are safe to read; 0 means unbounded. Finite
    // literals report their prefix length so callers can bound scans.
    virtual std::uint64_t stored_length() const { return 0; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::string& kind() const { return kind_; }

protected:
    SequenceSource(Alphabet alphabet, std::string kind)
        : alphabet_(std::move(alphabet)), kind_(std::move(kind)) {}

private:
    Alphabet alphabet_;
    std::string kind_;
};

// Shared-ownership value handle; cheap to copy.
class Sequence {
public:
    explicit Sequence(std::shared_ptr<const SequenceSource> impl);

    Symbol at(std::uint64_t n) const { return impl_->at(n); }
    const Alphabet& alphabet() const { return impl_->alphabet(); }
    const std::string& kind() const { return impl_->kind(); }
    const std::shared_ptr<const SequenceSource>& impl() const { return impl_; }

private:
    std::shared_ptr<const SequenceSource> impl_;
};

// View of alpha starting at index t: at(n) = alpha.at(n + t).
Sequence shift(const Sequence& alpha, std::uint64_t t);

// Residue view alpha^(i) along arithmetic progressions mod m:
// at(n) = alpha.at(i + n*m). Rejects m = 0 and i >= m. The view keeps the
// parent alphabet even when some letters never occur in the residue.
Sequence restrict_to_residue(const Sequence& alpha, std::uint32_t m, std::uint32_t i);

// First `count` symbols as a flat buffer.
std::vector<Symbol> materialize(const Sequence& alpha, std::size_t count);

} // namespace maxpat
