#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "maxpat/sequence.hpp"

namespace maxpat {

struct PeriodCertificate {
    std::uint64_t preperiod = 0;
    std::uint64_t period = 0;
};

// Least eventual period visible in a prefix: the smallest q <= max_period
// admitting a preperiod t with alpha[n] == alpha[n+q] for all n in
// [t, prefix_length - q), and for that q the smallest such t. A candidate
// only counts when t + 2q <= prefix_length (the period is witnessed at
// least twice) and 2t <= prefix_length (the periodic tail covers the whole
// second half of the prefix; a repeat confined to the last few symbols is
// no evidence). Returns nothing when no q qualifies. This is a statement
// about the scanned prefix, not a proof about the infinite sequence.
// Requires prefix_length >= 2 * max_period.
std::optional<PeriodCertificate> detect_least_period(const Sequence& alpha,
                                                     std::uint64_t prefix_length,
                                                     std::uint64_t max_period);

// Same check on a raw buffer (used on indicator sequences and masks).
std::optional<PeriodCertificate> detect_least_period(const std::vector<Symbol>& prefix,
                                                     std::uint64_t max_period);

// Least q <= max_period with buf[n] == buf[n+q] for all n in [0, len - q)
// (pure periodicity, preperiod zero, witnessed twice). Nothing otherwise.
std::optional<std::uint64_t> least_pure_period(const std::vector<Symbol>& prefix,
                                               std::uint64_t max_period);

} // namespace maxpat
