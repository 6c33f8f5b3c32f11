#include "maxpat/periodicity.hpp"

#include <stdexcept>

namespace maxpat {

namespace {

// Smallest valid preperiod for period q on buf, or nothing. Scans from the
// back: the last mismatch position fixes the preperiod. The periodic tail
// must span the whole second half of the buffer, otherwise any word whose
// last few symbols happen to repeat would earn a certificate; an aperiodic
// word can only sustain short periodic runs, so this cutoff rejects it at
// every scale while a genuine eventual period passes once the scan doubles
// its preperiod.
std::optional<std::uint64_t> preperiod_for(const std::vector<Symbol>& buf, std::uint64_t q) {
    const std::uint64_t len = buf.size();
    if (2 * q > len)
        return std::nullopt;
    std::uint64_t t = 0;
    for (std::uint64_t n = len - q; n-- > 0;) {
        if (buf[n] != buf[n + q]) {
            t = n + 1;
            break;
        }
    }
    if (t + 2 * q > len) // period not witnessed twice
        return std::nullopt;
    if (2 * t > len) // tail starts too late to be evidence
        return std::nullopt;
    return t;
}

} // namespace

std::optional<PeriodCertificate> detect_least_period(const std::vector<Symbol>& prefix,
                                                     std::uint64_t max_period) {
    if (max_period == 0)
        throw std::invalid_argument("max period must be positive");
    if (prefix.size() < 2 * max_period)
        throw std::invalid_argument("prefix too short: need at least 2 * max_period symbols");
    for (std::uint64_t q = 1; q <= max_period; ++q)
        if (auto t = preperiod_for(prefix, q))
            return PeriodCertificate{*t, q};
    return std::nullopt;
}

std::optional<PeriodCertificate> detect_least_period(const Sequence& alpha,
                                                     std::uint64_t prefix_length,
                                                     std::uint64_t max_period) {
    if (max_period == 0)
        throw std::invalid_argument("max period must be positive");
    if (prefix_length < 2 * max_period)
        throw std::invalid_argument("prefix too short: need at least 2 * max_period symbols");
    return detect_least_period(materialize(alpha, prefix_length), max_period);
}

std::optional<std::uint64_t> least_pure_period(const std::vector<Symbol>& prefix,
                                               std::uint64_t max_period) {
    for (std::uint64_t q = 1; q <= max_period && 2 * q <= prefix.size(); ++q) {
        bool ok = true;
        for (std::uint64_t n = 0; n + q < prefix.size(); ++n) {
            if (prefix[n] != prefix[n + q]) {
                ok = false;
                break;
            }
        }
        if (ok)
            return q;
    }
    return std::nullopt;
}

} // namespace maxpat
