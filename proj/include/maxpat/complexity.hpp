#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxpat/window.hpp"
#include "maxpat/window_kernel.hpp"

namespace maxpat {

enum class Strategy { exhaustive, greedy, hybrid };
enum class Exactness { lower_bound_only, matches_structural_upper_bound, matches_expected };

std::string to_string(Strategy s);
std::string to_string(Exactness e);

struct CongruenceFilter {
    std::uint32_t modulus = 1;
    std::vector<std::uint32_t> residues; // allowed residues for offsets >= 1
};

struct SearchConfig {
    std::uint32_t horizon = 60;       // candidate offsets range over [1, horizon]
    std::uint32_t scan_length = 20000;
    std::optional<CongruenceFilter> congruence;
    unsigned workers = 0;             // 0 = library default
};

// Result of a k-window search. value is a certified lower bound for the
// maximal pattern complexity at k (the supremum over all windows); it is
// exact only relative to the horizon, which is why exactness starts at
// lower_bound_only and is upgraded solely by a structural upper bound or a
// caller-supplied expected value.
struct ComplexityCertificate {
    std::uint32_t k = 0;
    std::uint32_t value = 0;
    Window witness = Window::block(1);
    Strategy strategy = Strategy::exhaustive;
    std::uint32_t horizon = 0;
    std::uint32_t scan_length = 0;
    Exactness exact = Exactness::lower_bound_only;
    bool unstable_scan = false; // some evaluated word set kept growing late
};

// Best k-sized window within the horizon.
//  - exhaustive: every window {0} u S, S in [1,horizon], |S| = k-1; the
//    witness is the lexicographically least among maxima.
//  - greedy: grows from {0} by the extension with the largest gain
//    (ties: smallest offset); cost O(k * horizon) evaluations.
//  - hybrid: greedy first, then the exhaustive sweep seeded with the greedy
//    value for pruning; same result as exhaustive.
// Throws std::invalid_argument("horizon too small") when horizon < k-1.
ComplexityCertificate pattern_complexity(const Sequence& alpha, std::uint32_t k,
                                         const SearchConfig& config,
                                         Strategy strategy = Strategy::exhaustive);

// Smallest h in (tau.max, horizon] whose one-offset extension gains at
// least two words, with the achieved gain. Nothing when no such h exists.
std::optional<std::pair<std::uint32_t, std::uint32_t>>
immediate_extension_growth(const Sequence& alpha, const Window& tau, const SearchConfig& config);

// First k-window (ordered by max offset, then lexicographically) whose
// word count reaches 2k on both sequences. Nothing within the horizon
// otherwise.
std::optional<Window> shared_window_search(const Sequence& a, const Sequence& b,
                                           std::uint32_t k, const SearchConfig& config);

// Window for an interleaved sequence built from a window tau of a residue:
// m*tau followed by k_total - |tau| extra offsets h_1 < h_2 < ..., where
// h_1 is the least index > anchor with h_1 = 1 (mod m) and h_{i+1} the
// least index > h_i with h_{i+1} = i+1 (mod m). Requires
// |tau| = k_total - (m-1) and anchor >= m * tau.max().
Window lifted_window(const Window& tau, std::uint32_t m, std::uint32_t k_total,
                     std::uint32_t anchor);

} // namespace maxpat
