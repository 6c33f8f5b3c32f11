#pragma once

#include <cstdint>
#include <vector>

#include "maxpat/sequence.hpp"
#include "maxpat/window.hpp"

namespace maxpat {

// Search-side evaluation engine for window word counts.
//
// Two start positions n, n' with identical factors alpha[n .. n+H] and
// alpha[n' .. n'+H] read the same word through every window with offsets
// <= H, so positions are first deduplicated by their length-(H+1) factor
// into "position types". A window's words then correspond one-to-one to
// the classes of a partition of the types, and extending the window by one
// offset refines the partition in O(#types). For the low-complexity
// sequences this tool targets, the number of types grows linearly in H
// while the scan length stays in the tens of thousands, which is what
// makes exhaustive window enumeration affordable.
//
// Types are numbered in order of first appearance, so the type that opens
// a class is the one with the earliest start position; this gives exact
// first-occurrence positions for every word and hence the stability flag
// without rescanning.
class WindowKernel {
public:
    WindowKernel(const Sequence& alpha, std::uint32_t horizon, std::uint32_t scan_length);

    std::uint32_t horizon() const { return horizon_; }
    std::uint32_t scan_length() const { return scan_length_; }
    std::uint32_t type_count() const { return static_cast<std::uint32_t>(earliest_.size()); }
    std::size_t alphabet_size() const { return ell_; }

    // Partition state for one window; refine with increasing offsets only.
    struct Eval {
        std::vector<std::uint32_t> cls; // type -> class id, dense from 0
        std::uint32_t count = 0;        // number of classes == word count
        std::uint32_t last_new = 0;     // max over words of first occurrence
    };

    // State of the window {0}.
    Eval root() const;

    // State of tau + {h}; h must exceed every offset already folded in and
    // be <= horizon. Deterministic: class ids follow first appearance in
    // type order.
    Eval extend(const Eval& parent, std::uint32_t h) const;

    // In-place variant used by search loops to avoid allocation churn; the
    // caller keeps `scratch` alive across calls (contents irrelevant).
    void extend_into(const Eval& parent, std::uint32_t h, Eval& out,
                     std::vector<std::uint32_t>& scratch) const;

    // Word count of an arbitrary window (offsets within horizon).
    std::uint32_t count_of(const Window& tau) const;
    Eval eval_of(const Window& tau) const;

    Symbol type_symbol(std::uint32_t type, std::uint32_t offset) const {
        return factors_[static_cast<std::size_t>(type) * span_ + offset];
    }

private:
    std::uint32_t horizon_;
    std::uint32_t scan_length_;
    std::uint32_t span_; // horizon + 1
    std::size_t ell_;
    std::vector<Symbol> factors_;         // type-major, span_ symbols each
    std::vector<std::uint32_t> earliest_; // first start position per type
};

} // namespace maxpat
