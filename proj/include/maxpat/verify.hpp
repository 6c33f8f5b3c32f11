#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxpat/sequence.hpp"

namespace maxpat {

// Fixed roster of generated sources used by the verification suites and
// the acceptance checks. Everything is deterministic: fixed ingredients,
// fixed RNG seeds, fixed configurations.
struct RosterEntry {
    std::string name;
    Sequence sequence;
    bool aperiodic;           // certified aperiodic at roster scale
    bool uniformly_recurrent; // known by construction
};

std::vector<RosterEntry> verification_roster();

struct SuiteCheck {
    std::string description;
    bool pass = false;
    std::string detail; // measured vs expected, shown on failure and in verbose output
};

struct SuiteResult {
    std::string suite;
    std::vector<SuiteCheck> checks;
    bool all_pass() const;
};

// Suites: facts (window count floors on aperiodic sources), lower-bounds
// (2k + ell - 2 floor), growth (value(k+1) >= value(k) + 2), structure
// (decomposition and classification tables), examples (named family
// complexity tables).
SuiteResult verify_suite(const std::string& name);
std::vector<std::string> verify_suite_names();

// Prints one line per check; returns false when anything failed.
bool print_suite(std::ostream& out, const SuiteResult& result);

} // namespace maxpat
