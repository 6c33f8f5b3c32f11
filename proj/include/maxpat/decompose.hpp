#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxpat/complexity.hpp"
#include "maxpat/periodicity.hpp"
#include "maxpat/sequence.hpp"

namespace maxpat {

// A letter b is singular when its indicator sequence 1_b(alpha_n) is purely
// periodic (preperiod zero). Singular letters sit at fixed residue classes,
// which is what makes the arithmetic decomposition below work.
struct SingularReport {
    std::vector<Symbol> observed;                         // letters seen in the scan, ascending
    std::vector<std::optional<std::uint32_t>> period_by_symbol; // indexed by symbol code
    std::vector<Symbol> rare;                             // observed but absent from the second half
    std::uint32_t scan_length = 0;
    std::uint32_t max_period = 0;

    bool is_singular(Symbol s) const;
};

SingularReport singular_letters(const Sequence& alpha, std::uint32_t scan_length,
                                std::uint32_t max_period);

// lcm of the singular indicator periods; 1 when no letter is singular.
std::uint32_t decomposition_cycle(const SingularReport& report);

// Mask keeping alpha at singular positions and a hole elsewhere, plus the
// least full period of the produced prefix.
struct SingularMask {
    std::vector<std::optional<Symbol>> mask;
    std::uint32_t least_period = 0;
};

SingularMask singular_mask(const Sequence& alpha, const SingularReport& report,
                           std::uint32_t length);
std::string render_mask(const SingularMask& mask, const Alphabet& alphabet);

// Vertices are the residue classes mod m; i and j are joined when their
// observed alphabets intersect over the scan.
struct ResidueGraph {
    std::uint32_t m = 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;      // i < j, sorted
    std::vector<std::vector<std::uint32_t>> components;              // sorted within and across
};

ResidueGraph residue_graph(const Sequence& alpha, std::uint32_t m, std::uint32_t scan_length);

// Smallest projection witnessing eventual periodicity: subsets S of the
// observed alphabet (proper, non-empty, by size then lexicographically)
// whose indicator 1_S(alpha_n) is eventually periodic within the scan.
// Enforces at most 16 observed letters.
struct ProjectionPeriodicity {
    std::vector<Symbol> subset;
    std::uint64_t preperiod = 0;
    std::uint64_t period = 0;
};

std::optional<ProjectionPeriodicity> periodic_by_projection(const Sequence& alpha,
                                                            std::uint32_t scan_length,
                                                            std::uint32_t max_period);

enum class StructureClass {
    strong_pattern_sturmian, // one pattern Sturmian residue, distinct constants elsewhere
    pattern_sturmian_plus_constants, // same but with repeated constants
    low_complexity,          // one aperiodic two-letter residue, rest periodic over it / constant
    periodic,                // every residue certified (eventually) periodic
    unclassified
};

std::string to_string(StructureClass c);

enum class ResidueVerdict { constant, periodic, eventually_periodic, aperiodic, undetermined };

std::string to_string(ResidueVerdict v);

struct ResidueSummary {
    std::uint32_t index = 0;
    std::vector<Symbol> observed;           // over the residue scan, ascending
    std::vector<Symbol> eventual;           // observed in the second half of the scan
    ResidueVerdict verdict = ResidueVerdict::undetermined;
    std::optional<PeriodCertificate> periodicity;
    std::optional<Symbol> constant_symbol;
    bool pattern_sturmian = false;          // measured value(k) == 2k for k = 1..k_check
    std::vector<std::uint32_t> measured;    // value(k) for k = 1..k_check when searched
};

struct DecompositionReport {
    std::uint32_t m = 1;
    SingularReport singular;
    SingularMask mask;
    std::vector<ResidueSummary> residues;
    ResidueGraph graph;
    StructureClass classification = StructureClass::unclassified;
    // Least period of alpha itself, present when every residue is purely
    // periodic and the period is witnessed twice inside the scan.
    std::optional<std::uint64_t> full_period;
    std::uint32_t scan_length = 0;
    std::uint32_t max_period = 0;
    std::uint32_t horizon = 0;
    std::uint32_t k_check = 0;
    std::size_t observed_letters = 0; // distinct letters of alpha over the scan
};

// Full pipeline: singular letters -> cycle m -> per-residue verdicts
// (periodicity certificates, aperiodicity cross-checked against measured
// complexity >= 2k, pattern Sturmian check value(k) == 2k for k <= k_check)
// -> residue graph -> classification.
DecompositionReport classify_structure(const Sequence& alpha, const SearchConfig& config,
                                       std::uint32_t k_check = 5,
                                       std::uint32_t max_period = 100);

// Decomposition facts only (no complexity searches): singular letters,
// cycle, mask, residue periodicity certificates and the residue graph.
DecompositionReport decompose_structure(const Sequence& alpha, std::uint32_t scan_length,
                                        std::uint32_t max_period = 100);

// Upper bound on the maximal pattern complexity at k implied by a report:
// 2k + max(ell, m) - 2 when the report certifies one pattern Sturmian
// residue over two letters with all other residues constant, the least
// period when it certifies full periodicity, nothing otherwise.
std::optional<std::uint64_t> structural_upper_bound(const DecompositionReport& report,
                                                    std::uint32_t k);

// For each L in 1..l_max, the largest gap between consecutive occurrences
// of the length-L prefix within the scan; nothing marks fewer than two
// occurrences. Requires scan_length >= 100 * l_max.
std::vector<std::optional<std::uint32_t>> uniform_recurrence_profile(const Sequence& alpha,
                                                                     std::uint32_t l_max,
                                                                     std::uint32_t scan_length);

} // namespace maxpat
