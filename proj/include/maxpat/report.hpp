#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxpat/complexity.hpp"
#include "maxpat/decompose.hpp"

namespace maxpat {

enum class ReportFormat { json, csv, text };

ReportFormat parse_format(const std::string& name); // throws on unknown names

// All reports are byte-stable: no timestamps, fixed key order, fixed
// number formatting, and content independent of worker count.

struct ComplexityRun {
    std::string source_name;
    std::string source_kind;
    std::vector<std::string> alphabet_labels;
    std::vector<ComplexityCertificate> certificates;
    std::vector<std::optional<std::uint64_t>> upper_bounds; // aligned with certificates
    std::vector<std::vector<std::string>> words;            // optional, aligned, sorted
    bool emit_words = false;
};

void write_complexity(std::ostream& out, const ComplexityRun& run, ReportFormat format);

void write_decomposition(std::ostream& out, const DecompositionReport& report,
                         const Alphabet& alphabet, const std::string& source_name,
                         ReportFormat format, bool with_classification);

struct SharedWindowRun {
    std::string name_a, name_b;
    std::uint32_t k = 0;
    std::uint32_t horizon = 0;
    std::uint32_t scan_length = 0;
    std::optional<Window> window;
    std::uint32_t count_a = 0, count_b = 0;
};

void write_shared_window(std::ostream& out, const SharedWindowRun& run, ReportFormat format);

struct RecurrenceRun {
    std::string source_name;
    std::uint32_t scan_length = 0;
    std::vector<std::optional<std::uint32_t>> max_gap; // index L-1
};

void write_recurrence(std::ostream& out, const RecurrenceRun& run, ReportFormat format);

// Expected-value tables: '#' comments and 'k value' lines.
std::map<std::uint32_t, std::uint64_t> read_expect_table(const std::string& path);

// Compares measured certificates against the table; prints a side-by-side
// diff of mismatches to `diag` and returns false on any deviation.
// Matching entries upgrade the certificate exactness to matches_expected.
bool apply_expectations(std::vector<ComplexityCertificate>& certs,
                        const std::map<std::uint32_t, std::uint64_t>& table,
                        std::ostream& diag);

} // namespace maxpat
