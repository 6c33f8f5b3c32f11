#include "maxpat/verify.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "maxpat/complexity.hpp"
#include "maxpat/decompose.hpp"
#include "maxpat/generators.hpp"

namespace maxpat {

namespace {

// Suite scale: small enough to finish in seconds, large enough that every
// roster sequence reaches its stable word counts well before the scan ends.
constexpr std::uint32_t kScan = 4000;
constexpr std::uint32_t kHorizon = 40;
constexpr std::uint32_t kMaxK = 4;

SearchConfig suite_config() {
    SearchConfig c;
    c.horizon = kHorizon;
    c.scan_length = kScan;
    return c;
}

Sequence golden_rotation() {
    RotationCoding coding;
    coding.slope_cf.push_back(0);
    for (int i = 0; i < 25; ++i)
        coding.slope_cf.push_back(1);
    coding.intercept = {0, 1};
    coding.alphabet = Alphabet::from_labels({"0", "1"});
    // Arcs [0, (q-p)/q) -> "1" and [(q-p)/q, 1) -> "0" for the convergent
    // p/q = 75025/121393 of the golden rotation number.
    coding.cuts.emplace_back(Rational64{0, 1}, *coding.alphabet.code_of("1"));
    coding.cuts.emplace_back(Rational64{46368, 121393}, *coding.alphabet.code_of("0"));
    // Covers the default CLI scale (scan 20000 + horizon 60) as well.
    return rotation_source(coding, 20060);
}

Sequence preperiodic_literal() {
    auto ab = Alphabet::from_labels({"0", "1", "5", "7"});
    return literal_source(ab, {2, 3}, {0, 1}); // 5 7 0 1 0 1 0 1 ...
}

std::uint64_t value_at(const Sequence& alpha, std::uint32_t k) {
    return pattern_complexity(alpha, k, suite_config(), Strategy::hybrid).value;
}

std::size_t observed_count(const Sequence& alpha) {
    const auto prefix = materialize(alpha, kScan);
    return std::set<Symbol>(prefix.begin(), prefix.end()).size();
}

std::string values_str(const std::vector<std::uint64_t>& vals) {
    std::string s;
    for (std::size_t i = 0; i < vals.size(); ++i)
        s += (i ? " " : "") + std::to_string(vals[i]);
    return s;
}

void add_check(SuiteResult& result, std::string description, bool pass, std::string detail) {
    result.checks.push_back({std::move(description), pass, std::move(detail)});
}

SuiteResult suite_facts() {
    SuiteResult result{"facts", {}, };
    for (const auto& entry : verification_roster()) {
        if (!entry.aperiodic)
            continue;
        std::vector<std::uint64_t> vals;
        bool floors = true;
        for (std::uint32_t k = 1; k <= kMaxK; ++k) {
            vals.push_back(value_at(entry.sequence, k));
            floors = floors && vals.back() >= 2ull * k;
        }
        const std::size_t ell = observed_count(entry.sequence);
        const bool letters = vals[0] == ell;
        add_check(result, entry.name + ": window word counts reach 2k",
                  floors, "values " + values_str(vals));
        add_check(result, entry.name + ": k=1 count equals the observed alphabet",
                  letters, "value " + std::to_string(vals[0]) + ", letters " +
                  std::to_string(ell));
    }
    return result;
}

SuiteResult suite_lower_bounds() {
    SuiteResult result{"lower-bounds", {}, };
    for (const auto& entry : verification_roster()) {
        if (!entry.aperiodic)
            continue;
        const std::size_t ell = observed_count(entry.sequence);
        std::vector<std::uint64_t> vals;
        bool ok = true;
        for (std::uint32_t k = 1; k <= kMaxK; ++k) {
            vals.push_back(value_at(entry.sequence, k));
            ok = ok && vals.back() >= 2ull * k + ell - 2;
        }
        add_check(result, entry.name + ": counts reach 2k + " + std::to_string(ell) + " - 2",
                  ok, "values " + values_str(vals));
    }
    return result;
}

SuiteResult suite_growth() {
    SuiteResult result{"growth", {}, };
    const std::map<std::string, std::uint64_t> caps = {
        {"periodic-01", 2}, {"periodic-012", 3}, {"preperiodic", 4}};
    for (const auto& entry : verification_roster()) {
        std::vector<std::uint64_t> vals;
        for (std::uint32_t k = 1; k <= kMaxK; ++k)
            vals.push_back(value_at(entry.sequence, k));
        if (entry.aperiodic) {
            bool grows = true;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i)
                grows = grows && vals[i + 1] >= vals[i] + 2;
            add_check(result, entry.name + ": counts grow by at least 2 per window slot",
                      grows, "values " + values_str(vals));
        } else {
            const auto cap = caps.at(entry.name);
            const bool bounded = std::all_of(vals.begin(), vals.end(),
                                             [cap](std::uint64_t v) { return v <= cap; }) &&
                                 vals.back() == cap;
            add_check(result, entry.name + ": counts saturate at " + std::to_string(cap),
                      bounded, "values " + values_str(vals));
        }
    }
    return result;
}

SuiteResult suite_structure() {
    SuiteResult result{"structure", {}, };
    const std::map<std::string, StructureClass> expected = {
        {"fib", StructureClass::strong_pattern_sturmian},
        {"golden", StructureClass::strong_pattern_sturmian},
        {"thue-morse", StructureClass::unclassified},
        {"strong-3", StructureClass::strong_pattern_sturmian},
        {"strong-4", StructureClass::strong_pattern_sturmian},
        {"surplus", StructureClass::pattern_sturmian_plus_constants},
        {"twin", StructureClass::unclassified},
        {"periodic-01", StructureClass::periodic},
        {"periodic-012", StructureClass::periodic},
        {"preperiodic", StructureClass::periodic},
    };
    const std::map<std::string, std::uint32_t> cycles = {
        {"fib", 1}, {"golden", 1}, {"strong-3", 2}, {"strong-4", 3},
        {"surplus", 5}, {"twin", 3}, {"periodic-01", 2}, {"periodic-012", 3},
    };
    std::map<std::string, DecompositionReport> reports;
    for (const auto& entry : verification_roster()) {
        auto it = expected.find(entry.name);
        if (it == expected.end())
            continue;
        auto report = classify_structure(entry.sequence, suite_config(), kMaxK, 50);
        add_check(result, entry.name + ": classification",
                  report.classification == it->second,
                  "got " + to_string(report.classification) + ", want " +
                  to_string(it->second));
        if (auto c = cycles.find(entry.name); c != cycles.end())
            add_check(result, entry.name + ": cycle m", report.m == c->second,
                      "got " + std::to_string(report.m) + ", want " +
                      std::to_string(c->second));
        reports.emplace(entry.name, std::move(report));
    }

    const std::vector<std::vector<std::uint32_t>> twin_comps = {{0, 1}, {2}};
    add_check(result, "twin: residues sharing letters are joined",
              reports.at("twin").graph.components == twin_comps,
              "components of the residue graph");
    const std::vector<std::vector<std::uint32_t>> surplus_comps = {{0}, {1, 4}, {2, 3}};
    add_check(result, "surplus: repeated constants pair up",
              reports.at("surplus").graph.components == surplus_comps,
              "components of the residue graph");
    add_check(result, "periodic-012: full period recovered",
              reports.at("periodic-012").full_period == std::uint64_t{3},
              "least period of the repeated word");
    add_check(result, "preperiodic: no full period for an impure tail",
              !reports.at("preperiodic").full_period.has_value(),
              "preperiod 2 blocks a pure period");
    return result;
}

SuiteResult suite_examples() {
    SuiteResult result{"examples", {}, };
    const auto roster = verification_roster();
    auto find = [&roster](const std::string& name) -> const Sequence& {
        for (const auto& e : roster)
            if (e.name == name)
                return e.sequence;
        throw std::logic_error("roster entry missing: " + name);
    };

    struct Row {
        const char* name;
        std::uint32_t k_from;
        std::uint64_t slope, offset; // expected value = slope * k + offset
    };
    // Closed forms for the interleaved families and the Sturmian sources.
    const Row rows[] = {
        {"fib", 1, 2, 0},     {"golden", 1, 2, 0},   {"strong-3", 1, 2, 1},
        {"strong-4", 1, 2, 2}, {"surplus", 2, 2, 3}, {"twin", 2, 4, 0},
    };
    for (const auto& row : rows) {
        const Sequence& alpha = find(row.name);
        std::vector<std::uint64_t> vals;
        bool ok = true;
        for (std::uint32_t k = row.k_from; k <= kMaxK; ++k) {
            vals.push_back(value_at(alpha, k));
            ok = ok && vals.back() == row.slope * k + row.offset;
        }
        std::ostringstream want;
        want << "want " << row.slope << "k+" << row.offset << " from k=" << row.k_from
             << ", got " << values_str(vals);
        add_check(result, std::string(row.name) + ": complexity table", ok, want.str());
    }

    // The golden rotation coding reproduces the Fibonacci word once the
    // leading symbol is dropped.
    const auto golden = find("golden");
    const auto fib = find("fib");
    const auto shifted = materialize(shift(golden, 1), 500);
    const auto direct = materialize(fib, 500);
    add_check(result, "golden: coding equals the Fibonacci word after one shift",
              shifted == direct, "first 500 symbols");
    return result;
}

} // namespace

std::vector<RosterEntry> verification_roster() {
    std::vector<RosterEntry> roster;
    roster.push_back({"fib", fibonacci_word(), true, true});
    roster.push_back({"thue-morse", thue_morse_word(), true, true});
    roster.push_back({"period-doubling", toeplitz_source("101?"), true, true});
    roster.push_back({"golden", golden_rotation(), true, true});
    roster.push_back({"strong-3", strong_sturmian_source(3), true, true});
    roster.push_back({"strong-4", strong_sturmian_source(4), true, true});
    roster.push_back({"surplus", surplus_constants_source(), true, true});
    roster.push_back({"twin", twin_sturmian_source(), true, true});
    roster.push_back({"periodic-01", periodic_source("01"), false, true});
    roster.push_back({"periodic-012", periodic_source("012"), false, true});
    roster.push_back({"preperiodic", preperiodic_literal(), false, false});
    return roster;
}

bool SuiteResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const SuiteCheck& c) { return c.pass; });
}

SuiteResult verify_suite(const std::string& name) {
    if (name == "facts")
        return suite_facts();
    if (name == "lower-bounds")
        return suite_lower_bounds();
    if (name == "growth")
        return suite_growth();
    if (name == "structure")
        return suite_structure();
    if (name == "examples")
        return suite_examples();
    throw std::invalid_argument("unknown suite '" + name +
                                "' (facts, lower-bounds, growth, structure, examples)");
}

std::vector<std::string> verify_suite_names() {
    return {"facts", "lower-bounds", "growth", "structure", "examples"};
}

bool print_suite(std::ostream& out, const SuiteResult& result) {
    std::size_t passed = 0;
    for (const auto& check : result.checks) {
        out << (check.pass ? "[PASS] " : "[FAIL] ") << result.suite << ": "
            << check.description;
        if (!check.pass || !check.detail.empty())
            out << " (" << check.detail << ')';
        out << '\n';
        passed += check.pass;
    }
    out << result.suite << ": " << passed << " of " << result.checks.size()
        << " checks passed\n";
    return result.all_pass();
}

} // namespace maxpat
