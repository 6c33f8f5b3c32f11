#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "maxpat/decompose.hpp"
#include "maxpat/generators.hpp"
#include "maxpat/window.hpp"
#include "oracles.hpp"

using namespace maxpat;

namespace {

Sequence preperiodic_literal() {
    auto ab = Alphabet::from_labels({"0", "1", "5", "7"});
    return literal_source(ab, {2, 3}, {0, 1}); // 57 then 010101...
}

Sequence low_complexity_witness() {
    InterleaveSpec spec;
    spec.entries.push_back(fibonacci_word());
    spec.entries.push_back(InterleaveSpec::PeriodicWord{{"0", "1"}});
    spec.entries.push_back(InterleaveSpec::Constant{"2"});
    return interleave_source(spec);
}

SearchConfig config_of(std::uint32_t horizon, std::uint32_t scan) {
    SearchConfig c;
    c.horizon = horizon;
    c.scan_length = scan;
    return c;
}

std::string prefix_str(const Sequence& s, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i)
        out += s.alphabet().label(s.at(i));
    return out;
}

} // namespace

TEST_CASE("singular letters of the interleaved families") {
    const auto s3 = singular_letters(strong_sturmian_source(3), 4000, 50);
    CHECK(s3.observed == std::vector<Symbol>{0, 1, 2});
    CHECK(s3.rare.empty());
    CHECK(!s3.is_singular(0));
    CHECK(!s3.is_singular(1));
    REQUIRE(s3.is_singular(2));
    CHECK(*s3.period_by_symbol[2] == 2);

    const auto tw = singular_letters(twin_sturmian_source(), 4000, 50);
    REQUIRE(tw.is_singular(2));
    CHECK(*tw.period_by_symbol[2] == 3);
    CHECK(!tw.is_singular(0));

    const auto sp = singular_letters(surplus_constants_source(), 4000, 50);
    REQUIRE(sp.is_singular(2));
    REQUIRE(sp.is_singular(3));
    CHECK(*sp.period_by_symbol[2] == 5);
    CHECK(*sp.period_by_symbol[3] == 5);

    const auto fib = singular_letters(fibonacci_word(), 4000, 50);
    CHECK(!fib.is_singular(0));
    CHECK(!fib.is_singular(1));

    CHECK_THROWS_AS(singular_letters(fibonacci_word(), 80, 50), std::invalid_argument);
    CHECK_THROWS_AS(singular_letters(fibonacci_word(), 4000, 0), std::invalid_argument);
}

TEST_CASE("letters that die out are reported as rare") {
    const auto rep = singular_letters(preperiodic_literal(), 400, 50);
    CHECK(rep.observed == std::vector<Symbol>{0, 1, 2, 3});
    CHECK(rep.rare == std::vector<Symbol>{2, 3});
    for (Symbol s : rep.observed)
        CHECK(!rep.is_singular(s));
}

TEST_CASE("decomposition cycle is the lcm of the singular periods") {
    auto cycle_of = [](const Sequence& s) {
        return decomposition_cycle(singular_letters(s, 4000, 50));
    };
    CHECK(cycle_of(strong_sturmian_source(3)) == 2);
    CHECK(cycle_of(strong_sturmian_source(4)) == 3);
    CHECK(cycle_of(strong_sturmian_source(5)) == 4);
    CHECK(cycle_of(twin_sturmian_source()) == 3);
    CHECK(cycle_of(surplus_constants_source()) == 5);
    CHECK(cycle_of(fibonacci_word()) == 1);
    CHECK(cycle_of(preperiodic_literal()) == 1);

    SingularReport huge;
    huge.scan_length = 100;
    huge.period_by_symbol = {std::uint32_t{60}};
    CHECK_THROWS_WITH_AS(decomposition_cycle(huge), doctest::Contains("half the scan"),
                         std::invalid_argument);
}

TEST_CASE("singular masks repeat with the cycle") {
    const auto tw = twin_sturmian_source();
    const auto rep = singular_letters(tw, 4000, 50);
    const auto mask = singular_mask(tw, rep, 30);
    CHECK(mask.least_period == 3);
    CHECK(render_mask(mask, tw.alphabet()) == "??2??2??2??2??2??2??2??2??2??2");

    const auto fib = fibonacci_word();
    const auto fmask = singular_mask(fib, singular_letters(fib, 4000, 50), 12);
    CHECK(fmask.least_period == 1); // all holes
    CHECK(render_mask(fmask, fib.alphabet()) == "????????????");

    const auto sp = surplus_constants_source();
    const auto smask = singular_mask(sp, singular_letters(sp, 4000, 50), 10);
    CHECK(smask.least_period == 5);
    CHECK(render_mask(smask, sp.alphabet()) == "?2332?2332");
}

TEST_CASE("residue graph joins classes sharing letters") {
    const auto tw = residue_graph(twin_sturmian_source(), 3, 4000);
    CHECK(tw.edges == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
    CHECK(tw.components == std::vector<std::vector<std::uint32_t>>{{0, 1}, {2}});

    const auto sp = residue_graph(surplus_constants_source(), 5, 4000);
    CHECK(sp.edges == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 4}, {2, 3}});
    CHECK(sp.components == std::vector<std::vector<std::uint32_t>>{{0}, {1, 4}, {2, 3}});

    const auto s3 = residue_graph(strong_sturmian_source(3), 2, 4000);
    CHECK(s3.edges.empty());
    CHECK(s3.components == std::vector<std::vector<std::uint32_t>>{{0}, {1}});

    CHECK_THROWS_AS(residue_graph(fibonacci_word(), 0, 100), std::invalid_argument);
    CHECK_THROWS_AS(residue_graph(fibonacci_word(), 200, 100), std::invalid_argument);
}

TEST_CASE("projection periodicity finds the smallest periodic subset") {
    const auto sp = periodic_by_projection(surplus_constants_source(), 10000, 100);
    REQUIRE(sp.has_value());
    CHECK(sp->subset == std::vector<Symbol>{2});
    CHECK(sp->preperiod == 0);
    CHECK(sp->period == 5);

    const auto s3 = periodic_by_projection(strong_sturmian_source(3), 10000, 100);
    REQUIRE(s3.has_value());
    CHECK(s3->subset == std::vector<Symbol>{2});
    CHECK(s3->period == 2);

    const auto tw = periodic_by_projection(twin_sturmian_source(), 10000, 100);
    REQUIRE(tw.has_value());
    CHECK(tw->subset == std::vector<Symbol>{2});
    CHECK(tw->period == 3);

    const auto cyc = periodic_by_projection(periodic_source("012"), 10000, 100);
    REQUIRE(cyc.has_value());
    CHECK(cyc->subset == std::vector<Symbol>{0});
    CHECK(cyc->period == 3);

    CHECK(!periodic_by_projection(fibonacci_word(), 10000, 100));
    CHECK(!periodic_by_projection(thue_morse_word(), 10000, 100));
    CHECK(!periodic_by_projection(periodic_source("0"), 1000, 100));

    std::vector<Symbol> wide(17);
    for (Symbol s = 0; s < 17; ++s)
        wide[s] = s;
    const auto big = periodic_source(Alphabet(17), wide);
    CHECK_THROWS_WITH_AS(periodic_by_projection(big, 400, 50),
                         doctest::Contains("16 observed letters"), std::invalid_argument);
}

TEST_CASE("projection periodicity agrees with a subset-enumeration oracle") {
    const std::vector<Sequence> sources = {
        fibonacci_word(),        thue_morse_word(),         periodic_source("01"),
        periodic_source("012"),  strong_sturmian_source(3), strong_sturmian_source(4),
        twin_sturmian_source(),  surplus_constants_source()};
    const std::uint32_t scan = 10000, maxp = 100;

    for (const auto& alpha : sources) {
        const auto text = prefix_str(alpha, scan);
        std::set<char> letters(text.begin(), text.end());
        std::vector<std::vector<char>> subsets;
        for (std::uint32_t mask = 1; mask + 1 < (1u << letters.size()); ++mask) {
            std::vector<char> sub;
            std::size_t b = 0;
            for (char c : letters)
                if (mask & (1u << b++))
                    sub.push_back(c);
            subsets.push_back(sub);
        }
        std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });

        std::optional<ProjectionPeriodicity> want;
        for (const auto& sub : subsets) {
            std::string ind(text.size(), '0');
            for (std::size_t n = 0; n < text.size(); ++n)
                if (std::find(sub.begin(), sub.end(), text[n]) != sub.end())
                    ind[n] = '1';
            if (auto tq = oracle::least_period(ind, maxp)) {
                want.emplace();
                for (char c : sub)
                    want->subset.push_back(*alpha.alphabet().code_of(std::string(1, c)));
                want->preperiod = tq->first;
                want->period = tq->second;
                break;
            }
        }

        const auto got = periodic_by_projection(alpha, scan, maxp);
        REQUIRE(got.has_value() == want.has_value());
        if (want) {
            CHECK(got->subset == want->subset);
            CHECK(got->preperiod == want->preperiod);
            CHECK(got->period == want->period);
        }
    }
}

TEST_CASE("classification of the named families") {
    const auto cfg = config_of(40, 6000);
    auto classify = [&](const Sequence& s) { return classify_structure(s, cfg, 4, 50); };

    const auto fib = classify(fibonacci_word());
    CHECK(fib.classification == StructureClass::strong_pattern_sturmian);
    CHECK(fib.m == 1);
    REQUIRE(fib.residues.size() == 1);
    CHECK(fib.residues[0].verdict == ResidueVerdict::aperiodic);
    CHECK(fib.residues[0].pattern_sturmian);
    CHECK(fib.residues[0].measured == std::vector<std::uint32_t>{2, 4, 6, 8});

    const auto s4 = classify(strong_sturmian_source(4));
    CHECK(s4.classification == StructureClass::strong_pattern_sturmian);
    CHECK(s4.m == 3);
    CHECK(s4.observed_letters == 4);
    CHECK(s4.residues[0].verdict == ResidueVerdict::aperiodic);
    CHECK(s4.residues[1].verdict == ResidueVerdict::constant);
    CHECK(s4.residues[1].constant_symbol == Symbol{2});
    CHECK(s4.residues[2].constant_symbol == Symbol{3});

    const auto sp = classify(surplus_constants_source());
    CHECK(sp.classification == StructureClass::pattern_sturmian_plus_constants);
    CHECK(sp.m == 5);
    CHECK(sp.observed_letters == 4);

    const auto tw = classify(twin_sturmian_source());
    CHECK(tw.classification == StructureClass::unclassified);
    CHECK(tw.residues[0].verdict == ResidueVerdict::aperiodic);
    CHECK(tw.residues[1].verdict == ResidueVerdict::aperiodic);
    CHECK(tw.residues[2].verdict == ResidueVerdict::constant);

    const auto tm = classify(thue_morse_word());
    CHECK(tm.classification == StructureClass::unclassified);
    CHECK(!tm.residues[0].pattern_sturmian);

    const auto low = classify(low_complexity_witness());
    CHECK(low.classification == StructureClass::low_complexity);
    CHECK(low.m == 3);
    CHECK(low.residues[1].verdict == ResidueVerdict::periodic);

    const auto p2 = classify(periodic_source("01"));
    CHECK(p2.classification == StructureClass::periodic);
    CHECK(p2.full_period == 2);

    const auto p3 = classify(periodic_source("012"));
    CHECK(p3.classification == StructureClass::periodic);
    CHECK(p3.full_period == 3);

    const auto pre = classify(preperiodic_literal());
    CHECK(pre.classification == StructureClass::periodic);
    CHECK(pre.residues[0].verdict == ResidueVerdict::eventually_periodic);
    CHECK(!pre.full_period.has_value());
}

TEST_CASE("facts-only decomposition runs no searches") {
    const auto rep = decompose_structure(fibonacci_word(), 4000, 50);
    CHECK(rep.k_check == 0);
    CHECK(rep.classification == StructureClass::unclassified);
    CHECK(rep.residues[0].verdict == ResidueVerdict::undetermined);
    CHECK(rep.residues[0].measured.empty());
}

TEST_CASE("structural upper bounds by classification") {
    const auto cfg = config_of(40, 6000);
    auto bound = [&](const Sequence& s, std::uint32_t k) {
        return structural_upper_bound(classify_structure(s, cfg, 4, 50), k);
    };
    for (std::uint32_t k = 1; k <= 5; ++k) {
        CHECK(bound(fibonacci_word(), k) == 2 * k);
        CHECK(bound(strong_sturmian_source(3), k) == 2 * k + 1);
        CHECK(bound(strong_sturmian_source(4), k) == 2 * k + 2);
        CHECK(bound(surplus_constants_source(), k) == 2 * k + 3);
        CHECK(bound(periodic_source("012"), k) == 3);
        CHECK(!bound(twin_sturmian_source(), k).has_value());
        CHECK(!bound(low_complexity_witness(), k).has_value());
    }
    const auto rep = classify_structure(fibonacci_word(), cfg, 4, 50);
    CHECK_THROWS_AS(structural_upper_bound(rep, 0), std::invalid_argument);
}

TEST_CASE("lifted windows separate the residue classes") {
    struct Row {
        Sequence alpha;
        std::uint32_t m;
        Window tau;
        std::uint32_t anchor;
    };
    const std::vector<Row> rows = {
        {strong_sturmian_source(4), 3, Window::from_indices({0, 2}), 6},
        {surplus_constants_source(), 5, Window::from_indices({0, 1}), 5},
        {twin_sturmian_source(), 3, Window::from_indices({0, 1}), 3},
    };
    const std::uint32_t scan = 4000;

    for (const auto& row : rows) {
        const auto rep = singular_letters(row.alpha, scan, 50);
        const auto mask = singular_mask(row.alpha, rep, scan);
        REQUIRE(mask.least_period == row.m);

        const auto k_total = static_cast<std::uint32_t>(row.tau.size()) + row.m - 1;
        const auto lifted = lifted_window(row.tau, row.m, k_total, row.anchor);

        std::vector<std::set<Word>> classes(row.m);
        for (std::uint32_t n = 0; n < scan; ++n)
            classes[n % row.m].insert(tau_word(row.alpha, lifted, n));

        std::set<Word> unioned;
        std::size_t total = 0;
        for (const auto& c : classes) {
            total += c.size();
            unioned.insert(c.begin(), c.end());
        }
        CHECK(total == unioned.size()); // pairwise disjoint
        const auto all = tau_words(row.alpha, lifted, scan);
        CHECK(unioned == std::set<Word>(all.words.begin(), all.words.end()));
    }
}

TEST_CASE("low measured complexity comes with a disconnected residue graph") {
    const std::vector<Sequence> sources = {
        strong_sturmian_source(3), strong_sturmian_source(4), surplus_constants_source(),
        twin_sturmian_source()};
    for (const auto& alpha : sources) {
        const auto rep = decompose_structure(alpha, 4000, 50);
        const auto ell = rep.observed_letters;
        bool saving = false;
        for (std::uint32_t k = 1; k <= 3 && !saving; ++k) {
            const auto cert =
                pattern_complexity(alpha, k, config_of(30, 4000), Strategy::hybrid);
            saving = cert.value < ell * k;
        }
        if (saving)
            CHECK(rep.graph.components.size() > 1);
    }
}

TEST_CASE("uniform recurrence profiles") {
    const auto cyc = uniform_recurrence_profile(periodic_source("01"), 10, 1000);
    REQUIRE(cyc.size() == 10);
    for (const auto& gap : cyc) {
        REQUIRE(gap.has_value());
        CHECK(*gap == 2);
    }

    const auto once = uniform_recurrence_profile(preperiodic_literal(), 2, 400);
    CHECK(!once[0].has_value()); // "5" never recurs
    CHECK(!once[1].has_value());

    const auto fib = uniform_recurrence_profile(fibonacci_word(), 8, 2000);
    REQUIRE(fib.size() == 8);
    CHECK(*fib[0] == 2);
    for (std::size_t i = 0; i < fib.size(); ++i) {
        REQUIRE(fib[i].has_value());
        if (i)
            CHECK(*fib[i] >= *fib[i - 1]);
    }

    CHECK_THROWS_WITH_AS(uniform_recurrence_profile(fibonacci_word(), 20, 1000),
                         doctest::Contains("scan too short"), std::invalid_argument);
    CHECK_THROWS_AS(uniform_recurrence_profile(fibonacci_word(), 0, 1000),
                    std::invalid_argument);
}
