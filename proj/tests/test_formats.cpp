#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxpat/decompose.hpp"
#include "maxpat/generators.hpp"
#include "maxpat/genspec.hpp"
#include "maxpat/report.hpp"
#include "maxpat/seq_files.hpp"

using namespace maxpat;
namespace fs = std::filesystem;

#ifndef MAXPAT_SPEC_DIR
#define MAXPAT_SPEC_DIR "tools/specs"
#endif

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
    const auto path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}

std::string spec_path(const std::string& name) {
    return std::string(MAXPAT_SPEC_DIR) + "/" + name;
}

std::vector<Symbol> materialized(const Sequence& s, std::size_t n) {
    return materialize(s, n);
}

Sequence genspec_str(const std::string& text, std::uint64_t guarantee = 1000) {
    std::istringstream in(text);
    return read_genspec(in, guarantee);
}

ComplexityCertificate canned_certificate() {
    ComplexityCertificate c;
    c.k = 2;
    c.value = 4;
    c.witness = Window::from_indices({0, 2});
    c.strategy = Strategy::exhaustive;
    c.horizon = 20;
    c.scan_length = 2000;
    return c;
}

} // namespace

TEST_CASE("format names") {
    CHECK(parse_format("json") == ReportFormat::json);
    CHECK(parse_format("csv") == ReportFormat::csv);
    CHECK(parse_format("text") == ReportFormat::text);
    CHECK_THROWS_WITH_AS(parse_format("yaml"), doctest::Contains("unknown format"),
                         std::invalid_argument);
}

TEST_CASE("complexity reports in all three formats") {
    ComplexityRun run;
    run.source_name = "fib";
    run.source_kind = "substitution";
    run.alphabet_labels = {"0", "1"};
    run.certificates = {canned_certificate()};
    run.upper_bounds = {std::uint64_t{4}};

    std::ostringstream js;
    write_complexity(js, run, ReportFormat::json);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["source"]["name"] == "fib");
    CHECK(doc["source"]["kind"] == "substitution");
    CHECK(doc["source"]["alphabet"] == nlohmann::json({"0", "1"}));
    CHECK(doc["horizon"] == 20);
    CHECK(doc["scan_length"] == 2000);
    REQUIRE(doc["complexity"].size() == 1);
    CHECK(doc["complexity"][0]["k"] == 2);
    CHECK(doc["complexity"][0]["value"] == 4);
    CHECK(doc["complexity"][0]["witness"] == nlohmann::json({0, 2}));
    CHECK(doc["complexity"][0]["strategy"] == "exhaustive");
    CHECK(doc["complexity"][0]["exact"] == "lower-bound-only");
    CHECK(doc["complexity"][0]["stable"] == true);
    CHECK(doc["complexity"][0]["upper_bound"] == 4);

    std::ostringstream cs;
    write_complexity(cs, run, ReportFormat::csv);
    CHECK(cs.str() == "source,k,value,witness,strategy,exact,stable,upper_bound\n"
                      "fib,2,4,0 2,exhaustive,lower-bound-only,yes,4\n");

    std::ostringstream ts;
    write_complexity(ts, run, ReportFormat::text);
    CHECK(ts.str().find("source fib (substitution), alphabet {0,1}") != std::string::npos);
    CHECK(ts.str().find("k=2  value=4  witness={0,2}  exhaustive  lower-bound-only  bound<=4")
          != std::string::npos);
}

TEST_CASE("word lists and instability markers in reports") {
    ComplexityRun run;
    run.source_name = "s";
    run.source_kind = "literal";
    run.alphabet_labels = {"0", "1"};
    auto cert = canned_certificate();
    cert.unstable_scan = true;
    run.certificates = {cert};
    run.words = {{"00", "01", "10", "11"}};
    run.emit_words = true;

    std::ostringstream js;
    write_complexity(js, run, ReportFormat::json);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["complexity"][0]["stable"] == false);
    CHECK(doc["complexity"][0]["words"] == nlohmann::json({"00", "01", "10", "11"}));

    std::ostringstream ts;
    write_complexity(ts, run, ReportFormat::text);
    CHECK(ts.str().find("unstable") != std::string::npos);
    CHECK(ts.str().find("words: 00 01 10 11") != std::string::npos);
}

TEST_CASE("decomposition reports") {
    const auto tw = twin_sturmian_source();
    const auto facts = decompose_structure(tw, 4000, 50);

    std::ostringstream js;
    write_decomposition(js, facts, tw.alphabet(), "twin", ReportFormat::json, false);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["source"]["alphabet"] == nlohmann::json({"0", "1", "2"}));
    CHECK(doc["cycle"] == 3);
    CHECK(doc["singular"]["letters"][0]["label"] == "2");
    CHECK(doc["singular"]["letters"][0]["period"] == 3);
    CHECK(doc["mask"]["least_period"] == 3);
    CHECK(doc["mask"]["prefix"].get<std::string>().substr(0, 6) == "??2??2");
    REQUIRE(doc["residues"].size() == 3);
    CHECK(doc["residues"][2]["verdict"] == "constant");
    CHECK(doc["residues"][2]["constant"] == "2");
    CHECK(doc["graph"]["components"] == nlohmann::json({{0, 1}, {2}}));
    CHECK(!doc.contains("classification"));

    SearchConfig cfg;
    cfg.horizon = 30;
    cfg.scan_length = 4000;
    const auto cyc = periodic_source("012");
    const auto classified = classify_structure(cyc, cfg, 3, 50);
    std::ostringstream js2;
    write_decomposition(js2, classified, cyc.alphabet(), "p012", ReportFormat::json, true);
    const auto doc2 = nlohmann::json::parse(js2.str());
    CHECK(doc2["classification"] == "periodic");
    CHECK(doc2["k_check"] == 3);
    CHECK(doc2["full_period"] == 3);

    std::ostringstream ts;
    write_decomposition(ts, facts, tw.alphabet(), "twin", ReportFormat::text, false);
    CHECK(ts.str().find("singular letters: 2 (period 3)") != std::string::npos);
    CHECK(ts.str().find("cycle m = 3") != std::string::npos);
    CHECK(ts.str().find("components: {0,1} {2}") != std::string::npos);

    std::ostringstream cs;
    write_decomposition(cs, facts, tw.alphabet(), "twin", ReportFormat::csv, false);
    CHECK(cs.str().find("source,m,residue,verdict,observed,eventual,preperiod,period,measured")
          == 0);
    CHECK(cs.str().find("twin,3,2,constant,2,2,0,1,") != std::string::npos);
}

TEST_CASE("shared window reports") {
    SharedWindowRun run;
    run.name_a = "a";
    run.name_b = "b";
    run.k = 2;
    run.horizon = 40;
    run.scan_length = 4000;

    std::ostringstream none;
    write_shared_window(none, run, ReportFormat::json);
    CHECK(nlohmann::json::parse(none.str())["window"].is_null());

    std::ostringstream none_csv;
    write_shared_window(none_csv, run, ReportFormat::csv);
    CHECK(none_csv.str() == "a,b,k,found,window,count_a,count_b\na,b,2,no,,,\n");

    run.window = Window::from_indices({0, 2});
    run.count_a = 4;
    run.count_b = 5;
    std::ostringstream found;
    write_shared_window(found, run, ReportFormat::json);
    const auto doc = nlohmann::json::parse(found.str());
    CHECK(doc["window"] == nlohmann::json({0, 2}));
    CHECK(doc["count_a"] == 4);

    std::ostringstream ts;
    write_shared_window(ts, run, ReportFormat::text);
    CHECK(ts.str().find("{0,2} (word counts 4 and 5)") != std::string::npos);
}

TEST_CASE("recurrence reports mark non-recurring prefixes") {
    RecurrenceRun run;
    run.source_name = "s";
    run.scan_length = 400;
    run.max_gap = {std::uint32_t{2}, std::nullopt};

    std::ostringstream js;
    write_recurrence(js, run, ReportFormat::json);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["max_gap"][0]["gap"] == 2);
    CHECK(doc["max_gap"][1]["gap"].is_null());

    std::ostringstream cs;
    write_recurrence(cs, run, ReportFormat::csv);
    CHECK(cs.str() == "l,max_gap\n1,2\n2,inf\n");

    std::ostringstream ts;
    write_recurrence(ts, run, ReportFormat::text);
    CHECK(ts.str().find("inf (fewer than two occurrences)") != std::string::npos);
}

TEST_CASE("expectation tables") {
    const auto good = write_tmp("maxpat_expect_good.txt",
                                "# fibonacci values\n1 2\n2 4\n\n3 6\n");
    const auto table = read_expect_table(good);
    REQUIRE(table.size() == 3);
    CHECK(table.at(1) == 2);
    CHECK(table.at(3) == 6);

    const auto dup = write_tmp("maxpat_expect_dup.txt", "1 2\n1 3\n");
    CHECK_THROWS_WITH_AS(read_expect_table(dup), doctest::Contains("duplicate"),
                         std::invalid_argument);

    const auto bad = write_tmp("maxpat_expect_bad.txt", "one 2\n");
    CHECK_THROWS_WITH_AS(read_expect_table(bad), doctest::Contains("expected 'k value'"),
                         std::invalid_argument);

    CHECK_THROWS_AS(read_expect_table("/no/such/file"), std::runtime_error);
}

TEST_CASE("expectations upgrade or reject certificates") {
    auto cert = canned_certificate();
    std::vector<ComplexityCertificate> certs = {cert};

    std::ostringstream quiet;
    CHECK(apply_expectations(certs, {{2, 4}}, quiet));
    CHECK(certs[0].exact == Exactness::matches_expected);
    CHECK(quiet.str().empty());

    certs = {cert};
    std::ostringstream diag;
    CHECK(!apply_expectations(certs, {{2, 5}}, diag));
    CHECK(certs[0].exact == Exactness::lower_bound_only);
    CHECK(diag.str() == "k=2: measured 4, expected 5\n");

    certs = {cert};
    std::ostringstream missing;
    CHECK(!apply_expectations(certs, {{2, 4}, {9, 18}}, missing));
    CHECK(missing.str().find("k=9: expected 18, but that k was not measured")
          != std::string::npos);
}

TEST_CASE("shipped generator specs match the library factories") {
    CHECK(materialized(read_genspec_file(spec_path("fibonacci.genspec"), 0), 400) ==
          materialized(fibonacci_word(), 400));
    CHECK(materialized(read_genspec_file(spec_path("thue_morse.genspec"), 0), 400) ==
          materialized(thue_morse_word(), 400));
    CHECK(materialized(read_genspec_file(spec_path("strong_sturmian_3.genspec"), 0), 400) ==
          materialized(strong_sturmian_source(3), 400));
    CHECK(materialized(read_genspec_file(spec_path("surplus_constants.genspec"), 0), 400) ==
          materialized(surplus_constants_source(), 400));
    CHECK(materialized(read_genspec_file(spec_path("twin_sturmian.genspec"), 0), 400) ==
          materialized(twin_sturmian_source(), 400));
    CHECK(materialized(read_genspec_file(spec_path("periodic01.genspec"), 0), 6) ==
          std::vector<Symbol>{0, 1, 0, 1, 0, 1});

    const auto pd = read_genspec_file(spec_path("period_doubling.genspec"), 0);
    std::string pd16;
    for (std::size_t n = 0; n < 16; ++n)
        pd16 += pd.alphabet().label(pd.at(n));
    CHECK(pd16 == "1011101010111011");

    const auto golden = read_genspec_file(spec_path("golden_rotation.genspec"), 400);
    CHECK(golden.kind() == "rotation");
    CHECK(materialized(shift(golden, 1), 300) == materialized(fibonacci_word(), 300));
}

TEST_CASE("generator spec parsing") {
    const auto lit = genspec_str("kind = literal\nsymbols = 5 7\ntail = 0 1\n");
    CHECK(lit.alphabet().label(0) == "0");
    CHECK(lit.alphabet().label(2) == "5");
    CHECK(lit.at(0) == 2);
    CHECK(lit.at(3) == 1); // tail wraps: 5 7 0 1 0 1 ...

    const auto shifted = genspec_str("kind = shifted\nt = 1\nbase = ref x\n"
                                     "[x]\nkind = substitution\nrule = 0 -> 0 1 ; 1 -> 0\n");
    CHECK(materialized(shifted, 200) == materialized(shift(fibonacci_word(), 1), 200));

    const auto res = genspec_str("kind = residue-view\nm = 3\ni = 2\nbase = ref tw\n"
                                 "[tw]\nkind = interleave\nresidues = ref x, ref x, const 2\n"
                                 "[x]\nkind = substitution\nrule = 0 -> 0 1 ; 1 -> 0\n");
    CHECK(res.at(0) == 2);
    CHECK(res.at(17) == 2);

    const auto relabeled = genspec_str("kind = periodic\nword = 0 1\nalphabet = 1,0\n");
    CHECK(relabeled.alphabet().label(0) == "1");
    CHECK(relabeled.at(0) == 1); // symbol "0" carries code 1 here
}

TEST_CASE("generator spec errors") {
    CHECK_THROWS_WITH_AS(genspec_str("kind = wavelet\n"),
                         doctest::Contains("unknown generator kind"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = substitution\n"),
                         doctest::Contains("needs 'rule'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = periodic\nkind = periodic\n"),
                         doctest::Contains("duplicate key"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("word = 0 1\n"), doctest::Contains("needs 'kind'"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str(""), doctest::Contains("no top-level"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = shifted\nt = 1\nbase = ref a\n"
                                     "[a]\nkind = shifted\nt = 1\nbase = ref a\n"),
                         doctest::Contains("circular reference"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = shifted\nt = 1\nbase = ref ghost\n"),
                         doctest::Contains("unknown section"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = interleave\nresidues = const 2\nm = 3\n"),
                         doctest::Contains("does not match"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = periodic\nword = 0 1\nbroken line\n"),
                         doctest::Contains("key = value"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(genspec_str("kind = shifted\nt = -1\nbase = ref x\n"
                                     "[x]\nkind = periodic\nword = 0\n"),
                         doctest::Contains("non-negative"), std::invalid_argument);
}

TEST_CASE("literal files round-trip") {
    const auto fib = fibonacci_word();
    std::ostringstream out;
    write_literal(out, fib, 40);
    CHECK(out.str().substr(0, 15) == "#alphabet: 0,1\n");

    std::istringstream in(out.str());
    const auto back = read_literal(in);
    CHECK(literal_length(back) == 40);
    CHECK(materialized(back, 40) == materialized(fib, 40));
    CHECK_THROWS_AS((void)back.at(40), std::out_of_range);

    // Multi-character labels go through the spaced format.
    auto ab = Alphabet::from_labels({"2", "10"});
    const auto wide = literal_source(ab, {0, 1, 0}, {});
    std::ostringstream wout;
    write_literal(wout, wide, 3);
    CHECK(wout.str() == "#alphabet: 2,10\n2 10 2\n");
    std::istringstream win(wout.str());
    const auto wback = read_literal(win);
    CHECK(wback.alphabet().label(1) == "10");
    CHECK(materialized(wback, 3) == std::vector<Symbol>{0, 1, 0});
}

TEST_CASE("literal parsing rules") {
    std::istringstream packed("# comment\n0102\n");
    const auto s = read_literal(packed);
    CHECK(s.alphabet().size() == 3);
    CHECK(materialized(s, 4) == std::vector<Symbol>{0, 1, 0, 2});

    // Numeric labels sort by value, not as strings.
    std::istringstream numeric("10 2 10\n");
    const auto n = read_literal(numeric);
    CHECK(n.alphabet().label(0) == "2");
    CHECK(n.alphabet().label(1) == "10");
    CHECK(materialized(n, 3) == std::vector<Symbol>{1, 0, 1});

    std::istringstream declared("#alphabet: a,b\na b a\n");
    const auto d = read_literal(declared);
    CHECK(d.alphabet().label(0) == "a");
    CHECK(materialized(d, 3) == std::vector<Symbol>{0, 1, 0});

    std::istringstream mismatch("#alphabet: a,b\nc\n");
    CHECK_THROWS_WITH_AS(read_literal(mismatch), doctest::Contains("not in the declared"),
                         std::invalid_argument);

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_WITH_AS(read_literal(empty), doctest::Contains("no symbols"),
                         std::invalid_argument);

    std::istringstream dup("#alphabet: a\n#alphabet: a\na\n");
    CHECK_THROWS_WITH_AS(read_literal(dup), doctest::Contains("duplicate alphabet header"),
                         std::invalid_argument);
}

TEST_CASE("source files dispatch on content") {
    const auto lit = write_tmp("maxpat_src_literal.txt", "0100101\n");
    CHECK(read_source_file(lit, 0).kind() == "literal");

    const auto gen = write_tmp("maxpat_src_gen.txt",
                               "kind = substitution\nrule = 0 -> 0 1 ; 1 -> 0\n");
    const auto s = read_source_file(gen, 0);
    CHECK(s.kind() == "substitution");
    CHECK(materialized(s, 13) == materialized(fibonacci_word(), 13));

    CHECK_THROWS_AS(read_source_file("/no/such/file", 0), std::runtime_error);
}
