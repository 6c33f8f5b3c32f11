#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "maxpat/complexity.hpp"
#include "maxpat/generators.hpp"
#include "maxpat/window.hpp"
#include "maxpat/window_kernel.hpp"
#include "oracles.hpp"

using namespace maxpat;

namespace {

std::string prefix_str(const Sequence& s, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i)
        out += s.alphabet().label(s.at(i));
    return out;
}

SearchConfig config_of(std::uint32_t horizon, std::uint32_t scan) {
    SearchConfig c;
    c.horizon = horizon;
    c.scan_length = scan;
    return c;
}

} // namespace

TEST_CASE("window kernel counts agree with direct word sets") {
    const auto tw = twin_sturmian_source();
    WindowKernel kern(tw, 30, 3000);
    for (const auto& idx : std::vector<std::vector<std::uint32_t>>{
             {0}, {0, 1}, {0, 3}, {0, 1, 5}, {0, 2, 17, 30}}) {
        const auto tau = Window::from_indices(idx);
        const auto direct = tau_words(tw, tau, 3000);
        const auto eval = kern.eval_of(tau);
        CHECK(eval.count == direct.size());
        CHECK(eval.last_new == direct.last_new_at);
    }
}

TEST_CASE("fibonacci complexity with exact witnesses") {
    const auto fib = fibonacci_word();
    for (std::uint32_t k = 1; k <= 5; ++k) {
        const auto cert = pattern_complexity(fib, k, config_of(40, 4000));
        CHECK(cert.value == 2 * k);
        CHECK(cert.k == k);
        CHECK(cert.strategy == Strategy::exhaustive);
        CHECK(cert.exact == Exactness::lower_bound_only);
        CHECK(!cert.unstable_scan);
    }
    // Lexicographically least witness among the maxima.
    const auto cert2 = pattern_complexity(fib, 2, config_of(40, 4000));
    CHECK(cert2.witness == Window::from_indices({0, 2}));
}

TEST_CASE("exhaustive search equals the brute-force oracle") {
    const std::vector<Sequence> sources = {
        fibonacci_word(), thue_morse_word(), periodic_source("012"),
        strong_sturmian_source(3)};
    for (const auto& alpha : sources) {
        const auto text = prefix_str(alpha, 2012);
        for (std::uint32_t k = 2; k <= 4; ++k) {
            const auto want = oracle::best_window(text, k, 12, 2000);
            const auto got = pattern_complexity(alpha, k, config_of(12, 2000));
            CHECK(got.value == want.count);
            REQUIRE(got.witness.size() == want.window.size());
            for (std::size_t i = 0; i < want.window.size(); ++i)
                CHECK(got.witness[i] == want.window[i]);
        }
    }
}

TEST_CASE("hybrid equals exhaustive, greedy stays below") {
    const std::vector<Sequence> sources = {
        twin_sturmian_source(), surplus_constants_source(), thue_morse_word()};
    for (const auto& alpha : sources) {
        for (std::uint32_t k = 2; k <= 4; ++k) {
            const auto full = pattern_complexity(alpha, k, config_of(30, 3000));
            const auto fast = pattern_complexity(alpha, k, config_of(30, 3000),
                                                 Strategy::hybrid);
            CHECK(fast.value == full.value);
            CHECK(fast.witness == full.witness);
            CHECK(fast.strategy == Strategy::hybrid);

            const auto rough = pattern_complexity(alpha, k, config_of(30, 3000),
                                                  Strategy::greedy);
            CHECK(rough.value <= full.value);
            CHECK(rough.witness.size() == k);
            CHECK(rough.witness[0] == 0);
        }
    }
}

TEST_CASE("results are identical for any worker count") {
    const auto tw = twin_sturmian_source();
    const auto base = pattern_complexity(tw, 3, config_of(40, 4000));
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        auto config = config_of(40, 4000);
        config.workers = workers;
        const auto cert = pattern_complexity(tw, 3, config);
        CHECK(cert.value == base.value);
        CHECK(cert.witness == base.witness);
        CHECK(cert.unstable_scan == base.unstable_scan);
    }
}

TEST_CASE("congruence filters restrict the offsets") {
    const auto s3 = strong_sturmian_source(3);
    auto filtered = config_of(40, 4000);
    filtered.congruence = CongruenceFilter{2, {0}};

    for (std::uint32_t k = 2; k <= 4; ++k) {
        const auto full = pattern_complexity(s3, k, config_of(40, 4000), Strategy::hybrid);
        const auto arith = pattern_complexity(s3, k, filtered, Strategy::hybrid);
        for (std::size_t i = 1; i < arith.witness.size(); ++i)
            CHECK(arith.witness[i] % 2 == 0);
        // Windows along the even positions already reach the maximum here.
        CHECK(full.value == 2 * k + 1);
        CHECK(arith.value == full.value);
    }

    // Repeated constants need mixed residues: same-class windows stop at
    // 2k + 2 while the true maximum is 2k + 3.
    const auto sp = surplus_constants_source();
    auto mod5 = config_of(40, 4000);
    mod5.congruence = CongruenceFilter{5, {0}};
    for (std::uint32_t k = 2; k <= 4; ++k) {
        const auto arith = pattern_complexity(sp, k, mod5, Strategy::hybrid);
        CHECK(arith.value == 2 * k + 2);
        const auto full = pattern_complexity(sp, k, config_of(40, 4000), Strategy::hybrid);
        CHECK(full.value == 2 * k + 3);
    }
}

TEST_CASE("search validation") {
    const auto fib = fibonacci_word();
    CHECK_THROWS_WITH_AS(pattern_complexity(fib, 8, config_of(5, 100)),
                         doctest::Contains("horizon too small"), std::invalid_argument);
    CHECK_THROWS_AS(pattern_complexity(fib, 0, config_of(10, 100)), std::invalid_argument);
    CHECK_THROWS_AS(pattern_complexity(fib, 2, config_of(10, 10)), std::invalid_argument);

    auto bad = config_of(10, 100);
    bad.congruence = CongruenceFilter{0, {0}};
    CHECK_THROWS_AS(pattern_complexity(fib, 2, bad), std::invalid_argument);
}

TEST_CASE("immediate extension growth") {
    const auto fib = fibonacci_word();
    const auto grown = immediate_extension_growth(fib, Window::block(1), config_of(40, 4000));
    REQUIRE(grown.has_value());
    CHECK(grown->first == 2);  // {0,1} gains one word, {0,2} gains two
    CHECK(grown->second == 2);

    const auto cyc = periodic_source("01");
    CHECK(!immediate_extension_growth(cyc, Window::block(1), config_of(40, 4000)));

    CHECK_THROWS_AS(immediate_extension_growth(fib, Window::from_indices({0, 50}),
                                               config_of(40, 4000)),
                    std::invalid_argument);
}

TEST_CASE("shared windows across two sequences") {
    const auto fib = fibonacci_word();
    const auto fib1 = shift(fib, 1);
    const auto found = shared_window_search(fib, fib1, 2, config_of(40, 4000));
    REQUIRE(found.has_value());
    CHECK(tau_words(fib, *found, 4000).size() >= 4);
    CHECK(tau_words(fib1, *found, 4000).size() >= 4);

    const auto tm = thue_morse_word();
    const auto single = shared_window_search(fib, tm, 1, config_of(40, 4000));
    REQUIRE(single.has_value());
    CHECK(single->size() == 1);

    // A periodic partner can never reach 2k words.
    CHECK(!shared_window_search(periodic_source("01"), fib, 2, config_of(40, 4000)));
}

TEST_CASE("lifting residue windows to the interleaved sequence") {
    CHECK(lifted_window(Window::block(1), 2, 2, 0) == Window::from_indices({0, 1}));
    CHECK(lifted_window(Window::from_indices({0, 2}), 3, 4, 6) ==
          Window::from_indices({0, 6, 7, 8}));
    CHECK(lifted_window(Window::from_indices({0, 1, 3}), 2, 4, 7) ==
          Window::from_indices({0, 2, 6, 9}));

    CHECK_THROWS_WITH_AS(lifted_window(Window::block(2), 3, 4, 2),
                         doctest::Contains("anchor"), std::invalid_argument);
    CHECK_THROWS_AS(lifted_window(Window::block(2), 3, 5, 9), std::invalid_argument);
    CHECK_THROWS_AS(lifted_window(Window::block(2), 0, 4, 9), std::invalid_argument);
}

TEST_CASE("late novelty flips the stability flag") {
    auto ab = Alphabet::from_labels({"0", "1"});
    std::vector<Symbol> syms(40, 0);
    syms[39] = 1;
    const auto late = literal_source(ab, syms, {0});
    const auto cert = pattern_complexity(late, 1, config_of(10, 40));
    CHECK(cert.value == 2);
    CHECK(cert.unstable_scan);

    const auto calm = pattern_complexity(fibonacci_word(), 2, config_of(40, 4000));
    CHECK(!calm.unstable_scan);
}

TEST_CASE("block windows count factors") {
    const auto fib = fibonacci_word();
    const auto text = oracle::fib_prefix(4020);
    for (std::size_t k = 1; k <= 8; ++k) {
        const auto ws = tau_words(fib, Window::block(k), 4000);
        CHECK(ws.size() == k + 1); // Sturmian block growth
        CHECK(ws.size() == oracle::factor_count(text, k, 4000));
    }
}

TEST_CASE("word counts are monotone in the scan") {
    const auto tm = thue_morse_word();
    const auto tau = Window::from_indices({0, 3, 7});
    CHECK(tau_words(tm, tau, 500).size() <= tau_words(tm, tau, 2000).size());
}

TEST_CASE("start positions split by residue partition the word set") {
    const auto tw = twin_sturmian_source();
    const auto tau = Window::from_indices({0, 1, 5});
    const std::uint32_t m = 3, scan = 3000;

    const auto all = tau_words(tw, tau, scan);
    std::set<Word> unioned;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t n = i; n < scan; n += m)
            unioned.insert(tau_word(tw, tau, n));
    CHECK(unioned.size() == all.size());
    CHECK(std::set<Word>(all.words.begin(), all.words.end()) == unioned);
}
