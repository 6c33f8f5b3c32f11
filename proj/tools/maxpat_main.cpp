// Command line front end: generate sequences, measure their maximal pattern
// complexity, decompose and classify their structure, and run the built-in
// verification suites.
//
// Exit codes: 0 success, 1 expectation/verification failure, 2 usage or
// input errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxpat/complexity.hpp"
#include "maxpat/decompose.hpp"
#include "maxpat/generators.hpp"
#include "maxpat/genspec.hpp"
#include "maxpat/report.hpp"
#include "maxpat/seq_files.hpp"
#include "maxpat/verify.hpp"
#include "maxpat/window.hpp"

namespace {

using namespace maxpat;

std::string source_name_of(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0)
        base = base.substr(0, dot);
    return base;
}

// Stream selection for --out; stdout when empty.
struct Output {
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

void check_literal_reach(const Sequence& alpha, std::uint64_t needed) {
    const auto stored = literal_length(alpha);
    if (stored > 0 && needed > stored)
        throw std::invalid_argument(
            "literal source stores " + std::to_string(stored) + " symbols but the run reads " +
            std::to_string(needed) + "; shorten the scan/horizon or use a generator spec");
}

std::pair<std::uint32_t, std::uint32_t> parse_k_range(const std::string& text) {
    const auto parse_one = [&text](const std::string& part) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(part, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != part.size() || part.empty())
            throw std::invalid_argument("bad k range '" + text + "' (use K or MIN..MAX)");
        return static_cast<std::uint32_t>(v);
    };
    const auto dots = text.find("..");
    std::uint32_t lo, hi;
    if (dots == std::string::npos) {
        lo = hi = parse_one(text);
    } else {
        lo = parse_one(text.substr(0, dots));
        hi = parse_one(text.substr(dots + 2));
    }
    if (lo < 1 || hi < lo)
        throw std::invalid_argument("bad k range '" + text + "': need 1 <= MIN <= MAX");
    return {lo, hi};
}

CongruenceFilter parse_congruence(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad congruence '" + text + "' (use M:r1,r2,...)");
    CongruenceFilter f;
    try {
        f.modulus = static_cast<std::uint32_t>(std::stoul(text.substr(0, colon)));
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ','))
            f.residues.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad congruence '" + text + "' (use M:r1,r2,...)");
    }
    if (f.modulus == 0 || f.residues.empty())
        throw std::invalid_argument("congruence needs a positive modulus and residues");
    return f;
}

Strategy parse_strategy(const std::string& name) {
    if (name == "exhaustive")
        return Strategy::exhaustive;
    if (name == "greedy")
        return Strategy::greedy;
    if (name == "hybrid")
        return Strategy::hybrid;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal pattern complexity toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    // ------------------------------------------------------------ generate
    auto* gen = app.add_subcommand("generate", "write a sequence prefix as a literal file");
    struct {
        std::string spec, out;
        std::uint64_t length = 200;
    } gen_opts;
    gen->add_option("--spec", gen_opts.spec, "generator spec or literal file")->required();
    gen->add_option("--length", gen_opts.length, "symbols to write");
    gen->add_option("--out", gen_opts.out, "output file (default stdout)");
    gen->callback([&] {
        const Sequence alpha = read_source_file(gen_opts.spec, gen_opts.length);
        check_literal_reach(alpha, gen_opts.length);
        Output out(gen_opts.out);
        write_literal(out.stream(), alpha, gen_opts.length);
    });

    // ---------------------------------------------------------- complexity
    auto* cpx = app.add_subcommand("complexity",
                                   "measure window word counts over all k-windows");
    struct {
        std::string spec, out, format = "text", k = "1..6", strategy = "hybrid";
        std::string expect, congruence;
        std::uint32_t horizon = 60, scan = 20000;
        unsigned workers = 0;
        bool emit_words = false, bounds = false;
    } cpx_opts;
    cpx->add_option("--spec", cpx_opts.spec, "generator spec or literal file")->required();
    cpx->add_option("--k", cpx_opts.k, "window size or range MIN..MAX");
    cpx->add_option("--horizon", cpx_opts.horizon, "largest candidate offset");
    cpx->add_option("--scan", cpx_opts.scan, "start positions scanned per window");
    cpx->add_option("--strategy", cpx_opts.strategy, "exhaustive, greedy or hybrid")
        ->check(CLI::IsMember({"exhaustive", "greedy", "hybrid"}));
    cpx->add_option("--format", cpx_opts.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cpx->add_option("--expect", cpx_opts.expect, "table of expected values (k value lines)");
    cpx->add_option("--congruence", cpx_opts.congruence,
                    "restrict offsets to residues, e.g. 3:0 or 5:1,4");
    cpx->add_option("--workers", cpx_opts.workers, "worker threads (0 = default)");
    cpx->add_option("--out", cpx_opts.out, "output file (default stdout)");
    cpx->add_flag("--emit-words", cpx_opts.emit_words, "list the witness window words");
    cpx->add_flag("--bounds", cpx_opts.bounds,
                  "classify the structure and attach upper bounds");
    cpx->callback([&] {
        const auto [k_lo, k_hi] = parse_k_range(cpx_opts.k);
        SearchConfig config;
        config.horizon = cpx_opts.horizon;
        config.scan_length = cpx_opts.scan;
        config.workers = cpx_opts.workers;
        if (!cpx_opts.congruence.empty())
            config.congruence = parse_congruence(cpx_opts.congruence);
        const Strategy strategy = parse_strategy(cpx_opts.strategy);

        const Sequence alpha =
            read_source_file(cpx_opts.spec, std::uint64_t{cpx_opts.scan} + cpx_opts.horizon);
        check_literal_reach(alpha, std::uint64_t{cpx_opts.scan} + cpx_opts.horizon);

        ComplexityRun run;
        run.source_name = source_name_of(cpx_opts.spec);
        run.source_kind = alpha.kind();
        for (std::size_t s = 0; s < alpha.alphabet().size(); ++s)
            run.alphabet_labels.push_back(alpha.alphabet().label(static_cast<Symbol>(s)));
        for (std::uint32_t k = k_lo; k <= k_hi; ++k)
            run.certificates.push_back(pattern_complexity(alpha, k, config, strategy));

        run.upper_bounds.assign(run.certificates.size(), std::nullopt);
        if (cpx_opts.bounds) {
            const auto report = classify_structure(alpha, config);
            for (std::size_t i = 0; i < run.certificates.size(); ++i) {
                auto& cert = run.certificates[i];
                run.upper_bounds[i] = structural_upper_bound(report, cert.k);
                if (run.upper_bounds[i] && cert.value == *run.upper_bounds[i])
                    cert.exact = Exactness::matches_structural_upper_bound;
            }
        }
        if (!cpx_opts.expect.empty()) {
            const auto table = read_expect_table(cpx_opts.expect);
            if (!apply_expectations(run.certificates, table, std::cerr))
                rc = 1;
        }
        if (cpx_opts.emit_words) {
            run.emit_words = true;
            for (const auto& cert : run.certificates) {
                const auto ws = tau_words(alpha, cert.witness, cpx_opts.scan);
                std::vector<std::string> rendered;
                rendered.reserve(ws.words.size());
                for (const auto& w : ws.words)
                    rendered.push_back(render_word(w, alpha.alphabet()));
                run.words.push_back(std::move(rendered));
            }
        }
        Output out(cpx_opts.out);
        write_complexity(out.stream(), run, parse_format(cpx_opts.format));
    });

    // ----------------------------------------------------------- decompose
    auto* dec = app.add_subcommand("decompose",
                                   "singular letters, cycle, mask and residue facts");
    struct {
        std::string spec, out, format = "text";
        std::uint32_t scan = 20000, max_period = 100;
    } dec_opts;
    dec->add_option("--spec", dec_opts.spec, "generator spec or literal file")->required();
    dec->add_option("--scan", dec_opts.scan, "symbols scanned");
    dec->add_option("--max-period", dec_opts.max_period, "largest period tried");
    dec->add_option("--format", dec_opts.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    dec->add_option("--out", dec_opts.out, "output file (default stdout)");
    dec->callback([&] {
        const Sequence alpha = read_source_file(dec_opts.spec, dec_opts.scan);
        check_literal_reach(alpha, dec_opts.scan);
        const auto report = decompose_structure(alpha, dec_opts.scan, dec_opts.max_period);
        Output out(dec_opts.out);
        write_decomposition(out.stream(), report, alpha.alphabet(),
                            source_name_of(dec_opts.spec), parse_format(dec_opts.format),
                            /*with_classification=*/false);
    });

    // ------------------------------------------------------------ classify
    auto* cls = app.add_subcommand("classify",
                                   "decompose and classify the structure class");
    struct {
        std::string spec, out, format = "text";
        std::uint32_t scan = 20000, horizon = 60, k_check = 5, max_period = 100;
        unsigned workers = 0;
    } cls_opts;
    cls->add_option("--spec", cls_opts.spec, "generator spec or literal file")->required();
    cls->add_option("--scan", cls_opts.scan, "symbols scanned");
    cls->add_option("--horizon", cls_opts.horizon, "offset horizon for residue searches");
    cls->add_option("--k-check", cls_opts.k_check, "window sizes tested per residue");
    cls->add_option("--max-period", cls_opts.max_period, "largest period tried");
    cls->add_option("--workers", cls_opts.workers, "worker threads (0 = default)");
    cls->add_option("--format", cls_opts.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cls->add_option("--out", cls_opts.out, "output file (default stdout)");
    cls->callback([&] {
        SearchConfig config;
        config.horizon = cls_opts.horizon;
        config.scan_length = cls_opts.scan;
        config.workers = cls_opts.workers;
        const Sequence alpha = read_source_file(
            cls_opts.spec, std::uint64_t{cls_opts.scan} + cls_opts.horizon);
        check_literal_reach(alpha, cls_opts.scan);
        const auto report =
            classify_structure(alpha, config, cls_opts.k_check, cls_opts.max_period);
        Output out(cls_opts.out);
        write_decomposition(out.stream(), report, alpha.alphabet(),
                            source_name_of(cls_opts.spec), parse_format(cls_opts.format),
                            /*with_classification=*/true);
    });

    // ------------------------------------------------------- shared-window
    auto* shw = app.add_subcommand("shared-window",
                                   "first window reaching 2k words on two sequences");
    struct {
        std::string spec, spec2, out, format = "text";
        std::uint32_t k = 2, horizon = 60, scan = 20000;
    } shw_opts;
    shw->add_option("--spec", shw_opts.spec, "first sequence")->required();
    shw->add_option("--spec2", shw_opts.spec2, "second sequence")->required();
    shw->add_option("--k", shw_opts.k, "window size");
    shw->add_option("--horizon", shw_opts.horizon, "largest candidate offset");
    shw->add_option("--scan", shw_opts.scan, "start positions scanned");
    shw->add_option("--format", shw_opts.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    shw->add_option("--out", shw_opts.out, "output file (default stdout)");
    shw->callback([&] {
        SearchConfig config;
        config.horizon = shw_opts.horizon;
        config.scan_length = shw_opts.scan;
        const std::uint64_t reach = std::uint64_t{shw_opts.scan} + shw_opts.horizon;
        const Sequence a = read_source_file(shw_opts.spec, reach);
        const Sequence b = read_source_file(shw_opts.spec2, reach);
        check_literal_reach(a, reach);
        check_literal_reach(b, reach);

        SharedWindowRun run;
        run.name_a = source_name_of(shw_opts.spec);
        run.name_b = source_name_of(shw_opts.spec2);
        run.k = shw_opts.k;
        run.horizon = shw_opts.horizon;
        run.scan_length = shw_opts.scan;
        run.window = shared_window_search(a, b, shw_opts.k, config);
        if (run.window) {
            run.count_a = static_cast<std::uint32_t>(tau_words(a, *run.window,
                                                               shw_opts.scan).size());
            run.count_b = static_cast<std::uint32_t>(tau_words(b, *run.window,
                                                               shw_opts.scan).size());
        }
        Output out(shw_opts.out);
        write_shared_window(out.stream(), run, parse_format(shw_opts.format));
    });

    // ---------------------------------------------------------- recurrence
    auto* rec = app.add_subcommand("recurrence",
                                   "largest gaps between repeats of each prefix");
    struct {
        std::string spec, out, format = "text";
        std::uint32_t lmax = 20, scan = 20000;
    } rec_opts;
    rec->add_option("--spec", rec_opts.spec, "generator spec or literal file")->required();
    rec->add_option("--lmax", rec_opts.lmax, "longest prefix tracked");
    rec->add_option("--scan", rec_opts.scan, "symbols scanned");
    rec->add_option("--format", rec_opts.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    rec->add_option("--out", rec_opts.out, "output file (default stdout)");
    rec->callback([&] {
        const Sequence alpha = read_source_file(rec_opts.spec, rec_opts.scan);
        check_literal_reach(alpha, rec_opts.scan);
        RecurrenceRun run;
        run.source_name = source_name_of(rec_opts.spec);
        run.scan_length = rec_opts.scan;
        run.max_gap = uniform_recurrence_profile(alpha, rec_opts.lmax, rec_opts.scan);
        Output out(rec_opts.out);
        write_recurrence(out.stream(), run, parse_format(rec_opts.format));
    });

    // -------------------------------------------------------------- verify
    auto* ver = app.add_subcommand("verify", "run the built-in verification suites");
    struct {
        std::string suite = "all";
    } ver_opts;
    ver->add_option("--suite", ver_opts.suite, "facts, lower-bounds, growth, structure, "
                                               "examples or all");
    ver->callback([&] {
        std::vector<std::string> names;
        if (ver_opts.suite == "all")
            names = verify_suite_names();
        else
            names.push_back(ver_opts.suite);
        for (const auto& name : names)
            if (!print_suite(std::cout, verify_suite(name)))
                rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
