#include "maxpat/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "maxpat/window.hpp"

namespace maxpat {

using json = nlohmann::ordered_json;

ReportFormat parse_format(const std::string& name) {
    if (name == "json")
        return ReportFormat::json;
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "text")
        return ReportFormat::text;
    throw std::invalid_argument("unknown format '" + name + "' (json, csv or text)");
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

std::string offsets_str(const Window& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(w[i]);
    }
    return out;
}

std::vector<std::string> label_all(const std::vector<Symbol>& symbols, const Alphabet& ab) {
    std::vector<std::string> out;
    out.reserve(symbols.size());
    for (Symbol s : symbols)
        out.push_back(ab.label(s));
    return out;
}

json window_json(const Window& w) {
    json arr = json::array();
    for (std::size_t i = 0; i < w.size(); ++i)
        arr.push_back(w[i]);
    return arr;
}

} // namespace

void write_complexity(std::ostream& out, const ComplexityRun& run, ReportFormat format) {
    switch (format) {
    case ReportFormat::json: {
        json doc;
        doc["source"] = {{"name", run.source_name},
                         {"kind", run.source_kind},
                         {"alphabet", run.alphabet_labels}};
        if (!run.certificates.empty()) {
            doc["horizon"] = run.certificates.front().horizon;
            doc["scan_length"] = run.certificates.front().scan_length;
        }
        doc["complexity"] = json::array();
        for (std::size_t i = 0; i < run.certificates.size(); ++i) {
            const auto& c = run.certificates[i];
            json entry = {{"k", c.k},
                          {"value", c.value},
                          {"witness", window_json(c.witness)},
                          {"strategy", to_string(c.strategy)},
                          {"exact", to_string(c.exact)},
                          {"stable", !c.unstable_scan}};
            if (i < run.upper_bounds.size() && run.upper_bounds[i])
                entry["upper_bound"] = *run.upper_bounds[i];
            if (run.emit_words && i < run.words.size())
                entry["words"] = run.words[i];
            doc["complexity"].push_back(std::move(entry));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    case ReportFormat::csv: {
        out << "source,k,value,witness,strategy,exact,stable,upper_bound\n";
        for (std::size_t i = 0; i < run.certificates.size(); ++i) {
            const auto& c = run.certificates[i];
            out << run.source_name << ',' << c.k << ',' << c.value << ','
                << offsets_str(c.witness) << ',' << to_string(c.strategy) << ','
                << to_string(c.exact) << ',' << (c.unstable_scan ? "no" : "yes") << ',';
            if (i < run.upper_bounds.size() && run.upper_bounds[i])
                out << *run.upper_bounds[i];
            out << '\n';
        }
        return;
    }
    case ReportFormat::text: {
        out << "source " << run.source_name << " (" << run.source_kind << "), alphabet {"
            << join(run.alphabet_labels, ",") << "}\n";
        if (!run.certificates.empty())
            out << "horizon " << run.certificates.front().horizon << ", scan "
                << run.certificates.front().scan_length << '\n';
        for (std::size_t i = 0; i < run.certificates.size(); ++i) {
            const auto& c = run.certificates[i];
            out << "k=" << c.k << "  value=" << c.value << "  witness=" << c.witness.to_string()
                << "  " << to_string(c.strategy) << "  " << to_string(c.exact)
                << (c.unstable_scan ? "  unstable" : "");
            if (i < run.upper_bounds.size() && run.upper_bounds[i])
                out << "  bound<=" << *run.upper_bounds[i];
            out << '\n';
            if (run.emit_words && i < run.words.size())
                out << "  words: " << join(run.words[i], " ") << '\n';
        }
        return;
    }
    }
}

namespace {

std::string mask_prefix_str(const DecompositionReport& report, const Alphabet& alphabet) {
    SingularMask shown;
    const std::size_t n = std::min<std::size_t>(report.mask.mask.size(), 48);
    shown.mask.assign(report.mask.mask.begin(), report.mask.mask.begin() + n);
    shown.least_period = report.mask.least_period;
    return render_mask(shown, alphabet);
}

} // namespace

void write_decomposition(std::ostream& out, const DecompositionReport& report,
                         const Alphabet& alphabet, const std::string& source_name,
                         ReportFormat format, bool with_classification) {
    switch (format) {
    case ReportFormat::json: {
        std::vector<std::string> all_labels;
        for (std::size_t s = 0; s < alphabet.size(); ++s)
            all_labels.push_back(alphabet.label(static_cast<Symbol>(s)));
        json doc;
        doc["source"] = {{"name", source_name}, {"alphabet", all_labels}};
        doc["scan_length"] = report.scan_length;
        doc["max_period"] = report.max_period;
        json singular = json::array();
        for (Symbol s : report.singular.observed)
            if (report.singular.is_singular(s))
                singular.push_back({{"label", alphabet.label(s)},
                                    {"period", *report.singular.period_by_symbol[s]}});
        doc["singular"] = {{"letters", std::move(singular)},
                           {"rare", label_all(report.singular.rare, alphabet)}};
        doc["cycle"] = report.m;
        doc["mask"] = {{"prefix", mask_prefix_str(report, alphabet)},
                       {"least_period", report.mask.least_period}};
        doc["residues"] = json::array();
        for (const auto& r : report.residues) {
            json entry = {{"index", r.index},
                          {"verdict", to_string(r.verdict)},
                          {"observed", label_all(r.observed, alphabet)},
                          {"eventual", label_all(r.eventual, alphabet)}};
            if (r.periodicity) {
                entry["preperiod"] = r.periodicity->preperiod;
                entry["period"] = r.periodicity->period;
            }
            if (r.constant_symbol)
                entry["constant"] = alphabet.label(*r.constant_symbol);
            if (!r.measured.empty()) {
                entry["measured"] = r.measured;
                entry["pattern_sturmian"] = r.pattern_sturmian;
            }
            doc["residues"].push_back(std::move(entry));
        }
        json edges = json::array();
        for (const auto& [i, j] : report.graph.edges)
            edges.push_back({i, j});
        doc["graph"] = {{"edges", std::move(edges)},
                        {"components", report.graph.components}};
        if (with_classification) {
            doc["classification"] = to_string(report.classification);
            doc["k_check"] = report.k_check;
        }
        if (report.full_period)
            doc["full_period"] = *report.full_period;
        out << doc.dump(2) << '\n';
        return;
    }
    case ReportFormat::csv: {
        out << "source,m,residue,verdict,observed,eventual,preperiod,period,measured\n";
        for (const auto& r : report.residues) {
            out << source_name << ',' << report.m << ',' << r.index << ','
                << to_string(r.verdict) << ',' << join(label_all(r.observed, alphabet), " ")
                << ',' << join(label_all(r.eventual, alphabet), " ") << ',';
            if (r.periodicity)
                out << r.periodicity->preperiod << ',' << r.periodicity->period;
            else
                out << ',';
            out << ',';
            for (std::size_t i = 0; i < r.measured.size(); ++i)
                out << (i ? " " : "") << r.measured[i];
            out << '\n';
        }
        return;
    }
    case ReportFormat::text: {
        out << "source " << source_name << ", scan " << report.scan_length << ", max period "
            << report.max_period << '\n';
        out << "singular letters:";
        bool any = false;
        for (Symbol s : report.singular.observed) {
            if (report.singular.is_singular(s)) {
                out << ' ' << alphabet.label(s) << " (period "
                    << *report.singular.period_by_symbol[s] << ')';
                any = true;
            }
        }
        out << (any ? "\n" : " none\n");
        if (!report.singular.rare.empty())
            out << "rare letters (absent late in the scan): "
                << join(label_all(report.singular.rare, alphabet), " ") << '\n';
        out << "cycle m = " << report.m << '\n';
        out << "mask: " << mask_prefix_str(report, alphabet) << " ...  (least period "
            << report.mask.least_period << ")\n";
        for (const auto& r : report.residues) {
            out << "residue " << r.index << ": " << to_string(r.verdict);
            if (r.constant_symbol)
                out << ' ' << alphabet.label(*r.constant_symbol);
            else
                out << " over {" << join(label_all(r.observed, alphabet), ",") << '}';
            if (r.periodicity && !r.constant_symbol)
                out << ", preperiod " << r.periodicity->preperiod << ", period "
                    << r.periodicity->period;
            if (!r.measured.empty()) {
                out << ", measured";
                for (auto v : r.measured)
                    out << ' ' << v;
            }
            out << '\n';
        }
        out << "graph edges:";
        if (report.graph.edges.empty())
            out << " none";
        for (const auto& [i, j] : report.graph.edges)
            out << " (" << i << ',' << j << ')';
        out << '\n' << "components:";
        for (const auto& comp : report.graph.components) {
            out << " {";
            for (std::size_t i = 0; i < comp.size(); ++i)
                out << (i ? "," : "") << comp[i];
            out << '}';
        }
        out << '\n';
        if (report.full_period)
            out << "full period: " << *report.full_period << '\n';
        if (with_classification)
            out << "classification: " << to_string(report.classification) << '\n';
        return;
    }
    }
}

void write_shared_window(std::ostream& out, const SharedWindowRun& run, ReportFormat format) {
    switch (format) {
    case ReportFormat::json: {
        json doc;
        doc["a"] = run.name_a;
        doc["b"] = run.name_b;
        doc["k"] = run.k;
        doc["horizon"] = run.horizon;
        doc["scan_length"] = run.scan_length;
        if (run.window) {
            doc["window"] = window_json(*run.window);
            doc["count_a"] = run.count_a;
            doc["count_b"] = run.count_b;
        } else {
            doc["window"] = nullptr;
        }
        out << doc.dump(2) << '\n';
        return;
    }
    case ReportFormat::csv: {
        out << "a,b,k,found,window,count_a,count_b\n";
        out << run.name_a << ',' << run.name_b << ',' << run.k << ','
            << (run.window ? "yes" : "no") << ',';
        if (run.window)
            out << offsets_str(*run.window) << ',' << run.count_a << ',' << run.count_b;
        else
            out << ",,";
        out << '\n';
        return;
    }
    case ReportFormat::text: {
        if (run.window)
            out << "shared window for " << run.name_a << " and " << run.name_b << " at k="
                << run.k << ": " << run.window->to_string() << " (word counts " << run.count_a
                << " and " << run.count_b << ")\n";
        else
            out << "no shared window for " << run.name_a << " and " << run.name_b << " at k="
                << run.k << " within horizon " << run.horizon << '\n';
        return;
    }
    }
}

void write_recurrence(std::ostream& out, const RecurrenceRun& run, ReportFormat format) {
    switch (format) {
    case ReportFormat::json: {
        json doc;
        doc["source"] = run.source_name;
        doc["scan_length"] = run.scan_length;
        doc["max_gap"] = json::array();
        for (std::size_t i = 0; i < run.max_gap.size(); ++i) {
            json entry = {{"l", i + 1}};
            if (run.max_gap[i])
                entry["gap"] = *run.max_gap[i];
            else
                entry["gap"] = nullptr;
            doc["max_gap"].push_back(std::move(entry));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    case ReportFormat::csv: {
        out << "l,max_gap\n";
        for (std::size_t i = 0; i < run.max_gap.size(); ++i) {
            out << (i + 1) << ',';
            if (run.max_gap[i])
                out << *run.max_gap[i];
            else
                out << "inf";
            out << '\n';
        }
        return;
    }
    case ReportFormat::text: {
        out << "source " << run.source_name << ", scan " << run.scan_length << '\n';
        for (std::size_t i = 0; i < run.max_gap.size(); ++i) {
            out << "L=" << (i + 1) << "  max gap ";
            if (run.max_gap[i])
                out << *run.max_gap[i];
            else
                out << "inf (fewer than two occurrences)";
            out << '\n';
        }
        return;
    }
    }
}

std::map<std::uint32_t, std::uint64_t> read_expect_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open expectation table: " + path);
    std::map<std::uint32_t, std::uint64_t> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::stringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#')
            continue;
        std::uint64_t value = 0;
        std::uint32_t k = 0;
        try {
            k = static_cast<std::uint32_t>(std::stoul(first));
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'k value'");
        }
        if (!(ss >> value))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'k value'");
        if (!table.emplace(k, value).second)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": duplicate entry for k=" + std::to_string(k));
    }
    return table;
}

bool apply_expectations(std::vector<ComplexityCertificate>& certs,
                        const std::map<std::uint32_t, std::uint64_t>& table,
                        std::ostream& diag) {
    bool ok = true;
    std::map<std::uint32_t, std::uint64_t> unmet = table;
    for (auto& c : certs) {
        auto it = table.find(c.k);
        if (it == table.end())
            continue;
        unmet.erase(c.k);
        if (c.value == it->second) {
            c.exact = Exactness::matches_expected;
        } else {
            diag << "k=" << c.k << ": measured " << c.value << ", expected " << it->second
                 << '\n';
            ok = false;
        }
    }
    for (const auto& [k, v] : unmet) {
        diag << "k=" << k << ": expected " << v << ", but that k was not measured\n";
        ok = false;
    }
    return ok;
}

} // namespace maxpat
