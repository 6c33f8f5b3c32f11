#include "maxpat/genspec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "maxpat/generators.hpp"
#include "maxpat/seq_files.hpp"

namespace maxpat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
    std::stringstream ss(s);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok)
        out.push_back(tok);
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-')
        throw std::invalid_argument(what + " must be a non-negative integer, got '" + s + "'");
    return v;
}

Rational64 parse_rational(const std::string& s, const std::string& what) {
    const auto slash = s.find('/');
    Rational64 r;
    if (slash == std::string::npos) {
        r.num = static_cast<long long>(parse_u64(s, what));
        r.den = 1;
    } else {
        r.num = static_cast<long long>(parse_u64(trim(s.substr(0, slash)), what));
        r.den = static_cast<long long>(parse_u64(trim(s.substr(slash + 1)), what));
    }
    return r;
}

bool numeric_label(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
}

Alphabet inferred_alphabet(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (std::all_of(labels.begin(), labels.end(), numeric_label))
        std::sort(labels.begin(), labels.end(),
                  [](const std::string& a, const std::string& b) {
                      return a.size() != b.size() ? a.size() < b.size() : a < b;
                  });
    return Alphabet::from_labels(labels);
}

using Section = std::map<std::string, std::string>;

struct SpecFile {
    Section main;
    std::map<std::string, Section> named;
};

SpecFile parse_sections(std::istream& in) {
    SpecFile file;
    Section* current = &file.main;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (t.front() == '[' && t.back() == ']') {
            const std::string name = trim(t.substr(1, t.size() - 2));
            if (name.empty())
                throw std::invalid_argument("empty section name");
            if (file.named.count(name))
                throw std::invalid_argument("duplicate section [" + name + "]");
            current = &file.named[name];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("missing key in '" + t + "'");
        if (!current->emplace(key, value).second)
            throw std::invalid_argument("duplicate key '" + key + "'");
    }
    return file;
}

class Builder {
public:
    Builder(const SpecFile& file, std::uint64_t rotation_guarantee)
        : file_(file), guarantee_(rotation_guarantee) {}

    Sequence build_main() { return build(file_.main); }

private:
    const SpecFile& file_;
    std::uint64_t guarantee_;
    std::map<std::string, Sequence> cache_;
    std::set<std::string> building_;

    Sequence resolve(const std::string& name) {
        if (auto it = cache_.find(name); it != cache_.end())
            return it->second;
        auto it = file_.named.find(name);
        if (it == file_.named.end())
            throw std::invalid_argument("reference to unknown section [" + name + "]");
        if (!building_.insert(name).second)
            throw std::invalid_argument("circular reference through [" + name + "]");
        Sequence s = build(it->second);
        building_.erase(name);
        cache_.emplace(name, s);
        return s;
    }

    static std::optional<std::string> get(const Section& sec, const std::string& key) {
        auto it = sec.find(key);
        if (it == sec.end())
            return std::nullopt;
        return it->second;
    }

    static std::string require(const Section& sec, const std::string& key,
                               const std::string& kind) {
        auto v = get(sec, key);
        if (!v)
            throw std::invalid_argument(kind + " spec needs '" + key + "'");
        return *v;
    }

    static std::optional<Alphabet> declared_alphabet(const Section& sec) {
        auto v = get(sec, "alphabet");
        if (!v)
            return std::nullopt;
        auto labels = split_on(*v, ',');
        return Alphabet::from_labels(labels);
    }

    static std::vector<Symbol> encode(const Alphabet& ab, const std::vector<std::string>& labels,
                                      const std::string& what) {
        std::vector<Symbol> out;
        out.reserve(labels.size());
        for (const auto& lab : labels) {
            auto code = ab.code_of(lab);
            if (!code)
                throw std::invalid_argument(what + ": symbol '" + lab +
                                            "' not in the alphabet");
            out.push_back(*code);
        }
        return out;
    }

    Sequence build(const Section& sec) {
        const std::string kind = require(sec, "kind", "generator");
        if (kind == "periodic")
            return build_periodic(sec);
        if (kind == "literal")
            return build_literal(sec);
        if (kind == "substitution")
            return build_substitution(sec);
        if (kind == "rotation")
            return build_rotation(sec);
        if (kind == "toeplitz")
            return build_toeplitz(sec);
        if (kind == "interleave")
            return build_interleave(sec);
        if (kind == "shifted")
            return build_shifted(sec);
        if (kind == "residue-view")
            return build_residue_view(sec);
        throw std::invalid_argument("unknown generator kind '" + kind + "'");
    }

    Sequence build_periodic(const Section& sec) {
        const auto labels = tokens_of(require(sec, "word", "periodic"));
        const Alphabet ab = declared_alphabet(sec).value_or(inferred_alphabet(labels));
        return periodic_source(ab, encode(ab, labels, "word"));
    }

    Sequence build_literal(const Section& sec) {
        const auto symbols = tokens_of(require(sec, "symbols", "literal"));
        std::vector<std::string> tail;
        if (auto v = get(sec, "tail"))
            tail = tokens_of(*v);
        auto all = symbols;
        all.insert(all.end(), tail.begin(), tail.end());
        const Alphabet ab = declared_alphabet(sec).value_or(inferred_alphabet(all));
        return literal_source(ab, encode(ab, symbols, "symbols"), encode(ab, tail, "tail"));
    }

    Sequence build_substitution(const Section& sec) {
        const auto clauses = split_on(require(sec, "rule", "substitution"), ';');
        std::vector<std::pair<std::string, std::vector<std::string>>> rules;
        for (const auto& clause : clauses) {
            const auto arrow = clause.find("->");
            if (arrow == std::string::npos)
                throw std::invalid_argument("substitution clause needs '->': '" + clause + "'");
            const auto lhs = tokens_of(clause.substr(0, arrow));
            const auto rhs = tokens_of(clause.substr(arrow + 2));
            if (lhs.size() != 1 || rhs.empty())
                throw std::invalid_argument("substitution clause must map one symbol to a "
                                            "non-empty word: '" + clause + "'");
            rules.emplace_back(lhs[0], rhs);
        }
        if (rules.empty())
            throw std::invalid_argument("substitution spec has no clauses");

        Alphabet ab = [&] {
            if (auto d = declared_alphabet(sec))
                return *d;
            std::vector<std::string> lhs_order;
            for (const auto& [l, r] : rules)
                lhs_order.push_back(l);
            return Alphabet::from_labels(lhs_order);
        }();

        SubstitutionRule rule{ab, std::vector<std::vector<Symbol>>(ab.size()), 0};
        std::vector<char> have(ab.size(), 0);
        for (const auto& [l, r] : rules) {
            const auto code = ab.code_of(l);
            if (!code)
                throw std::invalid_argument("rule symbol '" + l + "' not in the alphabet");
            if (have[*code])
                throw std::invalid_argument("two rules for symbol '" + l + "'");
            have[*code] = 1;
            rule.images[*code] = encode(ab, r, "rule image");
        }
        for (std::size_t s = 0; s < ab.size(); ++s)
            if (!have[s])
                throw std::invalid_argument("no rule for symbol '" +
                                            ab.label(static_cast<Symbol>(s)) + "'");
        rule.seed = get(sec, "seed")
                        ? encode(ab, {*get(sec, "seed")}, "seed")[0]
                        : encode(ab, {rules.front().first}, "seed")[0];
        return substitution_source(rule);
    }

    Sequence build_rotation(const Section& sec) {
        RotationCoding coding;
        for (const auto& c : split_on(require(sec, "slope_cf", "rotation"), ','))
            coding.slope_cf.push_back(parse_u64(c, "slope_cf coefficient"));
        coding.intercept = get(sec, "intercept")
                               ? parse_rational(*get(sec, "intercept"), "intercept")
                               : Rational64{0, 1};

        std::vector<std::pair<Rational64, std::string>> raw_cuts;
        for (const auto& clause : split_on(require(sec, "cuts", "rotation"), ';')) {
            const auto arrow = clause.find("->");
            if (arrow == std::string::npos)
                throw std::invalid_argument("cut clause needs '->': '" + clause + "'");
            const auto where = parse_rational(trim(clause.substr(0, arrow)), "cut point");
            const auto label = trim(clause.substr(arrow + 2));
            if (label.empty())
                throw std::invalid_argument("cut clause has no label: '" + clause + "'");
            raw_cuts.emplace_back(where, label);
        }
        coding.alphabet = [&] {
            if (auto d = declared_alphabet(sec))
                return *d;
            std::vector<std::string> labels;
            for (const auto& [w, l] : raw_cuts)
                labels.push_back(l);
            return inferred_alphabet(std::move(labels));
        }();
        for (const auto& [w, l] : raw_cuts)
            coding.cuts.emplace_back(w, encode(coding.alphabet, {l}, "cut label")[0]);
        return rotation_source(coding, guarantee_);
    }

    Sequence build_toeplitz(const Section& sec) {
        const auto entries = tokens_of(require(sec, "pattern", "toeplitz"));
        std::vector<std::string> letters;
        for (const auto& e : entries)
            if (e != "?")
                letters.push_back(e);
        const Alphabet ab = declared_alphabet(sec).value_or(inferred_alphabet(letters));
        ToeplitzPattern pat{ab, {}};
        for (const auto& e : entries) {
            if (e == "?")
                pat.pattern.emplace_back(std::nullopt);
            else
                pat.pattern.emplace_back(encode(ab, {e}, "pattern")[0]);
        }
        return toeplitz_source(pat);
    }

    Sequence build_interleave(const Section& sec) {
        InterleaveSpec spec;
        for (const auto& entry : split_on(require(sec, "residues", "interleave"), ',')) {
            const auto toks = tokens_of(entry);
            if (toks.empty())
                throw std::invalid_argument("empty residue entry");
            if (toks[0] == "ref" && toks.size() == 2) {
                spec.entries.emplace_back(resolve(toks[1]));
            } else if (toks[0] == "const" && toks.size() == 2) {
                spec.entries.emplace_back(InterleaveSpec::Constant{toks[1]});
            } else if (toks[0] == "periodic" && toks.size() >= 2) {
                spec.entries.emplace_back(InterleaveSpec::PeriodicWord{
                    std::vector<std::string>(toks.begin() + 1, toks.end())});
            } else {
                throw std::invalid_argument("residue entry must be 'ref NAME', 'const LABEL' "
                                            "or 'periodic LABELS...': '" + entry + "'");
            }
        }
        if (auto v = get(sec, "m"))
            if (parse_u64(*v, "m") != spec.entries.size())
                throw std::invalid_argument("m does not match the number of residues");
        return interleave_source(spec);
    }

    Sequence ref_base(const Section& sec, const std::string& kind) {
        const auto toks = tokens_of(require(sec, "base", kind));
        if (toks.size() != 2 || toks[0] != "ref")
            throw std::invalid_argument(kind + " base must be 'ref NAME'");
        return resolve(toks[1]);
    }

    Sequence build_shifted(const Section& sec) {
        return shift(ref_base(sec, "shifted"),
                     parse_u64(require(sec, "t", "shifted"), "t"));
    }

    Sequence build_residue_view(const Section& sec) {
        const auto m = parse_u64(require(sec, "m", "residue-view"), "m");
        const auto i = parse_u64(require(sec, "i", "residue-view"), "i");
        if (m == 0 || m > UINT32_MAX || i > UINT32_MAX)
            throw std::invalid_argument("residue-view needs 0 < m and i within range");
        return restrict_to_residue(ref_base(sec, "residue-view"),
                                   static_cast<std::uint32_t>(m),
                                   static_cast<std::uint32_t>(i));
    }
};

} // namespace

Sequence read_genspec(std::istream& in, std::uint64_t rotation_guarantee) {
    const SpecFile file = parse_sections(in);
    if (file.main.empty())
        throw std::invalid_argument("generator spec has no top-level 'kind ='");
    return Builder(file, rotation_guarantee).build_main();
}

Sequence read_genspec_file(const std::string& path, std::uint64_t rotation_guarantee) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open generator spec: " + path);
    return read_genspec(in, rotation_guarantee);
}

Sequence read_source_file(const std::string& path, std::uint64_t rotation_guarantee) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open source file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::stringstream probe(text);
    std::string line;
    bool is_genspec = false;
    while (std::getline(probe, line)) {
        const std::string t = trim(line);
        if (t.rfind("kind", 0) == 0 && t.find('=') != std::string::npos) {
            is_genspec = true;
            break;
        }
    }
    std::stringstream body(text);
    return is_genspec ? read_genspec(body, rotation_guarantee) : read_literal(body);
}

} // namespace maxpat
