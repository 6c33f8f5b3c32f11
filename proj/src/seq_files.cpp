#include "maxpat/seq_files.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "maxpat/generators.hpp"

namespace maxpat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool numeric_label(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::string> parse_alphabet_header(const std::string& line) {
    std::vector<std::string> labels;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("empty label in alphabet header");
        labels.push_back(item);
    }
    if (labels.empty())
        throw std::invalid_argument("alphabet header lists no labels");
    return labels;
}

} // namespace

Sequence read_literal(std::istream& in) {
    std::vector<std::string> header;
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            if (t.rfind("#alphabet:", 0) == 0) {
                if (!header.empty())
                    throw std::invalid_argument("duplicate alphabet header");
                header = parse_alphabet_header(t.substr(10));
            }
            continue;
        }
        std::stringstream ss(t);
        std::string tok;
        while (ss >> tok)
            tokens.push_back(tok);
    }
    if (tokens.empty())
        throw std::invalid_argument("literal holds no symbols");

    // One token means one line of single-character symbols; several tokens
    // mean one symbol per token.
    std::vector<std::string> labels;
    if (tokens.size() == 1 && tokens[0].size() > 1) {
        for (char c : tokens[0])
            labels.emplace_back(1, c);
    } else {
        labels = std::move(tokens);
    }

    Alphabet alphabet = [&] {
        if (!header.empty())
            return Alphabet::from_labels(header);
        std::vector<std::string> distinct = labels;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (std::all_of(distinct.begin(), distinct.end(), numeric_label))
            std::sort(distinct.begin(), distinct.end(),
                      [](const std::string& a, const std::string& b) {
                          return a.size() != b.size() ? a.size() < b.size() : a < b;
                      });
        return Alphabet::from_labels(distinct);
    }();

    std::vector<Symbol> prefix;
    prefix.reserve(labels.size());
    for (const auto& lab : labels) {
        auto code = alphabet.code_of(lab);
        if (!code)
            throw std::invalid_argument("symbol '" + lab + "' not in the declared alphabet");
        prefix.push_back(*code);
    }
    return literal_source(alphabet, std::move(prefix), {});
}

Sequence read_literal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open sequence file: " + path);
    return read_literal(in);
}

std::uint64_t literal_length(const Sequence& alpha) {
    return alpha.impl()->stored_length();
}

void write_literal(std::ostream& out, const Sequence& alpha, std::uint64_t length) {
    const Alphabet& ab = alpha.alphabet();
    out << "#alphabet: ";
    for (std::size_t s = 0; s < ab.size(); ++s)
        out << (s ? "," : "") << ab.label(static_cast<Symbol>(s));
    out << '\n';
    const bool tight = ab.single_char();
    for (std::uint64_t n = 0; n < length; ++n) {
        if (n && !tight)
            out << ' ';
        out << ab.label(alpha.at(n));
    }
    out << '\n';
}

} // namespace maxpat
