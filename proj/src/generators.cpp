#include "maxpat/generators.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace maxpat {

namespace {

using BigRat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------- periodic

class PeriodicSource final : public SequenceSource {
public:
    PeriodicSource(Alphabet alphabet, std::vector<Symbol> word)
        : SequenceSource(std::move(alphabet), "periodic"), word_(std::move(word)) {}
    Symbol at(std::uint64_t n) const override { return word_[n % word_.size()]; }

private:
    std::vector<Symbol> word_;
};

class LiteralSource final : public SequenceSource {
public:
    LiteralSource(Alphabet alphabet, std::vector<Symbol> prefix, std::vector<Symbol> tail)
        : SequenceSource(std::move(alphabet), "literal"),
          prefix_(std::move(prefix)),
          tail_(std::move(tail)) {}

    Symbol at(std::uint64_t n) const override {
        if (n < prefix_.size())
            return prefix_[n];
        if (tail_.empty())
            throw std::out_of_range("literal source has only " +
                                    std::to_string(prefix_.size()) +
                                    " symbols; index " + std::to_string(n) +
                                    " requested (shorten the scan or add a tail)");
        return tail_[(n - prefix_.size()) % tail_.size()];
    }

    std::uint64_t stored_length() const override {
        return tail_.empty() ? prefix_.size() : 0;
    }

private:
    std::vector<Symbol> prefix_;
    std::vector<Symbol> tail_;
};

void check_symbols(const Alphabet& alphabet, const std::vector<Symbol>& word,
                   const char* what) {
    for (Symbol s : word)
        if (s >= alphabet.size())
            throw std::invalid_argument(std::string(what) + " uses symbol code " +
                                        std::to_string(s) + " outside the alphabet");
}

std::vector<Symbol> codes_of_chars(const std::string& word, const Alphabet& alphabet) {
    std::vector<Symbol> out;
    out.reserve(word.size());
    for (char c : word) {
        auto code = alphabet.code_of(std::string_view(&c, 1));
        if (!code)
            throw std::invalid_argument(std::string("symbol '") + c + "' not in alphabet");
        out.push_back(*code);
    }
    return out;
}

// ------------------------------------------------------------ substitution

class SubstitutionSource final : public SequenceSource {
public:
    explicit SubstitutionSource(SubstitutionRule rule)
        : SequenceSource(rule.alphabet, "substitution"), rule_(std::move(rule)) {
        // The fixed point satisfies x = rule(x[0]) rule(x[1]) ..., so the
        // buffer can be grown by expanding its own symbols in order.
        buffer_ = rule_.images[rule_.seed];
        next_ = 1;
    }

    Symbol at(std::uint64_t n) const override {
        {
            std::shared_lock lock(mutex_);
            if (n < buffer_.size())
                return buffer_[n];
        }
        std::unique_lock lock(mutex_);
        while (buffer_.size() <= n) {
            const auto& img = rule_.images[buffer_[next_++]];
            buffer_.insert(buffer_.end(), img.begin(), img.end());
        }
        return buffer_[n];
    }

private:
    SubstitutionRule rule_;
    mutable std::shared_mutex mutex_;
    mutable std::vector<Symbol> buffer_;
    mutable std::size_t next_;
};

// ---------------------------------------------------------------- rotation

BigRat to_rat(const Rational64& r, const char* what) {
    if (r.den <= 0)
        throw std::invalid_argument(std::string(what) + ": denominator must be positive");
    if (r.num < 0)
        throw std::invalid_argument(std::string(what) + ": value must be non-negative");
    return BigRat(BigInt(r.num), BigInt(r.den));
}

BigRat frac(const BigRat& x) {
    // x >= 0 everywhere below.
    BigInt whole = numerator(x) / denominator(x);
    return x - BigRat(whole);
}

class RotationSource final : public SequenceSource {
public:
    RotationSource(const RotationCoding& coding, std::uint64_t length_guarantee)
        : SequenceSource(coding.alphabet, "rotation") {
        if (coding.slope_cf.size() < 2)
            throw std::invalid_argument(
                "rotation slope needs at least two continued fraction coefficients");
        for (std::size_t i = 1; i < coding.slope_cf.size(); ++i)
            if (coding.slope_cf[i] == 0)
                throw std::invalid_argument("continued fraction coefficients after the "
                                            "first must be positive");
        if (coding.cuts.empty())
            throw std::invalid_argument("rotation partition needs at least one cut");

        // Convergents pD/qD and pD'/qD' of the recorded coefficients. Every
        // irrational whose expansion starts with them lies strictly between
        // pD/qD and the mediant (pD+pD')/(qD+qD'), which brackets the slope.
        BigInt p_prev = 1, q_prev = 0, p = coding.slope_cf[0], q = 1;
        for (std::size_t i = 1; i < coding.slope_cf.size(); ++i) {
            BigInt a = coding.slope_cf[i];
            BigInt p_next = a * p + p_prev;
            BigInt q_next = a * q + q_prev;
            p_prev = p; q_prev = q;
            p = p_next; q = q_next;
        }
        slope_ = BigRat(p, q);
        BigRat mediant((p + p_prev), (q + q_prev));
        BigRat lo = std::min(slope_, mediant);
        BigRat hi = std::max(slope_, mediant);

        intercept_ = frac(to_rat(coding.intercept, "intercept"));
        for (const auto& [cut, label] : coding.cuts) {
            cuts_.push_back(to_rat(cut, "cut"));
            labels_.push_back(label);
            if (label >= alphabet().size())
                throw std::invalid_argument("cut label outside the alphabet");
        }
        if (cuts_.front() != 0)
            throw std::invalid_argument("first cut must be 0");
        for (std::size_t i = 0; i < cuts_.size(); ++i) {
            if (cuts_[i] >= 1)
                throw std::invalid_argument("cuts must lie in [0, 1)");
            if (i && cuts_[i] <= cuts_[i - 1])
                throw std::invalid_argument("cuts must be strictly increasing");
        }

        certify(lo, hi, length_guarantee);
    }

    Symbol at(std::uint64_t n) const override {
        if (n < certified_.size())
            return certified_[n];
        // Outside the certified range: honest evaluation of the convergent
        // rotation, with no claim about the true irrational one.
        return arc_label(frac(intercept_ + BigRat(n) * slope_));
    }

private:
    // Label of the half-open arc [cut_i, cut_{i+1}) containing x.
    Symbol arc_label(const BigRat& x) const {
        std::size_t i = cuts_.size() - 1;
        while (cuts_[i] > x)
            --i;
        return labels_[i];
    }

    // For every n < length_guarantee the true point lies strictly inside
    // (A, A + n*(hi-lo)) on the circle, where A = intercept + n*lo mod 1.
    // The symbol is certified when every partition arc meeting that open
    // interval carries one and the same label.
    void certify(const BigRat& lo, const BigRat& hi, std::uint64_t length_guarantee) {
        const BigRat width = hi - lo;
        certified_.reserve(length_guarantee);
        for (std::uint64_t n = 0; n < length_guarantee; ++n) {
            BigRat w = BigRat(n) * width;
            if (w >= 1)
                throw PrecisionError("rotation precision exhausted at index " +
                                     std::to_string(n) +
                                     ": error interval wraps the circle; deepen slope_cf");
            BigRat a = frac(intercept_ + BigRat(n) * lo);
            std::optional<Symbol> label;
            if (w == 0) {
                label = arc_label(a);
            } else {
                label = common_label(a, a + w);
            }
            if (!label)
                throw PrecisionError("rotation precision exhausted at index " +
                                     std::to_string(n) +
                                     ": error interval straddles a cut; deepen slope_cf");
            certified_.push_back(*label);
        }
    }

    // Common label of the open circle interval (a, b), b - a < 1, if any.
    std::optional<Symbol> common_label(const BigRat& a, const BigRat& b) const {
        std::optional<Symbol> found;
        auto visit = [&](Symbol s) {
            if (found && *found != s)
                return false;
            found = s;
            return true;
        };
        // Walk the arcs intersecting (a, b); start with the arc holding a
        // (open interval, so the arc to the right of a when a is a cut).
        std::size_t i = cuts_.size() - 1;
        while (cuts_[i] > a)
            --i;
        BigRat offset = 0; // unwrap by whole turns
        while (true) {
            if (!visit(labels_[i]))
                return std::nullopt;
            // right end of arc i in unwrapped coordinates
            BigRat end = (i + 1 < cuts_.size()) ? BigRat(offset + cuts_[i + 1])
                                                : BigRat(offset + 1);
            if (end >= b)
                return found;
            if (i + 1 < cuts_.size()) {
                ++i;
            } else {
                i = 0;
                offset += 1;
            }
        }
    }

    BigRat slope_;
    BigRat intercept_;
    std::vector<BigRat> cuts_;
    std::vector<Symbol> labels_;
    std::vector<Symbol> certified_;
};

// ---------------------------------------------------------------- toeplitz

class ToeplitzSource final : public SequenceSource {
public:
    explicit ToeplitzSource(ToeplitzPattern pattern)
        : SequenceSource(pattern.alphabet, "toeplitz") {
        const auto& p = pattern.pattern;
        if (p.size() < 2)
            throw std::invalid_argument("toeplitz pattern needs length >= 2");
        std::size_t holes = 0;
        hole_rank_.assign(p.size(), 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            hole_rank_[i] = holes;
            if (p[i]) {
                if (*p[i] >= alphabet().size())
                    throw std::invalid_argument("toeplitz pattern symbol outside alphabet");
                fixed_.push_back(*p[i]);
            } else {
                ++holes;
                fixed_.push_back(0);
            }
        }
        is_hole_.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            is_hole_[i] = !p[i].has_value();
        holes_ = holes;
        if (holes_ == 0)
            throw std::invalid_argument("toeplitz pattern needs at least one hole");
        if (holes_ == p.size())
            throw std::invalid_argument("toeplitz pattern of holes only never fills");
        if (is_hole_[0])
            throw std::invalid_argument("toeplitz pattern must not start with a hole: "
                                        "index 0 would never be filled");
    }

    // The hole subsequence of the result equals the result itself, so a
    // hole at position n defers to the sequence at the hole's rank. The
    // rank is strictly smaller than n (the pattern starts with a symbol),
    // hence the loop terminates in O(log n) steps.
    Symbol at(std::uint64_t n) const override {
        const std::uint64_t T = is_hole_.size();
        while (is_hole_[n % T])
            n = (n / T) * holes_ + hole_rank_[n % T];
        return fixed_[n % T];
    }

private:
    std::vector<Symbol> fixed_;
    std::vector<char> is_hole_;
    std::vector<std::size_t> hole_rank_;
    std::size_t holes_ = 0;
};

// -------------------------------------------------------------- interleave

class InterleaveSource final : public SequenceSource {
public:
    InterleaveSource(Alphabet alphabet, std::vector<std::vector<Symbol>> residue_words,
                     std::vector<std::optional<Sequence>> residue_sources,
                     std::vector<std::vector<Symbol>> remaps)
        : SequenceSource(std::move(alphabet), "interleave"),
          words_(std::move(residue_words)),
          sources_(std::move(residue_sources)),
          remaps_(std::move(remaps)) {}

    Symbol at(std::uint64_t n) const override {
        const std::uint64_t m = words_.size();
        const std::uint64_t i = n % m, q = n / m;
        if (sources_[i])
            return remaps_[i][sources_[i]->at(q)];
        const auto& w = words_[i];
        return w[q % w.size()];
    }

private:
    std::vector<std::vector<Symbol>> words_;            // codes in the union alphabet
    std::vector<std::optional<Sequence>> sources_;
    std::vector<std::vector<Symbol>> remaps_;           // entry alphabet -> union codes
};

} // namespace

Sequence periodic_source(const Alphabet& alphabet, std::vector<Symbol> word) {
    if (word.empty())
        throw std::invalid_argument("periodic word must be non-empty");
    check_symbols(alphabet, word, "periodic word");
    return Sequence(std::make_shared<PeriodicSource>(alphabet, std::move(word)));
}

Sequence periodic_source(const std::string& word) {
    std::vector<std::string> labels;
    for (char c : word) {
        std::string l(1, c);
        if (std::find(labels.begin(), labels.end(), l) == labels.end())
            labels.push_back(l);
    }
    std::sort(labels.begin(), labels.end());
    Alphabet alphabet = Alphabet::from_labels(labels);
    return periodic_source(alphabet, codes_of_chars(word, alphabet));
}

Sequence literal_source(const Alphabet& alphabet, std::vector<Symbol> prefix,
                        std::vector<Symbol> tail) {
    if (prefix.empty() && tail.empty())
        throw std::invalid_argument("literal source must hold at least one symbol");
    check_symbols(alphabet, prefix, "literal prefix");
    check_symbols(alphabet, tail, "literal tail");
    return Sequence(
        std::make_shared<LiteralSource>(alphabet, std::move(prefix), std::move(tail)));
}

Sequence substitution_source(const SubstitutionRule& rule) {
    if (rule.images.size() != rule.alphabet.size())
        throw std::invalid_argument("substitution rule needs one image per symbol");
    if (rule.seed >= rule.alphabet.size())
        throw std::invalid_argument("substitution seed outside the alphabet");
    for (const auto& img : rule.images) {
        if (img.empty())
            throw std::invalid_argument("substitution images must be non-empty");
        check_symbols(rule.alphabet, img, "substitution image");
    }
    const auto& seed_img = rule.images[rule.seed];
    if (seed_img.size() < 2 || seed_img[0] != rule.seed)
        throw std::invalid_argument("rule(seed) must begin with the seed and have "
                                    "length >= 2 for the fixed point to exist");
    return Sequence(std::make_shared<SubstitutionSource>(rule));
}

Sequence fibonacci_word() {
    SubstitutionRule rule{Alphabet(2), {{0, 1}, {0}}, 0};
    return substitution_source(rule);
}

Sequence thue_morse_word() {
    SubstitutionRule rule{Alphabet(2), {{0, 1}, {1, 0}}, 0};
    return substitution_source(rule);
}

Sequence rotation_source(const RotationCoding& coding, std::uint64_t length_guarantee) {
    return Sequence(std::make_shared<RotationSource>(coding, length_guarantee));
}

Sequence toeplitz_source(const ToeplitzPattern& pattern) {
    return Sequence(std::make_shared<ToeplitzSource>(pattern));
}

Sequence toeplitz_source(const std::string& pattern) {
    std::vector<std::string> labels;
    for (char c : pattern) {
        if (c == '?')
            continue;
        std::string l(1, c);
        if (std::find(labels.begin(), labels.end(), l) == labels.end())
            labels.push_back(l);
    }
    std::sort(labels.begin(), labels.end());
    if (labels.empty())
        throw std::invalid_argument("toeplitz pattern of holes only never fills");
    ToeplitzPattern tp{Alphabet::from_labels(labels), {}};
    for (char c : pattern) {
        if (c == '?') {
            tp.pattern.push_back(std::nullopt);
        } else {
            tp.pattern.push_back(*tp.alphabet.code_of(std::string_view(&c, 1)));
        }
    }
    return toeplitz_source(tp);
}

Sequence interleave_source(const InterleaveSpec& spec) {
    if (spec.entries.empty())
        throw std::invalid_argument("interleave needs at least one residue entry");

    // Union alphabet, ordered by first appearance across entries.
    std::vector<std::string> labels;
    auto intern = [&labels](const std::string& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) {
            labels.push_back(l);
            return static_cast<Symbol>(labels.size() - 1);
        }
        return static_cast<Symbol>(it - labels.begin());
    };
    for (const auto& e : spec.entries) {
        if (const auto* c = std::get_if<InterleaveSpec::Constant>(&e)) {
            intern(c->label);
        } else if (const auto* p = std::get_if<InterleaveSpec::PeriodicWord>(&e)) {
            if (p->labels.empty())
                throw std::invalid_argument("interleave periodic entry must be non-empty");
            for (const auto& l : p->labels)
                intern(l);
        } else {
            const auto& s = std::get<Sequence>(e);
            for (std::size_t i = 0; i < s.alphabet().size(); ++i)
                intern(s.alphabet().label(static_cast<Symbol>(i)));
        }
    }
    Alphabet alphabet = Alphabet::from_labels(labels);

    std::vector<std::vector<Symbol>> words(spec.entries.size());
    std::vector<std::optional<Sequence>> sources(spec.entries.size());
    std::vector<std::vector<Symbol>> remaps(spec.entries.size());
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        const auto& e = spec.entries[i];
        if (const auto* c = std::get_if<InterleaveSpec::Constant>(&e)) {
            words[i] = {*alphabet.code_of(c->label)};
        } else if (const auto* p = std::get_if<InterleaveSpec::PeriodicWord>(&e)) {
            for (const auto& l : p->labels)
                words[i].push_back(*alphabet.code_of(l));
        } else {
            const auto& s = std::get<Sequence>(e);
            sources[i] = s;
            for (std::size_t c = 0; c < s.alphabet().size(); ++c)
                remaps[i].push_back(*alphabet.code_of(s.alphabet().label(static_cast<Symbol>(c))));
        }
    }
    return Sequence(std::make_shared<InterleaveSource>(std::move(alphabet), std::move(words),
                                                       std::move(sources), std::move(remaps)));
}

namespace {

Sequence two_letter_ingredient(std::optional<Sequence> x) {
    Sequence seq = x ? std::move(*x) : fibonacci_word();
    if (seq.alphabet().size() != 2)
        throw std::invalid_argument("ingredient sequence must use a two-letter alphabet");
    return seq;
}

} // namespace

Sequence strong_sturmian_source(std::uint32_t ell, std::optional<Sequence> x) {
    if (ell < 3)
        throw std::invalid_argument("strong family needs at least three letters");
    if (ell > 200)
        throw std::invalid_argument("strong family capped at 200 letters");
    InterleaveSpec spec;
    spec.entries.push_back(two_letter_ingredient(std::move(x)));
    for (std::uint32_t j = 2; j < ell; ++j)
        spec.entries.push_back(InterleaveSpec::Constant{std::to_string(j)});
    return interleave_source(spec);
}

Sequence surplus_constants_source(std::optional<Sequence> x) {
    InterleaveSpec spec;
    spec.entries.push_back(two_letter_ingredient(std::move(x)));
    spec.entries.push_back(InterleaveSpec::Constant{"2"});
    spec.entries.push_back(InterleaveSpec::Constant{"3"});
    spec.entries.push_back(InterleaveSpec::Constant{"3"});
    spec.entries.push_back(InterleaveSpec::Constant{"2"});
    return interleave_source(spec);
}

Sequence twin_sturmian_source(std::optional<Sequence> x) {
    Sequence ingredient = two_letter_ingredient(std::move(x));
    InterleaveSpec spec;
    spec.entries.push_back(ingredient);
    spec.entries.push_back(ingredient);
    spec.entries.push_back(InterleaveSpec::Constant{"2"});
    return interleave_source(spec);
}

} // namespace maxpat
