#include "maxpat/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace maxpat {

std::string to_string(StructureClass c) {
    switch (c) {
    case StructureClass::strong_pattern_sturmian: return "strong-pattern-sturmian-structure";
    case StructureClass::pattern_sturmian_plus_constants: return "pattern-sturmian-plus-constants";
    case StructureClass::low_complexity: return "low-complexity-structure";
    case StructureClass::periodic: return "periodic";
    case StructureClass::unclassified: return "unclassified";
    }
    return "?";
}

std::string to_string(ResidueVerdict v) {
    switch (v) {
    case ResidueVerdict::constant: return "constant";
    case ResidueVerdict::periodic: return "periodic";
    case ResidueVerdict::eventually_periodic: return "eventually-periodic";
    case ResidueVerdict::aperiodic: return "aperiodic";
    case ResidueVerdict::undetermined: return "undetermined";
    }
    return "?";
}

namespace {

std::vector<Symbol> observed_letters(const std::vector<Symbol>& prefix, std::size_t from,
                                     std::size_t to) {
    std::vector<char> seen(256, 0);
    for (std::size_t n = from; n < to; ++n)
        seen[prefix[n]] = 1;
    std::vector<Symbol> out;
    for (std::size_t s = 0; s < 256; ++s)
        if (seen[s])
            out.push_back(static_cast<Symbol>(s));
    return out;
}

constexpr Symbol kHole = 255; // alphabet codes stop at 254

} // namespace

bool SingularReport::is_singular(Symbol s) const {
    return s < period_by_symbol.size() && period_by_symbol[s].has_value();
}

SingularReport singular_letters(const Sequence& alpha, std::uint32_t scan_length,
                                std::uint32_t max_period) {
    if (max_period == 0)
        throw std::invalid_argument("max period must be positive");
    if (scan_length < 2 * max_period)
        throw std::invalid_argument("scan too short: need at least 2 * max_period symbols");
    const auto prefix = materialize(alpha, scan_length);

    SingularReport report;
    report.scan_length = scan_length;
    report.max_period = max_period;
    report.observed = observed_letters(prefix, 0, prefix.size());
    const auto late = observed_letters(prefix, prefix.size() / 2, prefix.size());
    for (Symbol s : report.observed)
        if (!std::binary_search(late.begin(), late.end(), s))
            report.rare.push_back(s);

    report.period_by_symbol.assign(alpha.alphabet().size(), std::nullopt);
    std::vector<Symbol> indicator(prefix.size());
    for (Symbol s : report.observed) {
        for (std::size_t n = 0; n < prefix.size(); ++n)
            indicator[n] = prefix[n] == s ? 1 : 0;
        if (auto q = least_pure_period(indicator, max_period))
            report.period_by_symbol[s] = static_cast<std::uint32_t>(*q);
    }
    return report;
}

std::uint32_t decomposition_cycle(const SingularReport& report) {
    std::uint64_t m = 1;
    for (const auto& q : report.period_by_symbol) {
        if (!q)
            continue;
        m = std::lcm<std::uint64_t>(m, *q);
        if (m > report.scan_length / 2)
            throw std::invalid_argument("decomposition cycle exceeds half the scan; "
                                        "increase the scan length");
    }
    return static_cast<std::uint32_t>(m);
}

SingularMask singular_mask(const Sequence& alpha, const SingularReport& report,
                           std::uint32_t length) {
    if (length == 0)
        throw std::invalid_argument("mask length must be positive");
    const auto prefix = materialize(alpha, length);
    SingularMask out;
    out.mask.reserve(length);
    std::vector<Symbol> encoded(length);
    for (std::uint32_t n = 0; n < length; ++n) {
        if (report.is_singular(prefix[n])) {
            out.mask.emplace_back(prefix[n]);
            encoded[n] = prefix[n];
        } else {
            out.mask.emplace_back(std::nullopt);
            encoded[n] = kHole;
        }
    }
    auto q = least_pure_period(encoded, length);
    // The full prefix is trivially a "period" of itself only when repeated,
    // so a missing result means the mask never repeats within the scan.
    out.least_period = q ? static_cast<std::uint32_t>(*q) : length;
    return out;
}

std::string render_mask(const SingularMask& mask, const Alphabet& alphabet) {
    const bool tight = alphabet.single_char();
    std::string s;
    for (std::size_t i = 0; i < mask.mask.size(); ++i) {
        if (i && !tight)
            s += ' ';
        if (mask.mask[i])
            s += alphabet.label(*mask.mask[i]);
        else
            s += '?';
    }
    return s;
}

ResidueGraph residue_graph(const Sequence& alpha, std::uint32_t m, std::uint32_t scan_length) {
    if (m == 0)
        throw std::invalid_argument("residue modulus must be positive");
    if (scan_length < m)
        throw std::invalid_argument("scan too short to see every residue class");
    const auto prefix = materialize(alpha, scan_length);

    std::vector<std::vector<char>> seen(m, std::vector<char>(256, 0));
    for (std::uint32_t n = 0; n < scan_length; ++n)
        seen[n % m][prefix[n]] = 1;

    ResidueGraph g;
    g.m = m;
    std::vector<std::uint32_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&parent](std::uint32_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = i + 1; j < m; ++j) {
            bool meet = false;
            for (std::size_t s = 0; s < 256 && !meet; ++s)
                meet = seen[i][s] && seen[j][s];
            if (meet) {
                g.edges.emplace_back(i, j);
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<std::uint32_t>> buckets(m);
    for (std::uint32_t v = 0; v < m; ++v)
        buckets[find(v)].push_back(v);
    for (auto& b : buckets)
        if (!b.empty())
            g.components.push_back(std::move(b));
    std::sort(g.components.begin(), g.components.end());
    return g;
}

std::optional<ProjectionPeriodicity> periodic_by_projection(const Sequence& alpha,
                                                            std::uint32_t scan_length,
                                                            std::uint32_t max_period) {
    if (max_period == 0 || scan_length < 2 * max_period)
        throw std::invalid_argument("scan too short: need at least 2 * max_period symbols");
    const auto prefix = materialize(alpha, scan_length);
    const auto letters = observed_letters(prefix, 0, prefix.size());
    if (letters.size() > 16)
        throw std::invalid_argument("projection search supports at most 16 observed letters");
    if (letters.size() < 2)
        return std::nullopt; // no proper non-empty subset distinguishes anything

    // Proper non-empty subsets by size, then lexicographically.
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 1; mask + 1 < (1u << letters.size()); ++mask)
        masks.push_back(mask);
    auto subset_of = [&letters](std::uint32_t mask) {
        std::vector<Symbol> s;
        for (std::size_t b = 0; b < letters.size(); ++b)
            if (mask & (1u << b))
                s.push_back(letters[b]);
        return s;
    };
    std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto sa = subset_of(a), sb = subset_of(b);
        if (sa.size() != sb.size())
            return sa.size() < sb.size();
        return sa < sb;
    });

    std::vector<char> in_subset(256, 0);
    std::vector<Symbol> indicator(prefix.size());
    for (std::uint32_t mask : masks) {
        const auto subset = subset_of(mask);
        std::fill(in_subset.begin(), in_subset.end(), 0);
        for (Symbol s : subset)
            in_subset[s] = 1;
        for (std::size_t n = 0; n < prefix.size(); ++n)
            indicator[n] = in_subset[prefix[n]];
        if (auto cert = detect_least_period(indicator, max_period))
            return ProjectionPeriodicity{subset, cert->preperiod, cert->period};
    }
    return std::nullopt;
}

namespace {

ResidueSummary summarize_residue(const Sequence& alpha, std::uint32_t m, std::uint32_t i,
                                 std::uint32_t scan_length, std::uint32_t max_period) {
    ResidueSummary r;
    r.index = i;
    const std::uint32_t scan_res = scan_length / m;
    const auto residue = restrict_to_residue(alpha, m, i);
    const auto prefix = materialize(residue, scan_res);
    r.observed = observed_letters(prefix, 0, prefix.size());
    r.eventual = observed_letters(prefix, prefix.size() / 2, prefix.size());

    const std::uint32_t maxp = std::min<std::uint32_t>(max_period, scan_res / 2);
    if (maxp == 0) {
        r.verdict = ResidueVerdict::undetermined;
        return r;
    }
    if (auto cert = detect_least_period(prefix, maxp)) {
        r.periodicity = cert;
        if (cert->preperiod == 0 && r.observed.size() == 1) {
            r.verdict = ResidueVerdict::constant;
            r.constant_symbol = r.observed[0];
        } else if (cert->preperiod == 0) {
            r.verdict = ResidueVerdict::periodic;
        } else {
            r.verdict = ResidueVerdict::eventually_periodic;
        }
    } else {
        r.verdict = ResidueVerdict::undetermined; // upgraded by the complexity cross-check
    }
    return r;
}

// Aperiodicity and pattern Sturmian checks need measured complexity.
void cross_check_residue(ResidueSummary& r, const Sequence& alpha, std::uint32_t m,
                         std::uint32_t scan_length, const SearchConfig& config,
                         std::uint32_t k_check) {
    if (r.verdict != ResidueVerdict::undetermined)
        return;
    const std::uint32_t scan_res = scan_length / m;
    SearchConfig rc = config;
    rc.scan_length = scan_res;
    rc.horizon = std::min(config.horizon, scan_res > 0 ? scan_res - 1 : 0);
    if (rc.horizon < k_check)
        return; // cannot certify at this scale
    const auto residue = restrict_to_residue(alpha, m, r.index);
    bool aperiodic = true, sturmian = true;
    for (std::uint32_t k = 1; k <= k_check; ++k) {
        auto cert = pattern_complexity(residue, k, rc, Strategy::hybrid);
        r.measured.push_back(cert.value);
        aperiodic = aperiodic && cert.value >= 2 * k;
        sturmian = sturmian && cert.value == 2 * k;
    }
    if (aperiodic) {
        r.verdict = ResidueVerdict::aperiodic;
        r.pattern_sturmian = sturmian;
    }
}

StructureClass classify_from(const DecompositionReport& rep) {
    std::size_t aperiodic = 0, undetermined = 0;
    const ResidueSummary* ap = nullptr;
    for (const auto& r : rep.residues) {
        if (r.verdict == ResidueVerdict::aperiodic) {
            ++aperiodic;
            ap = &r;
        } else if (r.verdict == ResidueVerdict::undetermined) {
            ++undetermined;
        }
    }
    if (undetermined > 0)
        return StructureClass::unclassified;
    if (aperiodic == 0)
        return StructureClass::periodic;
    if (aperiodic != 1)
        return StructureClass::unclassified;

    bool others_constant = true;
    for (const auto& r : rep.residues)
        if (&r != ap && r.verdict != ResidueVerdict::constant)
            others_constant = false;

    if (ap->observed.size() == 2 && ap->pattern_sturmian && others_constant) {
        // Distinct constants cover the other letters exactly once when
        // m - 1 equals ell - 2.
        return rep.m == rep.observed_letters - 1
                   ? StructureClass::strong_pattern_sturmian
                   : StructureClass::pattern_sturmian_plus_constants;
    }

    if (rep.m >= 2 && ap->eventual.size() == 2) {
        // Every other residue must be eventually constant or eventually
        // periodic over the two letters of the aperiodic residue.
        bool ok = true;
        for (const auto& r : rep.residues) {
            if (&r == ap)
                continue;
            const bool eventually_constant = r.eventual.size() == 1;
            const bool over_ab = std::includes(ap->eventual.begin(), ap->eventual.end(),
                                               r.eventual.begin(), r.eventual.end());
            if (!eventually_constant && !over_ab)
                ok = false;
        }
        if (ok)
            return StructureClass::low_complexity;
    }
    return StructureClass::unclassified;
}

DecompositionReport build_report(const Sequence& alpha, std::uint32_t scan_length,
                                 std::uint32_t max_period) {
    DecompositionReport rep;
    rep.scan_length = scan_length;
    rep.max_period = max_period;
    rep.singular = singular_letters(alpha, scan_length, max_period);
    rep.m = decomposition_cycle(rep.singular);
    rep.mask = singular_mask(alpha, rep.singular, scan_length);
    rep.observed_letters = rep.singular.observed.size();
    for (std::uint32_t i = 0; i < rep.m; ++i)
        rep.residues.push_back(summarize_residue(alpha, rep.m, i, scan_length, max_period));
    rep.graph = residue_graph(alpha, rep.m, scan_length);

    bool all_pure = !rep.residues.empty();
    std::uint64_t residue_lcm = 1;
    for (const auto& r : rep.residues) {
        const bool pure = (r.verdict == ResidueVerdict::constant ||
                           r.verdict == ResidueVerdict::periodic) &&
                          r.periodicity;
        if (!pure || (residue_lcm = std::lcm(residue_lcm, r.periodicity->period)) > scan_length) {
            all_pure = false;
            break;
        }
    }
    if (all_pure) {
        const std::uint64_t p0 = std::uint64_t{rep.m} * residue_lcm;
        if (2 * p0 <= scan_length) {
            const auto prefix = materialize(alpha, scan_length);
            for (std::uint64_t d = 1; d <= p0 && !rep.full_period; ++d) {
                if (p0 % d)
                    continue;
                bool ok = true;
                for (std::uint64_t n = 0; ok && n + d < prefix.size(); ++n)
                    ok = prefix[n] == prefix[n + d];
                if (ok)
                    rep.full_period = d;
            }
        }
    }
    return rep;
}

} // namespace

DecompositionReport decompose_structure(const Sequence& alpha, std::uint32_t scan_length,
                                        std::uint32_t max_period) {
    DecompositionReport rep = build_report(alpha, scan_length, max_period);
    rep.classification = StructureClass::unclassified;
    rep.k_check = 0; // facts only, no complexity searches
    return rep;
}

DecompositionReport classify_structure(const Sequence& alpha, const SearchConfig& config,
                                       std::uint32_t k_check, std::uint32_t max_period) {
    DecompositionReport rep = build_report(alpha, config.scan_length, max_period);
    rep.horizon = config.horizon;
    rep.k_check = k_check;
    for (auto& r : rep.residues)
        cross_check_residue(r, alpha, rep.m, config.scan_length, config, k_check);
    rep.classification = classify_from(rep);
    return rep;
}

std::optional<std::uint64_t> structural_upper_bound(const DecompositionReport& report,
                                                    std::uint32_t k) {
    if (k == 0)
        throw std::invalid_argument("window size k must be positive");
    switch (report.classification) {
    case StructureClass::strong_pattern_sturmian:
    case StructureClass::pattern_sturmian_plus_constants: {
        // Window offsets meeting >= 2 residue classes: words split into
        // per-class sets of size <= 2 * (offsets hitting the moving
        // residue) plus one constant word per other class, at most
        // 2k + m - 2 in total. Offsets in a single class: 2k words through
        // the moving residue plus the ell - 2 distinct constant words.
        const std::uint64_t c = std::max<std::uint64_t>(report.observed_letters, report.m);
        return 2ull * k + c - 2;
    }
    case StructureClass::periodic:
        if (report.full_period)
            return report.full_period;
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

std::vector<std::optional<std::uint32_t>> uniform_recurrence_profile(const Sequence& alpha,
                                                                     std::uint32_t l_max,
                                                                     std::uint32_t scan_length) {
    if (l_max == 0)
        throw std::invalid_argument("prefix length bound must be positive");
    if (scan_length < 100ull * l_max)
        throw std::invalid_argument("scan too short: need at least 100 * l_max symbols");
    const auto prefix = materialize(alpha, scan_length);

    // match[n] = length of the longest common prefix of alpha and its shift
    // by n, capped at l_max (Z-array with a cap).
    std::vector<std::uint32_t> match(scan_length, 0);
    match[0] = l_max;
    for (std::uint32_t n = 1; n < scan_length; ++n) {
        std::uint32_t len = 0;
        while (len < l_max && n + len < scan_length && prefix[len] == prefix[n + len])
            ++len;
        match[n] = len;
    }

    std::vector<std::optional<std::uint32_t>> out(l_max);
    for (std::uint32_t L = 1; L <= l_max; ++L) {
        std::optional<std::uint32_t> last;
        std::uint32_t max_gap = 0, occurrences = 0;
        for (std::uint32_t n = 0; n + L <= scan_length; ++n) {
            if (match[n] >= L) {
                ++occurrences;
                if (last)
                    max_gap = std::max(max_gap, n - *last);
                last = n;
            }
        }
        if (occurrences >= 2)
            out[L - 1] = max_gap;
    }
    return out;
}

} // namespace maxpat
