#include "maxpat/complexity.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxpat {

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::exhaustive: return "exhaustive";
    case Strategy::greedy: return "greedy";
    case Strategy::hybrid: return "hybrid";
    }
    return "?";
}

std::string to_string(Exactness e) {
    switch (e) {
    case Exactness::lower_bound_only: return "lower-bound-only";
    case Exactness::matches_structural_upper_bound: return "matches-structural-upper-bound";
    case Exactness::matches_expected: return "matches-expected";
    }
    return "?";
}

namespace {

std::vector<std::uint32_t> candidate_offsets(const SearchConfig& config) {
    std::vector<std::uint32_t> cand;
    cand.reserve(config.horizon);
    for (std::uint32_t h = 1; h <= config.horizon; ++h) {
        if (config.congruence) {
            const auto& f = *config.congruence;
            if (f.modulus == 0)
                throw std::invalid_argument("congruence filter modulus must be positive");
            if (std::find(f.residues.begin(), f.residues.end(), h % f.modulus) ==
                f.residues.end())
                continue;
        }
        cand.push_back(h);
    }
    return cand;
}

void validate_config(std::uint32_t k, const SearchConfig& config, std::size_t candidates) {
    if (k == 0)
        throw std::invalid_argument("window size k must be positive");
    if (config.horizon + 1 < k || candidates + 1 < k)
        throw std::invalid_argument("horizon too small: need at least k-1 candidate "
                                    "offsets for a k-sized window");
    if (config.scan_length < config.horizon + 1)
        throw std::invalid_argument("scan length must be at least horizon + 1");
}

// Cheap admissible upper bound for any extension of a partial window with
// `count` words by `remaining` more offsets.
std::uint64_t growth_bound(std::uint64_t count, std::uint32_t remaining, std::size_t ell,
                           std::uint64_t cap) {
    std::uint64_t b = count;
    for (std::uint32_t r = 0; r < remaining && b < cap; ++r)
        b *= ell;
    return std::min(b, cap);
}

struct SearchOutcome {
    std::uint64_t value = 0;
    std::vector<std::uint32_t> witness; // offsets after 0
    bool unstable = false;

    // Total order (higher count first, then lexicographically smaller
    // witness) makes merges independent of evaluation order.
    bool better_than(const SearchOutcome& other) const {
        if (value != other.value)
            return value > other.value;
        if (other.witness.empty())
            return false;
        return !witness.empty() && witness < other.witness;
    }
};

struct Dfs {
    const WindowKernel& kern;
    const std::vector<std::uint32_t>& cand;
    std::uint32_t k;
    std::uint64_t seed; // static prune threshold: subtrees that cannot reach it are skipped
    SearchOutcome best;
    std::vector<WindowKernel::Eval> levels;
    std::vector<std::uint32_t> scratch;
    std::vector<std::uint32_t> path;

    Dfs(const WindowKernel& kernel, const std::vector<std::uint32_t>& candidates,
        std::uint32_t k_, std::uint64_t seed_)
        : kern(kernel), cand(candidates), k(k_), seed(seed_), levels(k_), path(k_ ? k_ - 1 : 0) {
        levels[0] = kern.root();
    }

    void leaf(const WindowKernel::Eval& ev) {
        if (ev.last_new > kern.scan_length() / 2)
            best.unstable = true;
        if (ev.count > best.value ||
            (ev.count == best.value && (best.witness.empty() || path < best.witness))) {
            best.value = ev.count;
            best.witness = path;
        }
    }

    // Chooses offsets cand[from..] for levels d+1..k-1.
    void run(std::uint32_t d, std::uint32_t from) {
        const std::uint32_t need = (k - 1) - d;
        for (std::uint32_t i = from; i + need <= cand.size(); ++i) {
            kern.extend_into(levels[d], cand[i], levels[d + 1], scratch);
            path[d] = cand[i];
            if (d + 2 == k) {
                leaf(levels[d + 1]);
            } else if (growth_bound(levels[d + 1].count, k - d - 2, kern.alphabet_size(),
                                    kern.type_count()) >= seed) {
                run(d + 1, i + 1);
            }
        }
    }
};

SearchOutcome root_outcome(const WindowKernel& kern) {
    auto root = kern.root();
    SearchOutcome out;
    out.value = root.count;
    out.unstable = root.last_new > kern.scan_length() / 2;
    return out;
}

SearchOutcome exhaustive_serial(const WindowKernel& kern,
                                const std::vector<std::uint32_t>& cand, std::uint32_t k,
                                std::uint64_t seed) {
    if (k == 1)
        return root_outcome(kern);
    Dfs dfs(kern, cand, k, seed);
    dfs.run(0, 0);
    return dfs.best;
}

SearchOutcome exhaustive_parallel(const WindowKernel& kern,
                                  const std::vector<std::uint32_t>& cand, std::uint32_t k,
                                  std::uint64_t seed, unsigned workers) {
    if (k == 1)
        return root_outcome(kern);
#ifndef _OPENMP
    (void)workers;
    return exhaustive_serial(kern, cand, k, seed);
#else
    SearchOutcome best;
    const int splits = static_cast<int>(cand.size()) - static_cast<int>(k) + 2;
    const int threads = workers == 0 ? omp_get_max_threads()
                                     : static_cast<int>(std::min<unsigned>(workers, 256));
    // Split on the first offset; every thread runs the same deterministic
    // subtree walk, and the merge order cannot change the result because
    // outcomes are compared under a total order.
#pragma omp parallel num_threads(threads)
    {
        Dfs dfs(kern, cand, k, seed);
#pragma omp for schedule(dynamic) nowait
        for (int i = 0; i < splits; ++i) {
            dfs.kern.extend_into(dfs.levels[0], cand[i], dfs.levels[1], dfs.scratch);
            dfs.path[0] = cand[i];
            if (k == 2) {
                dfs.leaf(dfs.levels[1]);
            } else if (growth_bound(dfs.levels[1].count, k - 2, kern.alphabet_size(),
                                    kern.type_count()) >= seed) {
                dfs.run(1, i + 1);
            }
        }
#pragma omp critical(maxpat_search_merge)
        {
            if (dfs.best.better_than(best))
                best = dfs.best;
            best.unstable = best.unstable || dfs.best.unstable;
        }
    }
    return best;
#endif
}

SearchOutcome greedy_outcome(const WindowKernel& kern, const std::vector<std::uint32_t>& cand,
                             std::uint32_t k) {
    SearchOutcome out = root_outcome(kern);
    auto cur = kern.root();
    WindowKernel::Eval next, chosen;
    std::vector<std::uint32_t> scratch;
    std::size_t from = 0;
    for (std::uint32_t step = 1; step < k; ++step) {
        long long best_gain = -1;
        std::size_t best_i = 0;
        for (std::size_t i = from; i < cand.size(); ++i) {
            kern.extend_into(cur, cand[i], next, scratch);
            if (step + 1 == k && next.last_new > kern.scan_length() / 2)
                out.unstable = true;
            const long long gain =
                static_cast<long long>(next.count) - static_cast<long long>(cur.count);
            if (gain > best_gain) { // ties keep the smallest offset
                best_gain = gain;
                best_i = i;
                chosen = next;
            }
        }
        out.witness.push_back(cand[best_i]);
        cur = chosen;
        from = best_i + 1;
    }
    out.value = cur.count;
    return out;
}

ComplexityCertificate make_certificate(std::uint32_t k, const SearchConfig& config,
                                       Strategy strategy, const SearchOutcome& out) {
    ComplexityCertificate cert;
    cert.k = k;
    cert.value = static_cast<std::uint32_t>(out.value);
    std::vector<std::uint32_t> idx;
    idx.reserve(k);
    idx.push_back(0);
    idx.insert(idx.end(), out.witness.begin(), out.witness.end());
    cert.witness = Window::from_indices(std::move(idx));
    cert.strategy = strategy;
    cert.horizon = config.horizon;
    cert.scan_length = config.scan_length;
    cert.exact = Exactness::lower_bound_only;
    cert.unstable_scan = out.unstable;
    return cert;
}

} // namespace

ComplexityCertificate pattern_complexity(const Sequence& alpha, std::uint32_t k,
                                         const SearchConfig& config, Strategy strategy) {
    const auto cand = candidate_offsets(config);
    validate_config(k, config, cand.size());
    WindowKernel kern(alpha, config.horizon, config.scan_length);

    SearchOutcome out;
    switch (strategy) {
    case Strategy::greedy:
        out = greedy_outcome(kern, cand, k);
        break;
    case Strategy::exhaustive:
        // Seed 1 means nothing is pruned: every k-window is evaluated.
        out = config.workers == 1 ? exhaustive_serial(kern, cand, k, 1)
                                  : exhaustive_parallel(kern, cand, k, 1, config.workers);
        break;
    case Strategy::hybrid: {
        // The greedy value is achievable, so subtrees that cannot reach it
        // hold no maximum and no lexicographically earlier tie.
        SearchOutcome g = greedy_outcome(kern, cand, k);
        out = config.workers == 1
                  ? exhaustive_serial(kern, cand, k, g.value)
                  : exhaustive_parallel(kern, cand, k, g.value, config.workers);
        out.unstable = out.unstable || g.unstable;
        break;
    }
    }
    return make_certificate(k, config, strategy, out);
}

std::optional<std::pair<std::uint32_t, std::uint32_t>>
immediate_extension_growth(const Sequence& alpha, const Window& tau,
                           const SearchConfig& config) {
    if (tau.max_index() > config.horizon)
        throw std::invalid_argument("window already exceeds the horizon");
    if (config.scan_length < config.horizon + 1)
        throw std::invalid_argument("scan length must be at least horizon + 1");
    WindowKernel kern(alpha, config.horizon, config.scan_length);
    const auto base = kern.eval_of(tau);
    WindowKernel::Eval ext;
    std::vector<std::uint32_t> scratch;
    for (std::uint32_t h : candidate_offsets(config)) {
        if (h <= tau.max_index())
            continue;
        kern.extend_into(base, h, ext, scratch);
        if (ext.count >= base.count + 2)
            return std::make_pair(h, ext.count - base.count);
    }
    return std::nullopt;
}

std::optional<Window> shared_window_search(const Sequence& a, const Sequence& b,
                                           std::uint32_t k, const SearchConfig& config) {
    const auto cand = candidate_offsets(config);
    validate_config(k, config, cand.size());
    WindowKernel ka(a, config.horizon, config.scan_length);
    WindowKernel kb(b, config.horizon, config.scan_length);
    const std::uint64_t want = 2ull * k;

    if (k == 1) {
        if (ka.root().count >= want && kb.root().count >= want)
            return Window::block(1);
        return std::nullopt;
    }

    // Enumerate by max offset, then lexicographically on the middle set.
    struct PairDfs {
        const WindowKernel &ka, &kb;
        const std::vector<std::uint32_t>& cand;
        std::uint32_t k, top;
        std::uint64_t want;
        std::vector<WindowKernel::Eval> la, lb;
        WindowKernel::Eval leaf_a, leaf_b;
        std::vector<std::uint32_t> scratch, path;
        std::optional<Window> found;

        // Middle offsets come from cand[from..], all < cand[top_i]; the
        // final offset cand[top_i] is appended at the leaves.
        void run(std::uint32_t d, std::uint32_t from, std::uint32_t top_i) {
            if (found)
                return;
            if (d + 2 == k) { // middle set complete, close with the top offset
                ka.extend_into(la[d], top, leaf_a, scratch);
                if (leaf_a.count < want)
                    return;
                kb.extend_into(lb[d], top, leaf_b, scratch);
                if (leaf_b.count < want)
                    return;
                std::vector<std::uint32_t> idx;
                idx.push_back(0);
                idx.insert(idx.end(), path.begin(), path.begin() + d);
                idx.push_back(top);
                found = Window::from_indices(std::move(idx));
                return;
            }
            const std::uint32_t need = k - 2 - d;
            for (std::uint32_t i = from; i + need <= top_i && !found; ++i) {
                ka.extend_into(la[d], cand[i], la[d + 1], scratch);
                kb.extend_into(lb[d], cand[i], lb[d + 1], scratch);
                path[d] = cand[i];
                run(d + 1, i + 1, top_i);
            }
        }
    };

    PairDfs dfs{ka, kb, cand, k, 0, want, {}, {}, {}, {}, {}, {}, std::nullopt};
    dfs.la.resize(k);
    dfs.lb.resize(k);
    dfs.path.resize(k);
    dfs.la[0] = ka.root();
    dfs.lb[0] = kb.root();
    for (std::uint32_t top_i = static_cast<std::uint32_t>(k) - 2;
         top_i < cand.size(); ++top_i) {
        dfs.top = cand[top_i];
        dfs.run(0, 0, top_i);
        if (dfs.found)
            return dfs.found;
    }
    return std::nullopt;
}

Window lifted_window(const Window& tau, std::uint32_t m, std::uint32_t k_total,
                     std::uint32_t anchor) {
    if (m == 0)
        throw std::invalid_argument("modulus must be positive");
    if (tau.size() + (m - 1) != k_total)
        throw std::invalid_argument("need |tau| = k_total - (m-1)");
    if (static_cast<std::uint64_t>(anchor) < static_cast<std::uint64_t>(m) * tau.max_index())
        throw std::invalid_argument("anchor must be at least m * max(tau)");
    std::vector<std::uint32_t> idx;
    idx.reserve(k_total);
    for (std::size_t i = 0; i < tau.size(); ++i)
        idx.push_back(m * tau[i]);
    std::uint32_t cur = anchor;
    for (std::uint32_t r = 1; r < m; ++r) {
        // least offset > cur congruent to r mod m
        std::uint32_t next = cur + 1 + (r + m - (cur + 1) % m) % m;
        idx.push_back(next);
        cur = next;
    }
    return Window::from_indices(std::move(idx));
}

} // namespace maxpat
