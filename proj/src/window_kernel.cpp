#include "maxpat/window_kernel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace maxpat {

WindowKernel::WindowKernel(const Sequence& alpha, std::uint32_t horizon,
                           std::uint32_t scan_length)
    : horizon_(horizon), scan_length_(scan_length), span_(horizon + 1),
      ell_(alpha.alphabet().size()) {
    if (scan_length == 0)
        throw std::invalid_argument("scan length must be positive");
    std::vector<Symbol> prefix =
        materialize(alpha, static_cast<std::size_t>(scan_length) + horizon);

    // Group start positions by their length-(horizon+1) factor. Hashing the
    // raw symbol bytes keeps this one pass over the prefix.
    std::unordered_map<std::string_view, std::uint32_t> ids;
    ids.reserve(scan_length / 4);
    const char* base = reinterpret_cast<const char*>(prefix.data());
    for (std::uint32_t n = 0; n < scan_length; ++n) {
        std::string_view key(base + n, span_);
        auto [it, fresh] = ids.try_emplace(key, static_cast<std::uint32_t>(earliest_.size()));
        if (fresh) {
            earliest_.push_back(n);
            factors_.insert(factors_.end(), prefix.begin() + n, prefix.begin() + n + span_);
        }
        (void)it;
    }
}

WindowKernel::Eval WindowKernel::root() const {
    Eval e;
    e.cls.resize(type_count());
    // Classes keyed by the symbol at offset 0, ids in first-seen type order.
    std::vector<std::uint32_t> map(ell_, UINT32_MAX);
    for (std::uint32_t t = 0; t < type_count(); ++t) {
        Symbol s = factors_[static_cast<std::size_t>(t) * span_];
        if (map[s] == UINT32_MAX) {
            map[s] = e.count++;
            if (earliest_[t] > e.last_new)
                e.last_new = earliest_[t];
        }
        e.cls[t] = map[s];
    }
    return e;
}

void WindowKernel::extend_into(const Eval& parent, std::uint32_t h, Eval& out,
                               std::vector<std::uint32_t>& scratch) const {
    if (h > horizon_)
        throw std::invalid_argument("offset beyond kernel horizon");
    out.cls.resize(type_count());
    out.count = 0;
    out.last_new = 0;
    // New class = (old class, symbol at offset h); since types appear in
    // earliest-position order, the type that opens a class carries the
    // first occurrence of the corresponding word.
    const std::size_t keys = static_cast<std::size_t>(parent.count) * ell_;
    if (scratch.size() < keys)
        scratch.resize(keys);
    std::fill_n(scratch.begin(), keys, UINT32_MAX);
    for (std::uint32_t t = 0; t < type_count(); ++t) {
        const std::size_t key =
            static_cast<std::size_t>(parent.cls[t]) * ell_ +
            factors_[static_cast<std::size_t>(t) * span_ + h];
        if (scratch[key] == UINT32_MAX) {
            scratch[key] = out.count++;
            if (earliest_[t] > out.last_new)
                out.last_new = earliest_[t];
        }
        out.cls[t] = scratch[key];
    }
}

WindowKernel::Eval WindowKernel::extend(const Eval& parent, std::uint32_t h) const {
    Eval out;
    std::vector<std::uint32_t> scratch;
    extend_into(parent, h, out, scratch);
    return out;
}

WindowKernel::Eval WindowKernel::eval_of(const Window& tau) const {
    Eval e = root();
    Eval next;
    std::vector<std::uint32_t> scratch;
    for (std::size_t i = 1; i < tau.size(); ++i) {
        extend_into(e, tau[i], next, scratch);
        std::swap(e, next);
    }
    return e;
}

std::uint32_t WindowKernel::count_of(const Window& tau) const {
    return eval_of(tau).count;
}

} // namespace maxpat
