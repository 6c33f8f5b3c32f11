#include "maxpat/sequence.hpp"

#include <stdexcept>

namespace maxpat {

Sequence::Sequence(std::shared_ptr<const SequenceSource> impl) : impl_(std::move(impl)) {
    if (!impl_)
        throw std::invalid_argument("null sequence source");
}

namespace {

class ShiftedSource final : public SequenceSource {
public:
    ShiftedSource(Sequence base, std::uint64_t t)
        : SequenceSource(base.alphabet(), "shifted"), base_(std::move(base)), t_(t) {}
    Symbol at(std::uint64_t n) const override { return base_.at(n + t_); }
    std::uint64_t stored_length() const override {
        const auto base = base_.impl()->stored_length();
        return base > t_ ? base - t_ : 0;
    }

private:
    Sequence base_;
    std::uint64_t t_;
};

class ResidueSource final : public SequenceSource {
public:
    ResidueSource(Sequence base, std::uint32_t m, std::uint32_t i)
        : SequenceSource(base.alphabet(), "residue-view"), base_(std::move(base)), m_(m), i_(i) {}
    Symbol at(std::uint64_t n) const override { return base_.at(i_ + n * m_); }
    std::uint64_t stored_length() const override {
        const auto base = base_.impl()->stored_length();
        return base > i_ ? (base - i_ + m_ - 1) / m_ : 0;
    }

private:
    Sequence base_;
    std::uint32_t m_, i_;
};

} // namespace

Sequence shift(const Sequence& alpha, std::uint64_t t) {
    if (t == 0)
        return alpha;
    return Sequence(std::make_shared<ShiftedSource>(alpha, t));
}

Sequence restrict_to_residue(const Sequence& alpha, std::uint32_t m, std::uint32_t i) {
    if (m == 0)
        throw std::invalid_argument("residue modulus must be positive");
    if (i >= m)
        throw std::invalid_argument("residue index " + std::to_string(i) +
                                    " not below modulus " + std::to_string(m));
    if (m == 1)
        return alpha; // the identity view
    return Sequence(std::make_shared<ResidueSource>(alpha, m, i));
}

std::vector<Symbol> materialize(const Sequence& alpha, std::size_t count) {
    std::vector<Symbol> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n)
        out.push_back(alpha.at(n));
    return out;
}

} // namespace maxpat
