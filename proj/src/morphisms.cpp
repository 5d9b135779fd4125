#include "pertdef/morphisms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pertdef {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 1 || v > static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v - 1)])
            throw std::invalid_argument("Permutation: images are not a bijection of {1..k}");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation Permutation::identity(int k) {
    std::vector<int> im(static_cast<std::size_t>(k));
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
}

Permutation Permutation::transposition(int k, int a, int b) {
    Permutation p = identity(k);
    std::swap(p.images_[static_cast<std::size_t>(a - 1)], p.images_[static_cast<std::size_t>(b - 1)]);
    return p;
}

Permutation Permutation::compose(const Permutation& other) const {
    if (size() != other.size()) throw std::invalid_argument("Permutation::compose: size mismatch");
    std::vector<int> im(images_.size());
    for (int i = 1; i <= size(); ++i)
        im[static_cast<std::size_t>(i - 1)] = (*this)(other(i));
    return Permutation(std::move(im));
}

DefElem embed_sym(const PertElem& p) {
    const DefRingSpec spec(p.spec().n, p.spec().k);
    // Images of the generators: sum over slots.
    std::vector<DefElem> gen_image;
    gen_image.reserve(static_cast<std::size_t>(spec.n));
    for (int a = 1; a <= spec.n; ++a) {
        DefElem s(spec);
        for (int i = 1; i <= spec.k; ++i) s = s + DefElem::generator(spec, i, a);
        gen_image.push_back(s);
    }
    DefElem out(spec);
    for (const auto& [exps, c] : p.terms()) {
        DefElem term = DefElem::constant(spec, c);
        for (std::size_t a = 0; a < exps.size(); ++a)
            for (std::uint32_t j = 0; j < exps[a]; ++j) term = term * gen_image[a];
        out = out + term;
    }
    return out;
}

Column<DefElem> embed_sym(const Column<PertElem>& p) {
    Column<DefElem> out;
    out.reserve(p.size());
    for (const auto& e : p) out.push_back(embed_sym(e));
    return out;
}

DefElem slot_permute(const Permutation& sigma, const DefElem& d) {
    if (sigma.size() != d.spec().k)
        throw std::invalid_argument("slot_permute: permutation size != number of slots");
    DefElem out(d.spec());
    for (const auto& [mono, c] : d.terms()) {
        DefMonomial m = mono;
        for (auto& [slot, index] : m) slot = sigma(slot);
        std::sort(m.begin(), m.end());
        out.add_term(m, c);
    }
    return out;
}

DefElem symmetrize(const DefElem& d) {
    const int k = d.spec().k;
    std::vector<int> im(static_cast<std::size_t>(k));
    std::iota(im.begin(), im.end(), 1);
    DefElem acc(d.spec());
    Rational count = 0;
    do {
        acc = acc + slot_permute(Permutation(im), d);
        count += 1;
    } while (std::next_permutation(im.begin(), im.end()));
    return (Rational(1) / count) * acc;
}

bool is_invariant(const DefElem& d) {
    const int k = d.spec().k;
    for (int i = 1; i < k; ++i)
        if (!(slot_permute(Permutation::transposition(k, i, i + 1), d) == d)) return false;
    return true;
}

PertElem retract(const DefElem& d) {
    if (!is_invariant(d)) throw std::domain_error("retract: element is not slot-permutation invariant");
    const PertRingSpec spec(d.spec().n, d.spec().k);
    PertElem out(spec);
    // Factorials up to k.
    std::vector<Rational> fact(static_cast<std::size_t>(spec.k) + 1, 1);
    for (int m = 1; m <= spec.k; ++m) fact[static_cast<std::size_t>(m)] = fact[static_cast<std::size_t>(m - 1)] * m;
    for (const auto& [mono, c] : d.terms()) {
        const int m = static_cast<int>(mono.size());
        // Only the representative with slot set {1..m} is read; invariance
        // makes the other slot sets carry the same tensor.
        bool leading = true;
        for (int i = 0; i < m; ++i)
            if (mono[static_cast<std::size_t>(i)].first != i + 1) { leading = false; break; }
        if (!leading) continue;
        ExpVec exps(static_cast<std::size_t>(spec.n), 0);
        for (const auto& [slot, index] : mono) exps[static_cast<std::size_t>(index - 1)] += 1;
        out.add_term(exps, c / fact[static_cast<std::size_t>(m)]);
    }
    return out;
}

Column<PertElem> retract(const Column<DefElem>& d) {
    Column<PertElem> out;
    out.reserve(d.size());
    for (const auto& e : d) out.push_back(retract(e));
    return out;
}

std::vector<GradedPart> grade_decompose(const DefElem& d) {
    std::vector<GradedPart> parts;
    for (int m = 0; m <= d.max_grade(); ++m) {
        DefElem part = d.graded_part(m);
        if (!part.is_zero()) parts.push_back({m, std::move(part)});
    }
    return parts;
}

} // namespace pertdef
