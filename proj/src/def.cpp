#include "pertdef/def.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pertdef {

DefRingSpec::DefRingSpec(int n_, int k_) : n(n_), k(k_) {
    if (n < 1) throw std::invalid_argument("DefRingSpec: n must be >= 1");
    if (k < 1) throw std::invalid_argument("DefRingSpec: k must be >= 1");
}

static void validate_monomial(const DefRingSpec& spec, const DefMonomial& mono) {
    int prev_slot = 0;
    for (const auto& [slot, index] : mono) {
        if (slot < 1 || slot > spec.k) throw std::invalid_argument("DefElem: slot out of range");
        if (index < 1 || index > spec.n) throw std::invalid_argument("DefElem: index out of range");
        if (slot <= prev_slot) throw std::invalid_argument("DefElem: slots must be strictly ascending");
        prev_slot = slot;
    }
}

DefElem DefElem::constant(DefRingSpec spec, const Rational& c) {
    DefElem e(spec);
    if (c != 0) e.terms_.emplace(DefMonomial{}, c);
    return e;
}

DefElem DefElem::generator(DefRingSpec spec, int slot, int index) {
    return monomial(spec, DefMonomial{{slot, index}}, 1);
}

DefElem DefElem::monomial(DefRingSpec spec, const DefMonomial& mono, const Rational& coeff) {
    validate_monomial(spec, mono);
    DefElem e(spec);
    if (coeff != 0) e.terms_.emplace(mono, coeff);
    return e;
}

Rational DefElem::constant_term() const { return coeff(DefMonomial{}); }

Rational DefElem::coeff(const DefMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

DefElem DefElem::graded_part(int m) const {
    DefElem out(spec_);
    for (const auto& [mono, c] : terms_)
        if (static_cast<int>(mono.size()) == m) out.terms_.emplace(mono, c);
    return out;
}

int DefElem::max_grade() const {
    int m = 0;
    for (const auto& [mono, c] : terms_) m = std::max(m, static_cast<int>(mono.size()));
    return m;
}

void DefElem::add_term(const DefMonomial& mono, const Rational& coeff) {
    validate_monomial(spec_, mono);
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::string DefElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rational_to_string(c) << ")";
        for (const auto& [slot, index] : mono) os << "*e" << slot << "_" << index;
    }
    return os.str();
}

static void check_specs(const DefElem& a, const DefElem& b) {
    if (!(a.spec() == b.spec()))
        throw std::invalid_argument("DefElem: mismatched ring specs");
}

DefElem operator+(const DefElem& a, const DefElem& b) {
    check_specs(a, b);
    DefElem out = a;
    for (const auto& [mono, c] : b.terms()) out.add_term(mono, c);
    return out;
}

DefElem operator-(const DefElem& a, const DefElem& b) { return a + (-b); }

DefElem operator-(const DefElem& a) { return Rational(-1) * a; }

// Merge of two slot-sorted factor lists; fails (returns false) on any
// shared slot, which is exactly the squared-generator relation.
static bool merge_monomials(const DefMonomial& a, const DefMonomial& b, DefMonomial& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) return false;
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else out.push_back(b[j++]);
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return true;
}

DefElem operator*(const DefElem& a, const DefElem& b) {
    check_specs(a, b);
    DefElem out(a.spec());
    DefMonomial merged;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (merge_monomials(ma, mb, merged)) out.add_term(merged, ca * cb);
    return out;
}

DefElem operator*(const Rational& c, const DefElem& a) {
    DefElem out(a.spec());
    if (c == 0) return out;
    for (const auto& [mono, ca] : a.terms()) out.add_term(mono, c * ca);
    return out;
}

DefElem operator*(const DefElem& a, const Rational& c) { return c * a; }

DefElem invert_unit(const DefElem& a) {
    const Rational c0 = a.constant_term();
    if (c0 == 0) throw std::domain_error("invert_unit: zero constant term, not a unit");
    const Rational inv_c0 = Rational(1) / c0;
    DefElem m = inv_c0 * a - DefElem::constant(a.spec(), 1);
    DefElem acc = DefElem::constant(a.spec(), inv_c0);
    DefElem term = acc;
    for (int j = 1; j <= a.spec().k; ++j) { // nilpotent part dies after k factors
        term = -(term * m);
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc;
}

DefElem def_extend(const DefElem& a, int new_k) {
    if (new_k < a.spec().k)
        throw std::invalid_argument("def_extend: target ring has fewer slots");
    DefElem out(DefRingSpec(a.spec().n, new_k));
    for (const auto& [mono, c] : a.terms()) out.add_term(mono, c);
    return out;
}

} // namespace pertdef
