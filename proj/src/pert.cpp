#include "pertdef/pert.hpp"

#include <sstream>
#include <stdexcept>

namespace pertdef {

PertRingSpec::PertRingSpec(int n_, int k_) : n(n_), k(k_) {
    if (n < 1) throw std::invalid_argument("PertRingSpec: n must be >= 1");
    if (k < 1) throw std::invalid_argument("PertRingSpec: k must be >= 1");
}

PertElem PertElem::constant(PertRingSpec spec, const Rational& c) {
    PertElem e(spec);
    if (c != 0) e.terms_.emplace(ExpVec(static_cast<std::size_t>(spec.n), 0), c);
    return e;
}

PertElem PertElem::generator(PertRingSpec spec, int alpha) {
    if (alpha < 1 || alpha > spec.n) throw std::out_of_range("PertElem::generator: index out of range");
    ExpVec e(static_cast<std::size_t>(spec.n), 0);
    e[static_cast<std::size_t>(alpha - 1)] = 1;
    return monomial(spec, e, 1);
}

PertElem PertElem::monomial(PertRingSpec spec, const ExpVec& exps, const Rational& coeff) {
    if (exps.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("PertElem::monomial: exponent vector length != n");
    if (total_degree(exps) > static_cast<std::uint64_t>(spec.k))
        throw std::invalid_argument("PertElem::monomial: total degree exceeds k");
    PertElem e(spec);
    if (coeff != 0) e.terms_.emplace(exps, coeff);
    return e;
}

Rational PertElem::constant_term() const {
    return coeff(ExpVec(static_cast<std::size_t>(spec_.n), 0));
}

Rational PertElem::coeff(const ExpVec& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
}

PertElem PertElem::graded_part(std::uint64_t d) const {
    PertElem out(spec_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
}

std::uint64_t PertElem::max_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

void PertElem::add_term(const ExpVec& exps, const Rational& coeff) {
    if (exps.size() != static_cast<std::size_t>(spec_.n))
        throw std::invalid_argument("PertElem::add_term: exponent vector length != n");
    if (coeff == 0) return;
    if (total_degree(exps) > static_cast<std::uint64_t>(spec_.k)) return;
    auto [it, inserted] = terms_.emplace(exps, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::string PertElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rational_to_string(c) << ")";
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) {
                os << "*l" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
    }
    return os.str();
}

static void check_specs(const PertElem& a, const PertElem& b) {
    if (!(a.spec() == b.spec()))
        throw std::invalid_argument("PertElem: mismatched ring specs");
}

PertElem operator+(const PertElem& a, const PertElem& b) {
    check_specs(a, b);
    PertElem out = a;
    for (const auto& [e, c] : b.terms()) out.add_term(e, c);
    return out;
}

PertElem operator-(const PertElem& a, const PertElem& b) { return a + (-b); }

PertElem operator-(const PertElem& a) { return Rational(-1) * a; }

PertElem operator*(const PertElem& a, const PertElem& b) {
    check_specs(a, b);
    PertElem out(a.spec());
    const auto kmax = static_cast<std::uint64_t>(a.spec().k);
    for (const auto& [ea, ca] : a.terms()) {
        const auto da = total_degree(ea);
        for (const auto& [eb, cb] : b.terms()) {
            if (da + total_degree(eb) > kmax) continue;
            ExpVec e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PertElem operator*(const Rational& c, const PertElem& a) {
    PertElem out(a.spec());
    if (c == 0) return out;
    for (const auto& [e, ca] : a.terms()) out.add_term(e, c * ca);
    return out;
}

PertElem operator*(const PertElem& a, const Rational& c) { return c * a; }

PertElem partial_derivative(const PertElem& a, int alpha) {
    if (alpha < 1 || alpha > a.spec().n)
        throw std::out_of_range("partial_derivative: index out of range");
    const std::size_t i = static_cast<std::size_t>(alpha - 1);
    PertElem out(a.spec());
    for (const auto& [e, c] : a.terms()) {
        if (e[i] == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        out.add_term(d, c * Rational(e[i]));
    }
    return out;
}

PertElem invert_unit(const PertElem& a) {
    const Rational c0 = a.constant_term();
    if (c0 == 0) throw std::domain_error("invert_unit: zero constant term, not a unit");
    const Rational inv_c0 = Rational(1) / c0;
    // a = c0*(1 + m), m nilpotent: a^{-1} = (1/c0) * sum (-m)^j.
    PertElem m = inv_c0 * a - PertElem::constant(a.spec(), 1);
    PertElem acc = PertElem::constant(a.spec(), inv_c0);
    PertElem term = acc;
    for (int j = 1; j <= a.spec().k; ++j) {
        term = -(term * m);
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc;
}

} // namespace pertdef
