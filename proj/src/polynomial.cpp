#include "pertdef/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace pertdef {

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) throw std::invalid_argument("Polynomial: need at least one variable");
}

Polynomial Polynomial::constant(int num_vars, const Rational& c) {
    Polynomial p(num_vars);
    if (c != 0) p.terms_.emplace(ExpVec(static_cast<std::size_t>(num_vars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
    Polynomial p(num_vars);
    if (index < 1 || index > num_vars) throw std::out_of_range("Polynomial::variable: index out of range");
    ExpVec e(static_cast<std::size_t>(num_vars), 0);
    e[static_cast<std::size_t>(index - 1)] = 1;
    p.terms_.emplace(e, Rational(1));
    return p;
}

std::uint64_t Polynomial::degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

void Polynomial::add_term(const ExpVec& exps, const Rational& coeff) {
    if (exps.size() != static_cast<std::size_t>(num_vars_))
        throw std::invalid_argument("Polynomial::add_term: exponent vector length != N");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(exps, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rational_to_string(c) << ")";
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) {
                os << "*x" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
    }
    return os.str();
}

static void check_vars(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars() != b.num_vars())
        throw std::invalid_argument("Polynomial: mismatched variable counts");
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_vars(a, b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms()) out.add_term(e, c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator-(const Polynomial& a) { return Rational(-1) * a; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_vars(a, b);
    Polynomial out(a.num_vars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            ExpVec e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial operator*(const Rational& c, const Polynomial& a) {
    Polynomial out(a.num_vars());
    if (c == 0) return out;
    for (const auto& [e, ca] : a.terms()) out.add_term(e, c * ca);
    return out;
}

Polynomial operator*(const Polynomial& a, const Rational& c) { return c * a; }

Polynomial partial_derivative(const Polynomial& a, int index) {
    if (index < 1 || index > a.num_vars())
        throw std::out_of_range("partial_derivative: index out of range");
    const std::size_t i = static_cast<std::size_t>(index - 1);
    Polynomial out(a.num_vars());
    for (const auto& [e, c] : a.terms()) {
        if (e[i] == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        out.add_term(d, c * Rational(e[i]));
    }
    return out;
}

Rational eval(const Polynomial& a, const std::vector<Rational>& point) {
    if (point.size() != static_cast<std::size_t>(a.num_vars()))
        throw std::invalid_argument("eval: point dimension mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : a.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t j = 0; j < e[i]; ++j) term *= point[i];
        acc += term;
    }
    return acc;
}

} // namespace pertdef
