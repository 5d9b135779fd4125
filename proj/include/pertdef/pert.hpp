#ifndef PERTDEF_PERT_HPP
#define PERTDEF_PERT_HPP

#include <map>
#include <string>

#include "pertdef/monomial.hpp"
#include "pertdef/rational.hpp"

namespace pertdef {

// The truncated polynomial ring in n generators where every monomial of
// total degree above k is zero.
struct PertRingSpec {
    int n = 0; // number of generators
    int k = 0; // nilpotency order (degrees above k vanish)

    PertRingSpec() = default;
    PertRingSpec(int n_, int k_);

    friend bool operator==(const PertRingSpec&, const PertRingSpec&) = default;
};

class PertElem {
public:
    using TermMap = std::map<ExpVec, Rational, GradedLexLess>;

    PertElem() = default;
    explicit PertElem(PertRingSpec spec) : spec_(spec) {}

    static PertElem constant(PertRingSpec spec, const Rational& c);
    // 1-based generator index.
    static PertElem generator(PertRingSpec spec, int alpha);
    // Throws if the exponent vector has the wrong length or total degree > k.
    static PertElem monomial(PertRingSpec spec, const ExpVec& exps, const Rational& coeff);

    const PertRingSpec& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational constant_term() const;
    // Coefficient of a given monomial (0 if absent).
    Rational coeff(const ExpVec& exps) const;

    // Drops everything except total degree == d.
    PertElem graded_part(std::uint64_t d) const;
    std::uint64_t max_degree() const;

    // Adds coeff*monomial, silently dropping monomials of degree > k.
    void add_term(const ExpVec& exps, const Rational& coeff);

    std::string str() const;

    friend bool operator==(const PertElem&, const PertElem&) = default;

private:
    PertRingSpec spec_;
    TermMap terms_;
};

PertElem operator+(const PertElem& a, const PertElem& b);
PertElem operator-(const PertElem& a, const PertElem& b);
PertElem operator-(const PertElem& a);
PertElem operator*(const PertElem& a, const PertElem& b);
PertElem operator*(const Rational& c, const PertElem& a);
PertElem operator*(const PertElem& a, const Rational& c);

// Formal partial derivative with respect to generator alpha (1-based).
PertElem partial_derivative(const PertElem& a, int alpha);

// Inverse of a unit (nonzero constant term) via the finite Neumann series.
// Throws std::domain_error for non-units.
PertElem invert_unit(const PertElem& a);

} // namespace pertdef

#endif
