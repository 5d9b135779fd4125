#ifndef PERTDEF_POLYNOMIAL_HPP
#define PERTDEF_POLYNOMIAL_HPP

#include <map>
#include <string>

#include "pertdef/monomial.hpp"
#include "pertdef/rational.hpp"

namespace pertdef {

// Plain polynomial over the rationals in variables x1..xN.
class Polynomial {
public:
    using TermMap = std::map<ExpVec, Rational, GradedLexLess>;

    Polynomial() = default;
    explicit Polynomial(int num_vars);

    static Polynomial constant(int num_vars, const Rational& c);
    static Polynomial variable(int num_vars, int index); // 1-based

    int num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint64_t degree() const;

    void add_term(const ExpVec& exps, const Rational& coeff);

    std::string str() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    int num_vars_ = 0;
    TermMap terms_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rational& c, const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Rational& c);

Polynomial partial_derivative(const Polynomial& a, int index);

// Evaluation at a rational point.
Rational eval(const Polynomial& a, const std::vector<Rational>& point);

} // namespace pertdef

#endif
