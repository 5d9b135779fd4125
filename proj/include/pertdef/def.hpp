#ifndef PERTDEF_DEF_HPP
#define PERTDEF_DEF_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pertdef/rational.hpp"

namespace pertdef {

// Ring generated by eps_i^alpha (slot i in 1..k, index alpha in 1..n) where
// any product of two generators sharing a slot vanishes.
struct DefRingSpec {
    int n = 0; // indices per slot
    int k = 0; // number of slots

    DefRingSpec() = default;
    DefRingSpec(int n_, int k_);

    friend bool operator==(const DefRingSpec&, const DefRingSpec&) = default;
};

// A square-free-in-slots monomial: (slot, index) factors with strictly
// ascending slots. The empty monomial is the ring unit.
using DefMonomial = std::vector<std::pair<int, int>>;

class DefElem {
public:
    using TermMap = std::map<DefMonomial, Rational>;

    DefElem() = default;
    explicit DefElem(DefRingSpec spec) : spec_(spec) {}

    static DefElem constant(DefRingSpec spec, const Rational& c);
    // eps_slot^index, both 1-based.
    static DefElem generator(DefRingSpec spec, int slot, int index);
    static DefElem monomial(DefRingSpec spec, const DefMonomial& mono, const Rational& coeff);

    const DefRingSpec& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational constant_term() const;
    Rational coeff(const DefMonomial& mono) const;

    // Factor-count grading: keeps monomials with exactly m factors.
    DefElem graded_part(int m) const;
    int max_grade() const;

    void add_term(const DefMonomial& mono, const Rational& coeff);

    std::string str() const;

    friend bool operator==(const DefElem&, const DefElem&) = default;

private:
    DefRingSpec spec_;
    TermMap terms_;
};

DefElem operator+(const DefElem& a, const DefElem& b);
DefElem operator-(const DefElem& a, const DefElem& b);
DefElem operator-(const DefElem& a);
DefElem operator*(const DefElem& a, const DefElem& b);
DefElem operator*(const Rational& c, const DefElem& a);
DefElem operator*(const DefElem& a, const Rational& c);

DefElem invert_unit(const DefElem& a);

// Reinterprets an element in a ring with more slots (the inclusion
// Def_{n,k} into Def_{n,k'} for k' >= k). Monomials are unchanged.
DefElem def_extend(const DefElem& a, int new_k);

} // namespace pertdef

#endif
