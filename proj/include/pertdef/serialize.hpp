#ifndef PERTDEF_SERIALIZE_HPP
#define PERTDEF_SERIALIZE_HPP

#include <string>
#include <utility>
#include <vector>

#include "pertdef/def.hpp"
#include "pertdef/pert.hpp"

namespace pertdef {

// Canonical text forms.
//   Pert monomial: "l1^2*l2"   factors ascending by generator, "^1" omitted.
//   Def monomial:  "e1_2*e3_1" factor e<slot>_<index>, ascending by slot.
//   The empty string is the constant-term key.

std::string pert_monomial_to_string(const ExpVec& exps);
ExpVec parse_pert_monomial(const std::string& text, int n);

std::string def_monomial_to_string(const DefMonomial& mono);
DefMonomial parse_def_monomial(const std::string& text);

// Elements serialize as (monomial string, rational string) pairs in
// canonical key order.
using StringTerms = std::vector<std::pair<std::string, std::string>>;

StringTerms to_string_terms(const PertElem& e);
StringTerms to_string_terms(const DefElem& e);

PertElem pert_from_string_terms(PertRingSpec spec, const StringTerms& terms);
DefElem def_from_string_terms(DefRingSpec spec, const StringTerms& terms);

} // namespace pertdef

#endif
