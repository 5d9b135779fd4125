#include "pertdef/serialize.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pertdef {

namespace {

std::vector<std::string> split_factors(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t star = text.find('*', start);
        if (star == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, star - start));
        start = star + 1;
    }
    return out;
}

long parse_positive_int(const std::string& s, std::size_t& pos, const std::string& ctx) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("bad monomial '" + ctx + "'");
    return std::stol(s.substr(start, pos - start));
}

} // namespace

std::string pert_monomial_to_string(const ExpVec& exps) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "l" << (i + 1);
        if (exps[i] > 1) os << "^" << exps[i];
    }
    return os.str();
}

ExpVec parse_pert_monomial(const std::string& text, int n) {
    ExpVec exps(static_cast<std::size_t>(n), 0);
    if (text.empty()) return exps;
    for (const auto& factor : split_factors(text)) {
        std::size_t pos = 0;
        if (pos >= factor.size() || factor[pos] != 'l')
            throw std::invalid_argument("bad Pert monomial '" + text + "'");
        ++pos;
        long idx = parse_positive_int(factor, pos, text);
        long exp = 1;
        if (pos < factor.size()) {
            if (factor[pos] != '^') throw std::invalid_argument("bad Pert monomial '" + text + "'");
            ++pos;
            exp = parse_positive_int(factor, pos, text);
        }
        if (pos != factor.size()) throw std::invalid_argument("bad Pert monomial '" + text + "'");
        if (idx < 1 || idx > n)
            throw std::invalid_argument("Pert monomial '" + text + "': generator index out of range");
        exps[static_cast<std::size_t>(idx - 1)] += static_cast<std::uint32_t>(exp);
    }
    return exps;
}

std::string def_monomial_to_string(const DefMonomial& mono) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [slot, index] : mono) {
        if (!first) os << "*";
        first = false;
        os << "e" << slot << "_" << index;
    }
    return os.str();
}

DefMonomial parse_def_monomial(const std::string& text) {
    DefMonomial mono;
    if (text.empty()) return mono;
    for (const auto& factor : split_factors(text)) {
        std::size_t pos = 0;
        if (pos >= factor.size() || factor[pos] != 'e')
            throw std::invalid_argument("bad Def monomial '" + text + "'");
        ++pos;
        long slot = parse_positive_int(factor, pos, text);
        if (pos >= factor.size() || factor[pos] != '_')
            throw std::invalid_argument("bad Def monomial '" + text + "'");
        ++pos;
        long index = parse_positive_int(factor, pos, text);
        if (pos != factor.size()) throw std::invalid_argument("bad Def monomial '" + text + "'");
        mono.emplace_back(static_cast<int>(slot), static_cast<int>(index));
    }
    for (std::size_t i = 1; i < mono.size(); ++i)
        if (mono[i].first <= mono[i - 1].first)
            throw std::invalid_argument("Def monomial '" + text + "': slots must be strictly ascending");
    return mono;
}

StringTerms to_string_terms(const PertElem& e) {
    StringTerms out;
    out.reserve(e.terms().size());
    for (const auto& [exps, c] : e.terms())
        out.emplace_back(pert_monomial_to_string(exps), rational_to_string(c));
    return out;
}

StringTerms to_string_terms(const DefElem& e) {
    StringTerms out;
    out.reserve(e.terms().size());
    for (const auto& [mono, c] : e.terms())
        out.emplace_back(def_monomial_to_string(mono), rational_to_string(c));
    return out;
}

PertElem pert_from_string_terms(PertRingSpec spec, const StringTerms& terms) {
    PertElem e(spec);
    for (const auto& [mono, coeff] : terms) {
        ExpVec exps = parse_pert_monomial(mono, spec.n);
        if (total_degree(exps) > static_cast<std::uint64_t>(spec.k))
            throw std::invalid_argument("Pert monomial '" + mono + "' exceeds nilpotency order");
        e.add_term(exps, parse_rational(coeff));
    }
    return e;
}

DefElem def_from_string_terms(DefRingSpec spec, const StringTerms& terms) {
    DefElem e(spec);
    for (const auto& [mono, coeff] : terms)
        e.add_term(parse_def_monomial(mono), parse_rational(coeff));
    return e;
}

} // namespace pertdef
