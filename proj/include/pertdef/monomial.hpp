#ifndef PERTDEF_MONOMIAL_HPP
#define PERTDEF_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace pertdef {

// Exponent vector of a commutative monomial, one entry per variable.
using ExpVec = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const ExpVec& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

// Graded lexicographic order: lower total degree first, then lex.
struct GradedLexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        const auto da = total_degree(a);
        const auto db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

} // namespace pertdef

#endif
