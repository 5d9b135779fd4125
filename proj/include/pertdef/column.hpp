#ifndef PERTDEF_COLUMN_HPP
#define PERTDEF_COLUMN_HPP

#include <stdexcept>
#include <vector>

#include "pertdef/def.hpp"
#include "pertdef/pert.hpp"
#include "pertdef/polynomial.hpp"

namespace pertdef {

// Length-N column of ring elements sharing one spec.
template <class E>
using Column = std::vector<E>;

using ColumnQ = std::vector<Rational>;

template <class E>
void check_column(const Column<E>& col) {
    if (col.empty()) throw std::invalid_argument("column must be non-empty");
    for (const auto& e : col)
        if (!(e.spec() == col.front().spec()))
            throw std::invalid_argument("column entries have mismatched ring specs");
}

inline Column<PertElem> constant_column(const PertRingSpec& spec, const ColumnQ& values) {
    Column<PertElem> col;
    col.reserve(values.size());
    for (const auto& v : values) col.push_back(PertElem::constant(spec, v));
    return col;
}

inline Column<DefElem> constant_column(const DefRingSpec& spec, const ColumnQ& values) {
    Column<DefElem> col;
    col.reserve(values.size());
    for (const auto& v : values) col.push_back(DefElem::constant(spec, v));
    return col;
}

template <class E>
Column<E> operator+(const Column<E>& a, const Column<E>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("column dimension mismatch");
    Column<E> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

template <class E>
Column<E> operator*(const E& s, const Column<E>& a) {
    Column<E> out;
    out.reserve(a.size());
    for (const auto& e : a) out.push_back(s * e);
    return out;
}

// <r, s> = sum_i r^i s^i in the ring.
template <class E>
E dot(const Column<E>& r, const Column<E>& s) {
    check_column(r);
    check_column(s);
    if (r.size() != s.size()) throw std::invalid_argument("dot: dimension mismatch");
    if (!(r.front().spec() == s.front().spec()))
        throw std::invalid_argument("dot: mismatched ring specs");
    E acc(r.front().spec());
    for (std::size_t i = 0; i < r.size(); ++i) acc = acc + r[i] * s[i];
    return acc;
}

inline Rational dot(const ColumnQ& r, const ColumnQ& s) {
    if (r.size() != s.size() || r.empty()) throw std::invalid_argument("dot: dimension mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r[i] * s[i];
    return acc;
}

// F(p^1, ..., p^N) with full ideal reduction; substitution is a ring morphism.
template <class E>
E poly_eval(const Polynomial& F, const Column<E>& p) {
    check_column(p);
    if (static_cast<std::size_t>(F.num_vars()) != p.size())
        throw std::invalid_argument("poly_eval: variable count != column length");
    const auto spec = p.front().spec();
    // Power cache per variable, filled on demand.
    std::vector<std::vector<E>> powers(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) powers[i].push_back(E::constant(spec, 1));
    auto power = [&](std::size_t i, std::uint32_t e) -> const E& {
        while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * p[i]);
        return powers[i][e];
    };
    E acc(spec);
    for (const auto& [exps, c] : F.terms()) {
        E term = E::constant(spec, c);
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0) term = term * power(i, exps[i]);
        acc = acc + term;
    }
    return acc;
}

// Column of evaluated partials, grad F at p computed in the ring.
template <class E>
Column<E> gradient_at(const Polynomial& F, const Column<E>& p) {
    Column<E> g;
    g.reserve(p.size());
    for (int i = 1; i <= F.num_vars(); ++i) g.push_back(poly_eval(partial_derivative(F, i), p));
    return g;
}

inline ColumnQ gradient_at(const Polynomial& F, const ColumnQ& p) {
    ColumnQ g;
    g.reserve(p.size());
    for (int i = 1; i <= F.num_vars(); ++i) g.push_back(eval(partial_derivative(F, i), p));
    return g;
}

} // namespace pertdef

#endif
