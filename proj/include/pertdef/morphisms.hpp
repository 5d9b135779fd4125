#ifndef PERTDEF_MORPHISMS_HPP
#define PERTDEF_MORPHISMS_HPP

#include <vector>

#include "pertdef/column.hpp"
#include "pertdef/def.hpp"
#include "pertdef/pert.hpp"

namespace pertdef {

// A bijection of {1..k}, stored as the image sequence.
class Permutation {
public:
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int k);
    static Permutation transposition(int k, int a, int b);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }

    Permutation compose(const Permutation& other) const; // this after other

private:
    std::vector<int> images_;
};

// The symmetrizing embedding: lambda^a -> eps_1^a + ... + eps_k^a, extended
// as a ring morphism. Its image is exactly the slot-permutation invariants.
DefElem embed_sym(const PertElem& p);

Column<DefElem> embed_sym(const Column<PertElem>& p);

// Ring automorphism eps_i^a -> eps_{sigma(i)}^a.
DefElem slot_permute(const Permutation& sigma, const DefElem& d);

// Group average (1/k!) sum over all slot permutations.
DefElem symmetrize(const DefElem& d);

// Checks invariance under all slot permutations via the adjacent
// transpositions, which generate the full group.
bool is_invariant(const DefElem& d);

// Section of embed_sym on the invariant subring. Throws std::domain_error
// for non-invariant input.
PertElem retract(const DefElem& d);

Column<PertElem> retract(const Column<DefElem>& d);

struct GradedPart {
    int degree = 0;   // number of eps factors
    DefElem element;  // homogeneous of that factor count
};

// Splits by factor count; zero parts are omitted, degrees ascending.
std::vector<GradedPart> grade_decompose(const DefElem& d);

} // namespace pertdef

#endif
