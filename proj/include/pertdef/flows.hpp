#ifndef PERTDEF_FLOWS_HPP
#define PERTDEF_FLOWS_HPP

#include <map>
#include <string>
#include <vector>

#include "pertdef/pert.hpp"
#include "pertdef/tensor.hpp"

namespace pertdef {

// Ring endomorphism by generator substitution with full truncation. Each
// image must have a zero constant term (the marked point stays fixed).
PertElem apply_endo(const std::vector<PertElem>& images, const PertElem& p);

// First-order jet in t of a family g_t of ring endomorphisms with g_0 = id:
// g_t(lambda^a) = lambda^a + t * derivative[a] + O(t^2).
class EndoFamily {
public:
    EndoFamily(PertRingSpec spec, std::vector<PertElem> value_at_0, std::vector<PertElem> derivative);

    // derivative[i] holds the order-i tensor gdot^{i,a}_{a1..ai}(0),
    // symmetric in the lower indices, for i in 1..k.
    static EndoFamily from_tensors(PertRingSpec spec, const std::map<int, TensorMap>& derivative);

    const PertRingSpec& spec() const { return spec_; }
    const std::vector<PertElem>& derivative() const { return derivative_; }

    // True when every derivative term sits in top degree k (the shape whose
    // gamma-structure has the closed form).
    bool is_top_order() const;

private:
    PertRingSpec spec_;
    std::vector<PertElem> derivative_;
};

// A derivation of Pert_{n,k}, determined by its generator images and
// extended by the Leibniz rule.
struct Derivation {
    PertRingSpec spec;
    std::vector<PertElem> images; // beta(lambda^a)
};

Derivation beta_field(const EndoFamily& fam);

// beta(p) = sum_a (dp/dlambda^a) * beta(lambda^a).
PertElem apply_derivation(const Derivation& beta, const PertElem& p);

// Ring morphism Pert_{n, source.k} -> Pert_{n, target.k} by generator
// substitution; the canonical figure sends mu^a to lambda^a (truncation).
struct Figure {
    PertRingSpec source;
    PertRingSpec target;
    std::vector<PertElem> images; // over the target ring, zero constant terms

    bool is_canonical() const;
};

Figure canonical_figure(int n, int k); // source (n, k+1), target (n, k)

PertElem apply_figure(const Figure& fig, const PertElem& p);

// Element of the tangent module at the figure: mu^a -> pi(mu^a) + delta*c^a.
struct TangentModuleElem {
    PertRingSpec target;
    std::vector<PertElem> coeffs;
};

// Matrix of the gamma endomorphism in the basis f_a (c^b = delta_ab):
// gamma(f_a) = sum_b entry(a, b) * f_b.
struct GammaOperator {
    PertRingSpec target;
    std::vector<std::vector<PertElem>> entries; // [a-1][b-1]

    TangentModuleElem apply(const TangentModuleElem& f) const;
};

// d/dt at 0 of f -> f compose g_t, computed by exact dual-number
// substitution. Requires the family to preserve the canonical figure.
TangentModuleElem gamma_generic_apply(const EndoFamily& fam, const Figure& fig,
                                      const TangentModuleElem& f);

// Gamma operator of the canonical figure. Computed by the generic route on
// the basis vectors and cross-checked against the closed form
// (k+1) * udot^b_{a,a1..ak} lambda^{a1}..lambda^{ak}; a mismatch throws.
GammaOperator gamma_action(const EndoFamily& fam, const Figure& fig);

struct GammaBetaReport {
    int factor = 0; // k+1 of the target ring
    bool ok = false;
    std::vector<std::string> failures;
};

// Verifies entrywise that the gamma coefficients are exactly (k+1) times
// the beta coefficient tensor of a top-order family.
GammaBetaReport gamma_beta_check(const EndoFamily& fam);

} // namespace pertdef

#endif
