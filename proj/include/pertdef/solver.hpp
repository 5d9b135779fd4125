#ifndef PERTDEF_SOLVER_HPP
#define PERTDEF_SOLVER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pertdef/column.hpp"
#include "pertdef/polynomial.hpp"
#include "pertdef/tensor.hpp"

namespace pertdef {

// Hypersurface F = 0 with a smooth rational base point and exact frames.
// tangent_frame holds the n independent deformation directions s_alpha;
// normal_frame holds the vectors e_gamma carrying the free tangential
// parameters of a solution (also tangent to X, and defaulting to s).
struct Hypersurface {
    Polynomial F;
    ColumnQ base_point;
    std::vector<ColumnQ> tangent_frame;
    std::vector<ColumnQ> normal_frame;

    Hypersurface(Polynomial F_, ColumnQ base_point_, std::vector<ColumnQ> tangent_frame_,
                 std::vector<ColumnQ> normal_frame_ = {});

    int N() const { return F.num_vars(); }
    int n() const { return static_cast<int>(tangent_frame.size()); }
    ColumnQ gradient() const { return gradient_at(F, base_point); }
};

// Exact kernel basis of the gradient row at x_star, by elimination with the
// first nonzero entry as pivot. Returns the first n of the N-1 basis vectors.
std::vector<ColumnQ> default_tangent_frame(const Polynomial& F, const ColumnQ& x_star, int n);

// F evaluated on a candidate chart; zero iff the candidate is a chart.
template <class E>
E residual(const Polynomial& F, const Column<E>& p) {
    return poly_eval(F, p);
}

template <class E>
std::vector<E> residual(const std::vector<Polynomial>& Fs, const Column<E>& p) {
    std::vector<E> out;
    out.reserve(Fs.size());
    for (const auto& F : Fs) out.push_back(poly_eval(F, p));
    return out;
}

// <q, grad F(p)>; q is a formal tangent vector at the solution p iff zero.
// Requires p to actually solve F = 0.
template <class E>
E tangent_check(const Polynomial& F, const Column<E>& p, const Column<E>& q) {
    if (!residual(F, p).is_zero())
        throw std::invalid_argument("tangent_check: p is not a solution of F = 0");
    return dot(q, gradient_at(F, p));
}

template <class E>
std::vector<E> tangent_check(const std::vector<Polynomial>& Fs, const Column<E>& p, const Column<E>& q) {
    std::vector<E> out;
    out.reserve(Fs.size());
    for (const auto& F : Fs) out.push_back(tangent_check(F, p, q));
    return out;
}

// One step of the lifting recurrence. p = r + eps_m^a t_a solves F = 0 over
// the slots below m; s and u_a are tangent columns at r. The result
//   q = s - eps_m^a * (d2F(r)(s, t_a) / <gradF(r), gradF(r)>) * gradF(r)
//         + eps_m^a * u_a
// is tangent at p. The division is invert_unit on the gradient square.
Column<DefElem> tangent_lift(const Polynomial& F, const Column<DefElem>& r,
                             const std::vector<Column<DefElem>>& t, const Column<DefElem>& s,
                             const std::vector<Column<DefElem>>& u, int slot_m);

// Recursive description of a tangent vector at the m-th partial solution.
// A level-0 seed is a constant tangent column at the base point; a level-m
// seed lifts its s-seed through slot m with the n u-seeds as the free part.
struct TangentSeed {
    ColumnQ base;                    // level 0 only
    std::shared_ptr<TangentSeed> s;  // level > 0
    std::vector<TangentSeed> u;      // level > 0: n children, one level down

    int level() const;

    static TangentSeed constant(ColumnQ column);
    static TangentSeed lifted(TangentSeed s_seed, std::vector<TangentSeed> u_seeds);
    // Constant s-chain with all u-seeds zero.
    static TangentSeed constant_chain(const ColumnQ& column, int level, int n);
};

struct DefChart {
    DefRingSpec spec;
    Column<DefElem> solution;                              // p_k
    std::vector<Column<DefElem>> partial;                  // p_0 .. p_k
    std::vector<std::vector<Column<DefElem>>> step_tangents; // per step m: n columns
};

// Builds p_m = p_{m-1} + eps_m^a q_a order by order; steps[m-1] supplies the
// n level-(m-1) seeds for step m. Residual and tangency are re-verified at
// every order and a failure throws.
DefChart def_chart_build(const Hypersurface& H, const std::vector<std::vector<TangentSeed>>& steps);

// Materializes the tangent column described by a seed at the given level of
// an existing chart prefix.
Column<DefElem> tangent_from_seed(const Hypersurface& H, const DefChart& chart,
                                  const TangentSeed& seed);

enum class ParamFlavor { pert, def };

// Free coefficients of a general solution. For pert, A (order 2) and B
// (order 3) must be symmetric in their lower indices and `higher` supplies
// optional rank-(d+1) symmetric tensors for orders d >= 4. For def, A, B, C
// are the three pair tensors and D the triple tensor, no symmetry imposed.
struct SolutionParams {
    ParamFlavor flavor = ParamFlavor::pert;
    TensorMap A;
    TensorMap B;
    TensorMap C;
    TensorMap D;
    std::map<int, TensorMap> higher;
};

struct PertChart {
    PertRingSpec spec;
    Column<PertElem> solution;
};

// Order-by-order solution of F = 0 over Pert_{n,k}: the order-1 part is
// lambda^a s_a; at each order the free tangential part comes from params and
// the normal part cancels the residual along grad F(x_star).
PertChart pert_solve(const Hypersurface& H, const SolutionParams& params, int k);

// Seed tree reproducing the closed-form general deformational solution for
// k <= 3. step_frames[m] holds the n base tangent columns of step m+1
// (the s, t, u frames); params supplies A, B, C, D.
std::vector<std::vector<TangentSeed>> seed_tree_from_params(
    const Hypersurface& H, const SolutionParams& params,
    const std::vector<std::vector<ColumnQ>>& step_frames, int k);

struct TheoremReport {
    bool embed_residual_zero = false;
    bool embed_invariant = false;
    bool def_matches_embed = false;
    bool retract_matches_pert = false;
    std::vector<std::string> failures;

    bool passed() const {
        return embed_residual_zero && embed_invariant && def_matches_embed && retract_matches_pert;
    }
};

// End-to-end check of the pert/def correspondence: embeds the perturbative
// chart, rebuilds it as a symmetric deformational chart, and retracts back.
TheoremReport verify_theorem(const Hypersurface& H, const SolutionParams& params, int k);

} // namespace pertdef

#endif
