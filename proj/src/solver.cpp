#include "pertdef/solver.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pertdef/morphisms.hpp"
#include "pertdef/serialize.hpp"

namespace pertdef {

namespace {

Rational factorial(int d) {
    Rational f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

} // namespace

Hypersurface::Hypersurface(Polynomial F_, ColumnQ base_point_, std::vector<ColumnQ> tangent_frame_,
                           std::vector<ColumnQ> normal_frame_)
    : F(std::move(F_)),
      base_point(std::move(base_point_)),
      tangent_frame(std::move(tangent_frame_)),
      normal_frame(std::move(normal_frame_)) {
    const auto N = static_cast<std::size_t>(F.num_vars());
    if (base_point.size() != N) throw std::invalid_argument("Hypersurface: base point dimension != N");
    if (eval(F, base_point) != 0)
        throw std::invalid_argument("Hypersurface: base point does not satisfy F = 0");
    const ColumnQ g = gradient_at(F, base_point);
    if (std::all_of(g.begin(), g.end(), [](const Rational& v) { return v == 0; }))
        throw std::invalid_argument("Hypersurface: base point is not smooth (vanishing gradient)");
    if (tangent_frame.empty()) throw std::invalid_argument("Hypersurface: empty tangent frame");
    if (normal_frame.empty()) normal_frame = tangent_frame;
    if (normal_frame.size() != tangent_frame.size())
        throw std::invalid_argument("Hypersurface: normal frame size != tangent frame size");
    for (const auto& s : tangent_frame) {
        if (s.size() != N) throw std::invalid_argument("Hypersurface: frame column dimension != N");
        if (dot(s, g) != 0)
            throw std::invalid_argument("Hypersurface: tangent frame column not orthogonal to gradient");
    }
    for (const auto& e : normal_frame) {
        if (e.size() != N) throw std::invalid_argument("Hypersurface: frame column dimension != N");
        if (dot(e, g) != 0)
            throw std::invalid_argument("Hypersurface: normal frame column not orthogonal to gradient");
    }
}

std::vector<ColumnQ> default_tangent_frame(const Polynomial& F, const ColumnQ& x_star, int n) {
    const ColumnQ g = gradient_at(F, x_star);
    std::size_t pivot = g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != 0) { pivot = i; break; }
    if (pivot == g.size())
        throw std::invalid_argument("default_tangent_frame: vanishing gradient");
    std::vector<ColumnQ> frame;
    for (std::size_t j = 0; j < g.size() && frame.size() < static_cast<std::size_t>(n); ++j) {
        if (j == pivot) continue;
        ColumnQ v(g.size(), 0);
        v[j] = 1;
        v[pivot] = -g[j] / g[pivot];
        frame.push_back(std::move(v));
    }
    if (frame.size() < static_cast<std::size_t>(n))
        throw std::invalid_argument("default_tangent_frame: n exceeds the tangent space dimension");
    return frame;
}

Column<DefElem> tangent_lift(const Polynomial& F, const Column<DefElem>& r,
                             const std::vector<Column<DefElem>>& t, const Column<DefElem>& s,
                             const std::vector<Column<DefElem>>& u, int slot_m) {
    check_column(r);
    const DefRingSpec spec = r.front().spec();
    if (slot_m < 1 || slot_m > spec.k) throw std::invalid_argument("tangent_lift: slot out of range");
    if (t.size() != u.size()) throw std::invalid_argument("tangent_lift: t/u count mismatch");
    const int N = F.num_vars();

    const Column<DefElem> grad_r = gradient_at(F, r);
    const DefElem gg = dot(grad_r, grad_r);
    const DefElem inv_gg = invert_unit(gg); // throws for a non-smooth point

    // Hessian of F at r, computed once.
    std::vector<std::vector<DefElem>> hess(static_cast<std::size_t>(N));
    for (int i = 1; i <= N; ++i) {
        hess[static_cast<std::size_t>(i - 1)].resize(static_cast<std::size_t>(N), DefElem(spec));
        for (int j = i; j <= N; ++j)
            hess[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                poly_eval(partial_derivative(partial_derivative(F, i), j), r);
    }
    auto hess_at = [&](int i, int j) -> const DefElem& {
        if (i > j) std::swap(i, j);
        return hess[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    };
    auto bilinear = [&](const Column<DefElem>& v1, const Column<DefElem>& v2) {
        DefElem acc(spec);
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                acc = acc + hess_at(i, j) * v1[static_cast<std::size_t>(i - 1)] * v2[static_cast<std::size_t>(j - 1)];
        return acc;
    };

    Column<DefElem> q = s;
    for (std::size_t a = 0; a < t.size(); ++a) {
        const DefElem eps = DefElem::generator(spec, slot_m, static_cast<int>(a) + 1);
        const DefElem coeff = bilinear(s, t[a]) * inv_gg;
        for (std::size_t i = 0; i < q.size(); ++i)
            q[i] = q[i] - eps * coeff * grad_r[i] + eps * u[a][i];
    }
    return q;
}

int TangentSeed::level() const { return s ? 1 + s->level() : 0; }

TangentSeed TangentSeed::constant(ColumnQ column) {
    TangentSeed seed;
    seed.base = std::move(column);
    return seed;
}

TangentSeed TangentSeed::lifted(TangentSeed s_seed, std::vector<TangentSeed> u_seeds) {
    const int child_level = s_seed.level();
    for (const auto& c : u_seeds)
        if (c.level() != child_level)
            throw std::invalid_argument("TangentSeed: u-seed level differs from s-seed level");
    TangentSeed seed;
    seed.s = std::make_shared<TangentSeed>(std::move(s_seed));
    seed.u = std::move(u_seeds);
    return seed;
}

TangentSeed TangentSeed::constant_chain(const ColumnQ& column, int level, int n) {
    if (level == 0) return constant(column);
    const ColumnQ zero(column.size(), 0);
    std::vector<TangentSeed> zeros;
    zeros.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) zeros.push_back(constant_chain(zero, level - 1, n));
    return lifted(constant_chain(column, level - 1, n), std::move(zeros));
}

Column<DefElem> tangent_from_seed(const Hypersurface& H, const DefChart& chart,
                                  const TangentSeed& seed) {
    const int m = seed.level();
    if (m == 0) {
        if (seed.base.size() != static_cast<std::size_t>(H.N()))
            throw std::invalid_argument("tangent seed: column dimension != N");
        if (dot(seed.base, H.gradient()) != 0)
            throw std::invalid_argument("tangent seed: base column not orthogonal to grad F(x_star)");
        return constant_column(chart.spec, seed.base);
    }
    if (static_cast<std::size_t>(m) > chart.step_tangents.size())
        throw std::invalid_argument("tangent seed: level exceeds chart depth");
    if (seed.u.size() != static_cast<std::size_t>(H.n()))
        throw std::invalid_argument("tangent seed: expected one u-seed per deformation index");
    const Column<DefElem> s_col = tangent_from_seed(H, chart, *seed.s);
    std::vector<Column<DefElem>> u_cols;
    u_cols.reserve(seed.u.size());
    for (const auto& child : seed.u) u_cols.push_back(tangent_from_seed(H, chart, child));
    return tangent_lift(H.F, chart.partial[static_cast<std::size_t>(m - 1)],
                        chart.step_tangents[static_cast<std::size_t>(m - 1)], s_col, u_cols, m);
}

DefChart def_chart_build(const Hypersurface& H, const std::vector<std::vector<TangentSeed>>& steps) {
    const int K = static_cast<int>(steps.size());
    if (K < 1) throw std::invalid_argument("def_chart_build: need at least one step");
    DefChart chart;
    chart.spec = DefRingSpec(H.n(), K);
    chart.partial.push_back(constant_column(chart.spec, H.base_point));
    for (int m = 1; m <= K; ++m) {
        const auto& step = steps[static_cast<std::size_t>(m - 1)];
        if (step.size() != static_cast<std::size_t>(H.n()))
            throw std::invalid_argument("def_chart_build: expected one seed per deformation index");
        std::vector<Column<DefElem>> q;
        q.reserve(step.size());
        for (const auto& seed : step) {
            if (seed.level() != m - 1)
                throw std::invalid_argument("def_chart_build: seed level must be step - 1");
            q.push_back(tangent_from_seed(H, chart, seed));
        }
        Column<DefElem> p = chart.partial.back();
        for (std::size_t a = 0; a < q.size(); ++a) {
            const DefElem eps = DefElem::generator(chart.spec, m, static_cast<int>(a) + 1);
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = p[i] + eps * q[a][i];
        }
        if (!residual(H.F, p).is_zero())
            throw std::logic_error("def_chart_build: nonzero residual at order " + std::to_string(m));
        for (const auto& qa : q)
            if (!tangent_check(H.F, chart.partial.back(), qa).is_zero())
                throw std::logic_error("def_chart_build: step column fails the tangent condition");
        chart.step_tangents.push_back(std::move(q));
        chart.partial.push_back(std::move(p));
    }
    chart.solution = chart.partial.back();
    return chart;
}

PertChart pert_solve(const Hypersurface& H, const SolutionParams& params, int k) {
    if (params.flavor != ParamFlavor::pert)
        throw std::invalid_argument("pert_solve: params flavor must be pert");
    if (k < 1) throw std::invalid_argument("pert_solve: k must be >= 1");
    const int n = H.n();
    check_tensor_shape(params.A, 2, n, "A");
    check_tensor_shape(params.B, 3, n, "B");
    check_tensor_symmetric(params.A, "A");
    check_tensor_symmetric(params.B, "B");
    for (const auto& [d, t] : params.higher) {
        if (d < 2 || d > k) throw std::invalid_argument("pert_solve: higher tensor order out of range");
        check_tensor_shape(t, d, n, "order-" + std::to_string(d));
        check_tensor_symmetric(t, "order-" + std::to_string(d));
    }

    const PertRingSpec spec(n, k);
    Column<PertElem> p = constant_column(spec, H.base_point);
    for (int a = 1; a <= n; ++a) {
        const PertElem lam = PertElem::generator(spec, a);
        const ColumnQ& s = H.tangent_frame[static_cast<std::size_t>(a - 1)];
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = p[i] + lam * PertElem::constant(spec, s[i]);
    }

    const ColumnQ grad = H.gradient();
    const Rational gg = dot(grad, grad);

    auto free_tensor = [&](int d) -> const TensorMap* {
        if (d == 2) return &params.A;
        if (d == 3) return &params.B;
        auto it = params.higher.find(d);
        return it == params.higher.end() ? nullptr : &it->second;
    };

    for (int d = 2; d <= k; ++d) {
        // Free tangential part: -(1/d!) T^g_{a1..ad} lambda^{a1..ad} e_g.
        if (const TensorMap* T = free_tensor(d)) {
            const Rational scale = Rational(-1) / factorial(d);
            for (const auto& [key, value] : *T) {
                if (value == 0) continue;
                ExpVec exps(static_cast<std::size_t>(n), 0);
                for (std::size_t j = 1; j < key.size(); ++j)
                    exps[static_cast<std::size_t>(key[j] - 1)] += 1;
                const PertElem mono = PertElem::monomial(spec, exps, scale * value);
                const ColumnQ& e = H.normal_frame[static_cast<std::size_t>(key[0] - 1)];
                for (std::size_t i = 0; i < p.size(); ++i)
                    p[i] = p[i] + mono * PertElem::constant(spec, e[i]);
            }
        }
        // Normal part: cancel the order-d residual along grad F(x_star).
        const PertElem rd = residual(H.F, p).graded_part(static_cast<std::uint64_t>(d));
        for (const auto& [exps, c] : rd.terms()) {
            const PertElem mono = PertElem::monomial(spec, exps, -c / gg);
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = p[i] + mono * PertElem::constant(spec, grad[i]);
        }
    }

    if (!residual(H.F, p).is_zero())
        throw std::logic_error("pert_solve: nonzero residual after all orders");
    return PertChart{spec, std::move(p)};
}

std::vector<std::vector<TangentSeed>> seed_tree_from_params(
    const Hypersurface& H, const SolutionParams& params,
    const std::vector<std::vector<ColumnQ>>& step_frames, int k) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("seed_tree_from_params: only k <= 3 has a closed-form seed tree");
    if (step_frames.size() < static_cast<std::size_t>(k))
        throw std::invalid_argument("seed_tree_from_params: need one frame per step");
    const int n = H.n();
    const std::size_t N = static_cast<std::size_t>(H.N());
    check_tensor_shape(params.A, 2, n, "A");
    check_tensor_shape(params.B, 2, n, "B");
    check_tensor_shape(params.C, 2, n, "C");
    check_tensor_shape(params.D, 3, n, "D");

    // -sum_g T^g_{lower} e_g as a constant column.
    auto contraction = [&](const TensorMap& T, const std::vector<int>& lower) {
        ColumnQ col(N, 0);
        for (int g = 1; g <= n; ++g) {
            std::vector<int> key{g};
            key.insert(key.end(), lower.begin(), lower.end());
            const Rational v = tensor_value(T, key);
            if (v == 0) continue;
            const ColumnQ& e = H.normal_frame[static_cast<std::size_t>(g - 1)];
            for (std::size_t i = 0; i < N; ++i) col[i] -= v * e[i];
        }
        return col;
    };

    std::vector<std::vector<TangentSeed>> steps;
    // Step 1: constant tangent columns.
    {
        std::vector<TangentSeed> s1;
        for (int a = 1; a <= n; ++a)
            s1.push_back(TangentSeed::constant(step_frames[0][static_cast<std::size_t>(a - 1)]));
        steps.push_back(std::move(s1));
    }
    if (k >= 2) {
        std::vector<TangentSeed> s2;
        for (int b = 1; b <= n; ++b) {
            std::vector<TangentSeed> u;
            for (int a = 1; a <= n; ++a)
                u.push_back(TangentSeed::constant(contraction(params.A, {a, b})));
            s2.push_back(TangentSeed::lifted(
                TangentSeed::constant(step_frames[1][static_cast<std::size_t>(b - 1)]), std::move(u)));
        }
        steps.push_back(std::move(s2));
    }
    if (k >= 3) {
        // Hessian and gradient data at the base point, for the correction
        // below.
        const ColumnQ grad = H.gradient();
        const Rational gg = dot(grad, grad);
        std::vector<std::vector<Rational>> hess(N, std::vector<Rational>(N, Rational(0)));
        for (int i = 1; i <= static_cast<int>(N); ++i)
            for (int j = i; j <= static_cast<int>(N); ++j) {
                const Rational v =
                    eval(partial_derivative(partial_derivative(H.F, i), j), H.base_point);
                hess[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
                hess[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = v;
            }
        auto hess_apply = [&](const ColumnQ& v) {
            ColumnQ out(N, 0);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j) out[i] += hess[i][j] * v[j];
            return out;
        };
        auto hess_form = [&](const ColumnQ& v, const ColumnQ& w) { return dot(hess_apply(v), w); };

        std::vector<TangentSeed> s3;
        for (int g = 1; g <= n; ++g) {
            const ColumnQ& u_g = step_frames[2][static_cast<std::size_t>(g - 1)];
            // s-branch: the third frame column corrected by B at slot 1.
            std::vector<TangentSeed> ub;
            for (int a = 1; a <= n; ++a)
                ub.push_back(TangentSeed::constant(contraction(params.B, {a, g})));
            TangentSeed s_branch = TangentSeed::lifted(TangentSeed::constant(u_g), std::move(ub));
            // u-branch per slot-2 index: C at the base, D one level down. The
            // D-children additionally absorb the tangential part of the
            // second-step correction, so the final chart carries exactly
            // -D^d_{abg} e_d at the triple order: the lift through the first-
            // order solution contributes an extra
            //   (d2F(u_g, t_b)/gg) * [Hess s_a - (d2F(grad, s_a)/gg) grad]
            // which is tangent at the base point and must be cancelled here.
            std::vector<TangentSeed> u_branch;
            for (int b = 1; b <= n; ++b) {
                const ColumnQ& t_b = step_frames[1][static_cast<std::size_t>(b - 1)];
                const Rational ut = hess_form(u_g, t_b) / gg;
                std::vector<TangentSeed> ud;
                for (int a = 1; a <= n; ++a) {
                    const ColumnQ& s_a = step_frames[0][static_cast<std::size_t>(a - 1)];
                    ColumnQ col = contraction(params.D, {a, b, g});
                    const ColumnQ hs = hess_apply(s_a);
                    const Rational gs = hess_form(grad, s_a) / gg;
                    for (std::size_t i = 0; i < N; ++i) col[i] += ut * (hs[i] - gs * grad[i]);
                    ud.push_back(TangentSeed::constant(std::move(col)));
                }
                u_branch.push_back(TangentSeed::lifted(
                    TangentSeed::constant(contraction(params.C, {b, g})), std::move(ud)));
            }
            s3.push_back(TangentSeed::lifted(std::move(s_branch), std::move(u_branch)));
        }
        steps.push_back(std::move(s3));
    }
    return steps;
}

namespace {

// First differing monomial between two Def elements, for failure reports.
std::string describe_diff(const DefElem& got, const DefElem& want) {
    const DefElem d = got - want;
    if (d.is_zero()) return "";
    const auto& [mono, c] = *d.terms().begin();
    return "monomial '" + def_monomial_to_string(mono) + "' differs by " + rational_to_string(c);
}

std::string describe_diff(const PertElem& got, const PertElem& want) {
    const PertElem d = got - want;
    if (d.is_zero()) return "";
    const auto& [mono, c] = *d.terms().begin();
    return "monomial '" + pert_monomial_to_string(mono) + "' differs by " + rational_to_string(c);
}

} // namespace

TheoremReport verify_theorem(const Hypersurface& H, const SolutionParams& params, int k) {
    if (params.flavor != ParamFlavor::pert)
        throw std::invalid_argument("verify_theorem: params flavor must be pert");
    TheoremReport report;

    const PertChart pert = pert_solve(H, params, k);
    const Column<DefElem> embedded = embed_sym(pert.solution);

    report.embed_residual_zero = residual(H.F, embedded).is_zero();
    if (!report.embed_residual_zero)
        report.failures.push_back("embedded perturbative chart has nonzero residual");

    report.embed_invariant = true;
    for (const auto& e : embedded)
        if (!is_invariant(e)) {
            report.embed_invariant = false;
            report.failures.push_back("embedded perturbative chart is not slot-invariant");
            break;
        }

    // Symmetric identifications: one frame, A = B = C, D := the pert
    // third-order tensor.
    SolutionParams def_params;
    def_params.flavor = ParamFlavor::def;
    def_params.A = params.A;
    def_params.B = params.A;
    def_params.C = params.A;
    def_params.D = params.B;
    const std::vector<std::vector<ColumnQ>> frames(static_cast<std::size_t>(k), H.tangent_frame);
    const DefChart def_chart =
        def_chart_build(H, seed_tree_from_params(H, def_params, frames, k));

    report.def_matches_embed = true;
    for (std::size_t i = 0; i < embedded.size(); ++i)
        if (!(def_chart.solution[i] == embedded[i])) {
            report.def_matches_embed = false;
            report.failures.push_back("coordinate " + std::to_string(i + 1) + ": " +
                                      describe_diff(def_chart.solution[i], embedded[i]));
        }

    report.retract_matches_pert = true;
    for (std::size_t i = 0; i < embedded.size(); ++i) {
        if (!is_invariant(def_chart.solution[i])) {
            report.retract_matches_pert = false;
            report.failures.push_back("def chart coordinate " + std::to_string(i + 1) +
                                      " is not invariant, cannot retract");
            continue;
        }
        const PertElem back = retract(def_chart.solution[i]);
        if (!(back == pert.solution[i])) {
            report.retract_matches_pert = false;
            report.failures.push_back("retract of coordinate " + std::to_string(i + 1) + ": " +
                                      describe_diff(back, pert.solution[i]));
        }
    }
    return report;
}

} // namespace pertdef
