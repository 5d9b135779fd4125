#include <doctest.h>

#include "pertdef/morphisms.hpp"
#include "pertdef/solver.hpp"
#include "test_util.hpp"

using namespace pertdef;
using namespace pertdef::testing;

namespace {

// Independent series oracle: sqrt(1 - l^2) by Newton iteration on y^2 = 1 - l^2
// starting from the constant 1. Quadratic convergence reaches any truncation
// order in a few steps.
PertElem sqrt_one_minus_sq(const PertRingSpec& spec) {
    const PertElem one = PertElem::constant(spec, 1);
    PertElem target = one;
    target.add_term({2}, -1);
    PertElem y = one;
    for (int it = 0; it < 6; ++it)
        y = Rational(1, 2) * (y + target * invert_unit(y));
    return y;
}

Column<DefElem> extend_column(const Column<DefElem>& p, int new_k) {
    Column<DefElem> out;
    out.reserve(p.size());
    for (const auto& e : p) out.push_back(def_extend(e, new_k));
    return out;
}

std::vector<ColumnQ> rand_tangent_mix(Rng& rng, const std::vector<ColumnQ>& kernel, int n) {
    std::vector<ColumnQ> out;
    for (int a = 0; a < n; ++a) {
        ColumnQ v(kernel.front().size(), 0);
        for (const auto& b : kernel) {
            const Rational w = rand_rational(rng);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += w * b[i];
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

TEST_CASE("hypersurface validation") {
    Polynomial F = circle().F;
    CHECK_THROWS_AS(Hypersurface(F, {2, 0}, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypersurface(F, {1, 0}, {{1, 0}}), std::invalid_argument);
    // Vanishing gradient: the origin on x1^2 + x2^2 = 0 is not smooth.
    Polynomial cone(2);
    cone.add_term({2, 0}, 1);
    cone.add_term({0, 2}, 1);
    CHECK_THROWS_AS(Hypersurface(cone, {0, 0}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("default tangent frame") {
    const Hypersurface H = circle();
    const auto frame = default_tangent_frame(H.F, H.base_point, 1);
    REQUIRE(frame.size() == 1);
    CHECK(dot(frame[0], H.gradient()) == 0);
    CHECK_THROWS_AS(default_tangent_frame(H.F, H.base_point, 2), std::invalid_argument);
}

TEST_CASE("residual on the circle") {
    const Hypersurface H = circle();
    const PertRingSpec r13(1, 3);
    SUBCASE("solved column") {
        PertElem x(r13);
        x.add_term({0}, 1);
        x.add_term({2}, Rational(-1, 2));
        CHECK(residual(H.F, Column<PertElem>{x, PertElem::generator(r13, 1)}).is_zero());
    }
    SUBCASE("unsolved column") {
        const Column<PertElem> p = {PertElem::constant(r13, 1), PertElem::generator(r13, 1)};
        PertElem expect(r13);
        expect.add_term({2}, Rational(1, 2));
        CHECK(residual(H.F, p) == expect);
    }
    SUBCASE("base point") {
        CHECK(residual(H.F, constant_column(r13, H.base_point)).is_zero());
    }
    SUBCASE("list form") {
        const auto rs = residual(std::vector<Polynomial>{H.F, H.F},
                                 constant_column(r13, H.base_point));
        REQUIRE(rs.size() == 2);
        CHECK(rs[0].is_zero());
        CHECK(rs[1].is_zero());
    }
}

TEST_CASE("tangent_check") {
    const Hypersurface H = circle();
    SUBCASE("constant columns at the base point") {
        const DefRingSpec r11(1, 1);
        const auto p = constant_column(r11, {1, 0});
        CHECK(tangent_check(H.F, p, constant_column(r11, {0, 1})).is_zero());
        CHECK(tangent_check(H.F, p, constant_column(r11, {1, 0})) ==
              DefElem::constant(r11, 1));
    }
    SUBCASE("second-order chart") {
        const DefRingSpec r12(1, 2);
        const DefElem e1 = DefElem::generator(r12, 1, 1);
        const DefElem e2 = DefElem::generator(r12, 2, 1);
        const Column<DefElem> p = {DefElem::constant(r12, 1) - e1 * e2, e1 + e2};
        const Column<DefElem> q = {-(e1 + e2), DefElem::constant(r12, 1)};
        CHECK(tangent_check(H.F, p, q).is_zero());
    }
    SUBCASE("rejects non-solutions") {
        const DefRingSpec r11(1, 1);
        const auto p = constant_column(r11, {2, 0});
        CHECK_THROWS_AS(tangent_check(H.F, p, p), std::invalid_argument);
    }
}

TEST_CASE("tangent_lift") {
    const Hypersurface H = circle();
    SUBCASE("circle at first order") {
        const DefRingSpec r11(1, 1);
        const DefElem e1 = DefElem::generator(r11, 1, 1);
        const Column<DefElem> r = {DefElem::constant(r11, 1), e1};
        const Column<DefElem> t = {DefElem::constant(r11, 0), DefElem::constant(r11, 1)};
        const Column<DefElem> u0 = constant_column(r11, {0, 0});
        const Column<DefElem> q = tangent_lift(H.F, r, {t}, t, {u0}, 1);
        CHECK(q[0] == -e1);
        CHECK(q[1] == DefElem::constant(r11, 1));
        CHECK(tangent_check(H.F, r, q).is_zero());
    }
    SUBCASE("zero hessian means no correction") {
        Polynomial plane(2); // x1 + x2 = 0
        plane.add_term({1, 0}, 1);
        plane.add_term({0, 1}, 1);
        const DefRingSpec r11(1, 1);
        const DefElem e1 = DefElem::generator(r11, 1, 1);
        const Column<DefElem> t = {DefElem::constant(r11, 1), DefElem::constant(r11, -1)};
        const Column<DefElem> r = {e1, -e1};
        const Column<DefElem> u0 = constant_column(r11, {0, 0});
        CHECK(tangent_lift(plane, r, {t}, t, {u0}, 1) == t);
    }
    SUBCASE("non-smooth point rejected") {
        Polynomial cone(2);
        cone.add_term({2, 0}, 1);
        cone.add_term({0, 2}, 1);
        const DefRingSpec r11(1, 1);
        const auto z = constant_column(r11, {0, 0});
        CHECK_THROWS_AS(tangent_lift(cone, z, {z}, z, {z}, 1), std::domain_error);
    }
}

TEST_CASE("def_chart_build on the circle") {
    const Hypersurface H = circle();
    SUBCASE("k = 1 is the first-order chart") {
        const DefChart chart = def_chart_build(H, {{TangentSeed::constant({0, 1})}});
        const DefRingSpec r11(1, 1);
        CHECK(chart.solution[0] == DefElem::constant(r11, 1));
        CHECK(chart.solution[1] == DefElem::generator(r11, 1, 1));
    }
    SUBCASE("k = 2 reproduces the dual-number square root") {
        const DefChart chart = def_chart_build(
            H, {{TangentSeed::constant({0, 1})}, {TangentSeed::constant_chain({0, 1}, 1, 1)}});
        const DefRingSpec r12(1, 2);
        const DefElem e1 = DefElem::generator(r12, 1, 1);
        const DefElem e2 = DefElem::generator(r12, 2, 1);
        CHECK(chart.solution[0] == DefElem::constant(r12, 1) - e1 * e2);
        CHECK(chart.solution[1] == e1 + e2);
        CHECK(residual(H.F, chart.solution).is_zero());
    }
    SUBCASE("seed level mismatch throws") {
        CHECK_THROWS_AS(def_chart_build(H, {{TangentSeed::constant_chain({0, 1}, 1, 1)}}),
                        std::invalid_argument);
    }
}

TEST_CASE("pert_solve on the circle") {
    const Hypersurface H = circle();
    SolutionParams params;

    SUBCASE("k = 1") {
        const PertChart chart = pert_solve(H, params, 1);
        CHECK(chart.solution[0] == PertElem::constant(chart.spec, 1));
        CHECK(chart.solution[1] == PertElem::generator(chart.spec, 1));
    }
    SUBCASE("k = 2 truncated square root") {
        const PertChart chart = pert_solve(H, params, 2);
        PertElem x(chart.spec);
        x.add_term({0}, 1);
        x.add_term({2}, Rational(-1, 2));
        CHECK(chart.solution[0] == x);
        CHECK(chart.solution[1] == PertElem::generator(chart.spec, 1));
    }
    SUBCASE("k = 3 x-coefficients are (1, 0, -1/2, 0)") {
        const PertChart chart = pert_solve(H, params, 3);
        CHECK(chart.solution[0].coeff({0}) == 1);
        CHECK(chart.solution[0].coeff({1}) == 0);
        CHECK(chart.solution[0].coeff({2}) == Rational(-1, 2));
        CHECK(chart.solution[0].coeff({3}) == 0);
        CHECK(chart.solution[0] == sqrt_one_minus_sq(chart.spec));
    }
    SUBCASE("k = 6 matches the Newton series oracle to all orders") {
        const PertChart chart = pert_solve(H, params, 6);
        CHECK(chart.solution[0] == sqrt_one_minus_sq(chart.spec));
        CHECK(residual(H.F, chart.solution).is_zero());
    }
    SUBCASE("asymmetric A is rejected") {
        Rng rng(42);
        const Hypersurface Q = rand_unit_quadric(rng, 4, 2);
        SolutionParams bad;
        bad.A[{1, 1, 2}] = 1; // no matching {1, 2, 1} entry
        CHECK_THROWS_AS(pert_solve(Q, bad, 2), std::invalid_argument);
    }
}

TEST_CASE("perturbative chart of a normalized quadric matches the closed form") {
    Rng rng(20240810);
    for (int trial = 0; trial < 3; ++trial) {
        const Hypersurface H = rand_unit_quadric(rng, 4, 2);
        REQUIRE(dot(H.gradient(), H.gradient()) == 1);
        SolutionParams params;
        params.A = rand_symmetric_tensor(rng, 2, 2);
        params.B = rand_symmetric_tensor(rng, 2, 3);
        const PertChart chart = pert_solve(H, params, 3);
        CHECK(residual(H.F, chart.solution).is_zero());
        const Column<PertElem> oracle = pert_closed_form_k3(H, params.A, params.B);
        for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(chart.solution[i] == oracle[i]);
    }
}

TEST_CASE("deformational chart of a normalized quadric matches the closed form") {
    Rng rng(20240811);
    for (int trial = 0; trial < 3; ++trial) {
        const Hypersurface H = rand_unit_quadric(rng, 4, 2);
        const auto kernel = default_tangent_frame(H.F, H.base_point, 3);
        SolutionParams params;
        params.flavor = ParamFlavor::def;
        params.A = rand_tensor(rng, 2, 2);
        params.B = rand_tensor(rng, 2, 2);
        params.C = rand_tensor(rng, 2, 2);
        params.D = rand_tensor(rng, 2, 3);
        const std::vector<ColumnQ> s = H.tangent_frame;
        const std::vector<ColumnQ> t = rand_tangent_mix(rng, kernel, 2);
        const std::vector<ColumnQ> u = rand_tangent_mix(rng, kernel, 2);

        const DefChart chart = def_chart_build(H, seed_tree_from_params(H, params, {s, t, u}, 3));
        CHECK(residual(H.F, chart.solution).is_zero());
        const Column<DefElem> oracle = def_closed_form_k3(H, params.A, params.B, params.C,
                                                          params.D, s, t, u);
        for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(chart.solution[i] == oracle[i]);
    }
}

TEST_CASE("verify_theorem") {
    SUBCASE("circle k = 2 with zero free part") {
        const Hypersurface H = circle();
        const TheoremReport report = verify_theorem(H, SolutionParams{}, 2);
        CHECK(report.passed());
        CHECK(report.failures.empty());
    }
    SUBCASE("circle k = 1") {
        CHECK(verify_theorem(circle(), SolutionParams{}, 1).passed());
    }
    SUBCASE("quadric k = 3 with random symmetric parameters") {
        Rng rng(20240812);
        const Hypersurface H = rand_unit_quadric(rng, 4, 2);
        SolutionParams params;
        params.A = rand_symmetric_tensor(rng, 2, 2);
        params.B = rand_symmetric_tensor(rng, 2, 3);
        const TheoremReport report = verify_theorem(H, params, 3);
        INFO((report.failures.empty() ? std::string() : report.failures.front()));
        CHECK(report.passed());
    }
}

TEST_CASE("random cubic hypersurfaces: exact residuals and tangency throughout") {
    Rng rng(20240813);
    for (int trial = 0; trial < 5; ++trial) {
        const int N = 3 + trial % 2;
        const Hypersurface H = rand_hypersurface(rng, N, 1, 3);
        std::vector<std::vector<TangentSeed>> steps;
        for (int m = 1; m <= 3; ++m)
            steps.push_back({TangentSeed::constant_chain(H.tangent_frame[0], m - 1, 1)});
        // def_chart_build re-verifies residual and tangency at every order
        // and throws on failure; reaching here is the assertion.
        const DefChart chart = def_chart_build(H, steps);
        CHECK(residual(H.F, chart.solution).is_zero());

        const PertChart pert = pert_solve(H, SolutionParams{}, 4);
        CHECK(residual(H.F, pert.solution).is_zero());
    }
}

TEST_CASE("order consistency: charts survive ring extension") {
    const Hypersurface H = circle();
    const DefChart chart = def_chart_build(
        H, {{TangentSeed::constant({0, 1})}, {TangentSeed::constant_chain({0, 1}, 1, 1)}});
    const Column<DefElem> extended = extend_column(chart.solution, 4);
    CHECK(extended.front().spec() == DefRingSpec(1, 4));
    CHECK(residual(H.F, extended).is_zero());
}
