#include <doctest.h>

#include "pertdef/column.hpp"
#include "pertdef/def.hpp"
#include "pertdef/parser.hpp"
#include "pertdef/pert.hpp"
#include "pertdef/polynomial.hpp"
#include "pertdef/serialize.hpp"
#include "test_util.hpp"

using namespace pertdef;
using namespace pertdef::testing;

TEST_CASE("pert arithmetic") {
    const PertRingSpec r12(1, 2);
    const PertElem one = PertElem::constant(r12, 1);
    const PertElem l = PertElem::generator(r12, 1);

    SUBCASE("(1+l)^2 = 1 + 2l + l^2") {
        PertElem expect(r12);
        expect.add_term({0}, 1);
        expect.add_term({1}, 2);
        expect.add_term({2}, 1);
        CHECK((one + l) * (one + l) == expect);
    }
    SUBCASE("l * l^2 = 0 past the nilpotency order") {
        CHECK((l * l * l).is_zero());
        CHECK((l * (l * l)).is_zero());
    }
    SUBCASE("(l1+l2)^2 in two generators") {
        const PertRingSpec r22(2, 2);
        const PertElem a = PertElem::generator(r22, 1) + PertElem::generator(r22, 2);
        PertElem expect(r22);
        expect.add_term({2, 0}, 1);
        expect.add_term({1, 1}, 2);
        expect.add_term({0, 2}, 1);
        CHECK(a * a == expect);
    }
    SUBCASE("mismatched specs throw") {
        const PertElem other = PertElem::generator(PertRingSpec(2, 2), 1);
        CHECK_THROWS_AS((void)(l + other), std::invalid_argument);
        CHECK_THROWS_AS((void)(l * other), std::invalid_argument);
    }
    SUBCASE("spec validation") {
        CHECK_THROWS_AS(PertRingSpec(1, 0), std::invalid_argument);
        CHECK_THROWS_AS(PertRingSpec(0, 1), std::invalid_argument);
        CHECK_THROWS_AS(PertElem::monomial(r12, {3}, 1), std::invalid_argument);
    }
}

TEST_CASE("def arithmetic") {
    SUBCASE("generators sharing a slot square to zero") {
        const DefRingSpec r22(2, 2);
        CHECK((DefElem::generator(r22, 1, 1) * DefElem::generator(r22, 1, 2)).is_zero());
    }
    SUBCASE("(e1+e2)^2 = 2 e1 e2") {
        const DefRingSpec r12(1, 2);
        const DefElem a = DefElem::generator(r12, 1, 1) + DefElem::generator(r12, 2, 1);
        DefElem expect(r12);
        expect.add_term({{1, 1}, {2, 1}}, 2);
        CHECK(a * a == expect);
    }
    SUBCASE("(1+e)(1-e) = 1") {
        const DefRingSpec r11(1, 1);
        const DefElem one = DefElem::constant(r11, 1);
        const DefElem e = DefElem::generator(r11, 1, 1);
        CHECK((one + e) * (one - e) == one);
    }
    SUBCASE("mismatched specs throw") {
        const DefElem a = DefElem::generator(DefRingSpec(1, 2), 1, 1);
        const DefElem b = DefElem::generator(DefRingSpec(1, 3), 1, 1);
        CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
    }
}

TEST_CASE("partial derivatives") {
    SUBCASE("polynomial power rule") {
        Polynomial f(2);
        f.add_term({2, 0}, 1);
        f.add_term({1, 1}, 1);
        Polynomial expect(2);
        expect.add_term({1, 0}, 2);
        expect.add_term({0, 1}, 1);
        CHECK(partial_derivative(f, 1) == expect);
        CHECK(partial_derivative(Polynomial::constant(2, 5), 1).is_zero());
    }
    SUBCASE("truncated ring") {
        const PertRingSpec r22(2, 2);
        const PertElem p = PertElem::generator(r22, 1) * PertElem::generator(r22, 2);
        CHECK(partial_derivative(p, 1) == PertElem::generator(r22, 2));
        CHECK_THROWS_AS(partial_derivative(p, 3), std::out_of_range);
    }
}

TEST_CASE("poly_eval on the circle") {
    Polynomial F(2);
    F.add_term({2, 0}, Rational(1, 2));
    F.add_term({0, 2}, Rational(1, 2));
    F.add_term({0, 0}, Rational(-1, 2));

    const PertRingSpec r13(1, 3);
    SUBCASE("base point") {
        CHECK(poly_eval(F, constant_column(r13, {1, 0})).is_zero());
    }
    SUBCASE("naive column leaves a quadratic residue") {
        const Column<PertElem> p = {PertElem::constant(r13, 1), PertElem::generator(r13, 1)};
        PertElem expect(r13);
        expect.add_term({2}, Rational(1, 2));
        CHECK(poly_eval(F, p) == expect);
    }
    SUBCASE("truncated square root solves exactly") {
        // Oracle: third-order Taylor coefficients of sqrt(1 - l^2) are
        // (1, 0, -1/2, 0); the l^4/8 tail dies in the truncation.
        PertElem x(r13);
        x.add_term({0}, 1);
        x.add_term({2}, Rational(-1, 2));
        const Column<PertElem> p = {x, PertElem::generator(r13, 1)};
        CHECK(poly_eval(F, p).is_zero());
    }
    SUBCASE("dimension mismatch throws") {
        const Column<PertElem> p = {PertElem::constant(r13, 1)};
        CHECK_THROWS_AS(poly_eval(F, p), std::invalid_argument);
    }
}

TEST_CASE("invert_unit") {
    SUBCASE("geometric series") {
        const PertRingSpec r12(1, 2);
        const PertElem a = PertElem::constant(r12, 1) - PertElem::generator(r12, 1);
        PertElem expect(r12);
        expect.add_term({0}, 1);
        expect.add_term({1}, 1);
        expect.add_term({2}, 1);
        CHECK(invert_unit(a) == expect);
    }
    SUBCASE("dual number") {
        const DefRingSpec r12(1, 2);
        const DefElem a = DefElem::constant(r12, 1) + DefElem::generator(r12, 1, 1);
        CHECK(invert_unit(a) == DefElem::constant(r12, 1) - DefElem::generator(r12, 1, 1));
    }
    SUBCASE("constant") {
        const PertRingSpec r12(1, 2);
        CHECK(invert_unit(PertElem::constant(r12, 2)) == PertElem::constant(r12, Rational(1, 2)));
    }
    SUBCASE("non-units throw") {
        const PertRingSpec r12(1, 2);
        CHECK_THROWS_AS(invert_unit(PertElem::generator(r12, 1)), std::domain_error);
        CHECK_THROWS_AS(invert_unit(DefElem::generator(DefRingSpec(1, 1), 1, 1)),
                        std::domain_error);
    }
}

TEST_CASE("dot products") {
    SUBCASE("orthogonal constants") {
        const DefRingSpec r11(1, 1);
        CHECK(dot(constant_column(r11, {1, 0}), constant_column(r11, {0, 1})).is_zero());
    }
    SUBCASE("cross terms cancel") {
        const DefRingSpec r11(1, 1);
        const DefElem e = DefElem::generator(r11, 1, 1);
        const Column<DefElem> r = {DefElem::constant(r11, 1), e};
        const Column<DefElem> s = {-e, DefElem::constant(r11, 1)};
        CHECK(dot(r, s).is_zero());
    }
    SUBCASE("squares add") {
        const PertRingSpec r12(1, 2);
        const PertElem l = PertElem::generator(r12, 1);
        const Column<PertElem> v = {l, l};
        PertElem expect(r12);
        expect.add_term({2}, 2);
        CHECK(dot(v, v) == expect);
    }
}

TEST_CASE("ring axioms on random elements") {
    Rng rng(20240801);
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 4; ++k) {
            const PertRingSpec ps(n, k);
            const DefRingSpec ds(n, k);
            for (int trial = 0; trial < 8; ++trial) {
                const PertElem a = rand_pert(rng, ps), b = rand_pert(rng, ps),
                               c = rand_pert(rng, ps);
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                CHECK(a * (b + c) == a * b + a * c);
                CHECK((a * b) * c == a * (b * c));

                const DefElem x = rand_def(rng, ds), y = rand_def(rng, ds),
                              z = rand_def(rng, ds);
                CHECK(x + y == y + x);
                CHECK(x * y == y * x);
                CHECK(x * (y + z) == x * y + x * z);
                CHECK((x * y) * z == x * (y * z));
            }
        }
}

TEST_CASE("nilpotency") {
    Rng rng(77);
    SUBCASE("maximal-ideal elements vanish at power k+1") {
        for (int k = 1; k <= 4; ++k) {
            const PertRingSpec spec(2, k);
            for (int trial = 0; trial < 10; ++trial) {
                PertElem a = rand_pert(rng, spec);
                a = a - PertElem::constant(spec, a.constant_term());
                PertElem pow = PertElem::constant(spec, 1);
                for (int j = 0; j <= k; ++j) pow = pow * a;
                CHECK(pow.is_zero());
            }
        }
    }
    SUBCASE("no output monomial ever repeats a slot") {
        const DefRingSpec spec(3, 4);
        for (int trial = 0; trial < 20; ++trial) {
            const DefElem prod = rand_def(rng, spec) * rand_def(rng, spec);
            for (const auto& [mono, coeff] : prod.terms()) {
                for (std::size_t i = 1; i < mono.size(); ++i)
                    CHECK(mono[i - 1].first < mono[i].first);
                CHECK(coeff != 0);
            }
        }
    }
}

TEST_CASE("poly_eval is a ring morphism") {
    Rng rng(1234);
    std::uniform_int_distribution<int> deg(0, 2);
    auto rand_poly = [&](int N) {
        Polynomial f(N);
        std::uniform_int_distribution<int> var(0, N - 1);
        for (int t = 0; t < 5; ++t) {
            ExpVec exps(static_cast<std::size_t>(N), 0);
            for (int j = deg(rng); j > 0; --j) exps[static_cast<std::size_t>(var(rng))] += 1;
            f.add_term(exps, rand_rational(rng));
        }
        return f;
    };
    const PertRingSpec spec(2, 3);
    for (int trial = 0; trial < 15; ++trial) {
        const Polynomial F = rand_poly(3), G = rand_poly(3);
        const Column<PertElem> p = {rand_pert(rng, spec), rand_pert(rng, spec),
                                    rand_pert(rng, spec)};
        CHECK(poly_eval(F * G, p) == poly_eval(F, p) * poly_eval(G, p));
        CHECK(poly_eval(F + G, p) == poly_eval(F, p) + poly_eval(G, p));
    }
}

TEST_CASE("invert_unit on random units") {
    Rng rng(555);
    for (int k = 1; k <= 4; ++k) {
        const PertRingSpec ps(2, k);
        const DefRingSpec ds(2, k);
        for (int trial = 0; trial < 10; ++trial) {
            PertElem a = rand_pert(rng, ps);
            a = a + PertElem::constant(ps, rand_nonzero_rational(rng) - a.constant_term());
            CHECK(a * invert_unit(a) == PertElem::constant(ps, 1));

            DefElem b = rand_def(rng, ds);
            b = b + DefElem::constant(ds, rand_nonzero_rational(rng) - b.constant_term());
            CHECK(b * invert_unit(b) == DefElem::constant(ds, 1));
        }
    }
}

TEST_CASE("canonical serialization round-trips") {
    SUBCASE("monomial text forms") {
        CHECK(pert_monomial_to_string({2, 1, 0}) == "l1^2*l2");
        CHECK(pert_monomial_to_string({0, 0}) == "");
        CHECK(parse_pert_monomial("l1^2*l2", 3) == ExpVec{2, 1, 0});
        CHECK(def_monomial_to_string({{1, 2}, {3, 1}}) == "e1_2*e3_1");
        CHECK(parse_def_monomial("e1_2*e3_1") == DefMonomial{{1, 2}, {3, 1}});
        CHECK(parse_def_monomial("").empty());
        CHECK_THROWS_AS(parse_pert_monomial("l0", 2), std::invalid_argument);
        CHECK_THROWS_AS(parse_pert_monomial("l3", 2), std::invalid_argument);
    }
    SUBCASE("rationals") {
        CHECK(rational_to_string(Rational(-3, 6)) == "-1/2");
        CHECK(rational_to_string(Rational(4)) == "4");
        CHECK(parse_rational("7/3") == Rational(7, 3));
        CHECK(parse_rational("-2") == Rational(-2));
        CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    }
    SUBCASE("random elements reparse bit-exactly") {
        Rng rng(999);
        for (int n = 1; n <= 3; ++n)
            for (int k = 1; k <= 4; ++k) {
                const PertRingSpec ps(n, k);
                const DefRingSpec ds(n, k);
                for (int trial = 0; trial < 8; ++trial) {
                    const PertElem a = rand_pert(rng, ps);
                    CHECK(pert_from_string_terms(ps, to_string_terms(a)) == a);
                    const DefElem b = rand_def(rng, ds);
                    CHECK(def_from_string_terms(ds, to_string_terms(b)) == b);
                }
            }
    }
}
