#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starrel/matrep.hpp"
#include "starrel/ncexpr.hpp"
#include "test_support.hpp"

using namespace starrel;
using starrel::testing::oracle_poly_eval;
using starrel::testing::random_expr;
using starrel::testing::random_tuple;
using starrel::testing::rel_err;

namespace {
const NcExpr x = NcExpr::gen("x");
const NcExpr y = NcExpr::gen("y");
} // namespace

TEST_CASE("normalize: unit law, additive inverse, scalar folding") {
    CHECK(normalize(NcExpr::product({NcExpr::unit(), x})).equals(x));
    CHECK(normalize(x + NcExpr::scalar_mul(Complex(-1, 0), x)).is_zero());
    NcExpr folded = normalize(NcExpr::scalar_mul(Complex(2, 0), NcExpr::scalar_mul(Complex(3, 0), x)));
    CHECK(folded.tag() == NcExpr::Tag::ScalarMul);
    CHECK(folded.scalar_value() == Complex(6, 0));
    CHECK(folded.kid().equals(x));
}

TEST_CASE("normalize is idempotent on random trees") {
    Rng rng(42);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y")};
    for (int i = 0; i < 200; ++i) {
        NcExpr e = random_expr(gens, rng, 5, true);
        NcExpr n1 = normalize(e);
        CHECK(normalize(n1).equals(n1));
    }
}

TEST_CASE("normalize preserves evaluation") {
    Rng rng(7);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y")};
    for (int i = 0; i < 100; ++i) {
        NcExpr e = random_expr(gens, rng, 5, false);
        RepTuple rho = random_tuple(gens, 3, rng);
        CHECK(rel_err(eval(e, rho), eval(normalize(e), rho)) < 1e-12);
    }
}

TEST_CASE("adjoint: generator, anti-multiplicativity, Hermitian fixed point") {
    NcExpr ax = adjoint(x);
    CHECK(ax.tag() == NcExpr::Tag::Adjoint);
    CHECK(ax.kid().equals(x));

    NcExpr axy = adjoint(NcExpr::product({x, y}));
    CHECK(axy.equals(NcExpr::product({adjoint(y), adjoint(x)})));

    NcExpr herm = x + adjoint(x);
    CHECK(normalize(adjoint(herm)).equals(normalize(herm)));
}

TEST_CASE("adjoint is an involution and conjugates scalars") {
    Rng rng(11);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y"), GeneratorId("z")};
    for (int i = 0; i < 200; ++i) {
        NcExpr e = random_expr(gens, rng, 6, true);
        CHECK(normalize(adjoint(adjoint(e))).equals(normalize(e)));
    }
    NcExpr s = adjoint(NcExpr::scalar_mul(Complex(2, 3), x));
    CHECK(s.tag() == NcExpr::Tag::ScalarMul);
    CHECK(s.scalar_value() == Complex(2, -3));
}

TEST_CASE("adjoint commutes with sqrt/abs/exp on Hermitian arguments") {
    Rng rng(19);
    std::vector<GeneratorId> gens{GeneratorId("x")};
    for (int i = 0; i < 25; ++i) {
        RepTuple rho = random_tuple(gens, 3, rng);
        NcExpr herm = NcExpr::product({adjoint(x), x}); // PSD argument
        for (FuncKind f : {FuncKind::Sqrt, FuncKind::Abs, FuncKind::Exp}) {
            CMatrix lhs = eval(adjoint(NcExpr::func(f, herm)), rho);
            CMatrix rhs = eval(NcExpr::func(f, herm), rho); // self-adjoint value
            CHECK(rel_err(lhs, rhs) < 1e-9);
        }
    }
}

TEST_CASE("to_polynomial: paper display, unit, Func rejection") {
    // p = x*x + 2xx* + 3x
    NcExpr p = NcExpr::product({adjoint(x), x}) +
               NcExpr::scalar_mul(Complex(2, 0), NcExpr::product({x, adjoint(x)})) +
               NcExpr::scalar_mul(Complex(3, 0), x);
    StarPolynomial sp = to_polynomial(p);
    const GeneratorId gx("x");
    Monomial xsx{{gx, true}, {gx, false}};
    Monomial xxs{{gx, false}, {gx, true}};
    Monomial just_x{{gx, false}};
    CHECK(sp.coeff(xsx) == Complex(1, 0));
    CHECK(sp.coeff(xxs) == Complex(2, 0));
    CHECK(sp.coeff(just_x) == Complex(3, 0));
    CHECK(sp.terms().size() == 3);

    StarPolynomial unit_poly = to_polynomial(NcExpr::unit());
    CHECK(unit_poly.terms().size() == 1);
    CHECK(unit_poly.constant_term() == Complex(1, 0));

    NcExpr root = NcExpr::func(FuncKind::Sqrt, NcExpr::product({adjoint(x), x}));
    CHECK_THROWS_WITH_AS(to_polynomial(root), doctest::Contains("NonPolynomial"), Error);
}

TEST_CASE("to_polynomial of the embedding is the identity") {
    Rng rng(23);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y")};
    for (int i = 0; i < 200; ++i) {
        StarPolynomial p = starrel::testing::random_int_poly(gens, rng, 4, 6);
        CHECK(to_polynomial(p.to_expr()).equals(p));
    }
}

TEST_CASE("substitute: renaming, unit image, homomorphic expansion") {
    std::map<GeneratorId, NcExpr> to_y{{GeneratorId("x"), y}};
    CHECK(normalize(substitute(x * x, to_y)).equals(normalize(y * y)));

    std::map<GeneratorId, NcExpr> to_unit{{GeneratorId("x"), NcExpr::unit()}};
    CHECK(normalize(substitute(x, to_unit)).is_unit());

    NcExpr h = NcExpr::gen("h"), k = NcExpr::gen("k");
    std::map<GeneratorId, NcExpr> to_sum{{GeneratorId("x"), h + k}};
    NcExpr expanded = substitute(NcExpr::product({adjoint(x), x}), to_sum);
    CHECK(normalize(expanded).equals(normalize(NcExpr::product({adjoint(h + k), h + k}))));

    CHECK_THROWS_AS(substitute(y, to_sum), Error);
}

TEST_CASE("substitute commutes with eval") {
    Rng rng(31);
    std::vector<GeneratorId> outer{GeneratorId("h"), GeneratorId("k")};
    std::vector<GeneratorId> inner{GeneratorId("x"), GeneratorId("y")};
    for (int i = 0; i < 50; ++i) {
        NcExpr e = random_expr(inner, rng, 4, false);
        std::map<GeneratorId, NcExpr> m{{GeneratorId("x"), random_expr(outer, rng, 3, false)},
                                        {GeneratorId("y"), random_expr(outer, rng, 3, false)}};
        RepTuple rho = random_tuple(outer, 2, rng);
        RepTuple composed(2);
        for (const auto& [g, img] : m) composed.assignment[g] = eval(img, rho);
        CHECK(rel_err(eval(substitute(e, m), rho), eval(e, composed)) < 1e-10);
    }
}

TEST_CASE("eval respects ring laws against brute-force word products") {
    Rng rng(37);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y")};
    for (int i = 0; i < 100; ++i) {
        StarPolynomial p = starrel::testing::random_int_poly(gens, rng, 3, 4);
        StarPolynomial q = starrel::testing::random_int_poly(gens, rng, 3, 4);
        const Eigen::Index n = 1 + (i % 4);
        RepTuple rho = random_tuple(gens, n, rng);

        CMatrix pv = eval(p.to_expr(), rho);
        CHECK(rel_err(pv, oracle_poly_eval(p, rho)) < 1e-10);
        CHECK(rel_err(eval((p + q).to_expr(), rho), oracle_poly_eval(p, rho) + oracle_poly_eval(q, rho)) <
              1e-10);
        CHECK(rel_err(eval((p * q).to_expr(), rho),
                      CMatrix(oracle_poly_eval(p, rho) * oracle_poly_eval(q, rho))) < 1e-10);
        CHECK(rel_err(eval(p.adjoint().to_expr(), rho), CMatrix(oracle_poly_eval(p, rho).adjoint())) <
              1e-10);
    }
}

TEST_CASE("star polynomial algebra laws") {
    Rng rng(41);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y")};
    for (int i = 0; i < 100; ++i) {
        StarPolynomial p = starrel::testing::random_int_poly(gens, rng, 3, 4);
        StarPolynomial q = starrel::testing::random_int_poly(gens, rng, 3, 4);
        CHECK((p * q).adjoint().equals(q.adjoint() * p.adjoint()));
        CHECK((p + q).adjoint().equals(p.adjoint() + q.adjoint()));
        CHECK(p.adjoint().adjoint().equals(p));
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("monomial order is graded lexicographic with g < g*") {
    const GeneratorId gx("x"), gy("y");
    MonomialLess less;
    Monomial empty{};
    Monomial mx{{gx, false}};
    Monomial mxs{{gx, true}};
    Monomial my{{gy, false}};
    Monomial mxx{{gx, false}, {gx, false}};
    CHECK(less(empty, mx));
    CHECK(less(mx, mxs));
    CHECK(less(mxs, my));
    CHECK(less(my, mxx));
}
