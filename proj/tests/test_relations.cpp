#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "starrel/relations.hpp"
#include "starrel/search.hpp"
#include "test_support.hpp"

using namespace starrel;
using starrel::testing::random_expr;
using starrel::testing::random_tuple;
using starrel::testing::rel_err;

namespace {

const NcExpr x = NcExpr::gen("x");

RelationSet projection_set() { // x* x - x = 0
    return make_relation_set({Relation::eq_zero(NcExpr::product({adjoint(x), x}) - x)});
}

RelationSet idempotent_set() { // x^2 - x = 0
    return make_relation_set({Relation::eq_zero(x * x - x)});
}

RelationSet contraction_set() { // ||x|| <= 1
    return make_relation_set({Relation::norm_le(x, 1.0)});
}

RelationSet commutator_unit_set() { // xy - yx - 1 = 0
    NcExpr y = NcExpr::gen("y");
    return make_relation_set({Relation::eq_zero(x * y - y * x - NcExpr::unit())});
}

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

} // namespace

TEST_CASE("check: projection, idempotent with norm sqrt(26), block positivity") {
    CheckReport r1 = check(projection_set(), witness_projection_rank1(), 1e-9);
    CHECK(r1.satisfied);
    CHECK(r1.residuals[0] == doctest::Approx(0.0).epsilon(1e-14));

    RepTuple rho(2);
    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(5, 0), Complex(0, 0), Complex(0, 0);
    rho.assignment[GeneratorId("x")] = m;
    CheckReport r2 = check(idempotent_set(), rho, 1e-9);
    CHECK(r2.satisfied);
    CHECK(op_norm(m) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-12));

    // 0 <= [[1-h, x*], [x, k]] <= 1 at h = k = x = 1/2: P has eigenvalues {0, 1}.
    NcExpr h = NcExpr::gen("h"), k = NcExpr::gen("k");
    BlockExpr p(2, {NcExpr::unit() - h, adjoint(x), x, k});
    RelationSet blockR;
    for (const auto& g : p.generators()) blockR.generators.push_back(g);
    for (auto& rel : order_chain({BlockExpr::zero(2), p, BlockExpr::identity(2)}))
        blockR.add(std::move(rel));
    CheckReport r3 = check(blockR, witness_half_block(), 1e-9);
    CHECK(r3.satisfied);
}

TEST_CASE("check: eval errors become infinite residuals, not crashes") {
    RelationSet R = make_relation_set(
        {Relation::eq_zero(NcExpr::func(FuncKind::Inv, x) - x)});
    RepTuple rho(2);
    rho.assignment[GeneratorId("x")] = cmatrix_zero(2);
    CheckReport rep = check(R, rho, 1e-9);
    CHECK_FALSE(rep.satisfied);
    CHECK(std::isinf(rep.residuals[0]));
    CHECK(!rep.flags.empty());
}

TEST_CASE("check: strict inequality uses the eps convention and is flagged") {
    RelationSet R = make_relation_set({Relation::norm_lt(x, 1.0)});
    RepTuple rho(1);
    rho.assignment[GeneratorId("x")] = Complex(1.0, 0.0) * cmatrix_identity(1);
    CheckReport rep = check(R, rho, 1e-12);
    CHECK_FALSE(rep.satisfied); // residual ~ eps above the shrunk bound
    CHECK(has_flag(rep.flags, "strict-inequality"));

    rho.assignment[GeneratorId("x")] = Complex(0.5, 0.0) * cmatrix_identity(1);
    CHECK(check(R, rho, 1e-12).satisfied);
}

TEST_CASE("combine_to_single: singleton, mixed pair, weights") {
    NcExpr g1 = x - adjoint(x);
    NcExpr g2 = x * x - x;

    NcExpr single = combine_to_single({g1}, {1.0});
    CHECK(normalize(single).equals(normalize(NcExpr::product({adjoint(g1), g1}))));

    NcExpr g = combine_to_single({g1, g2}, {1.0, 1.0});
    RepTuple proj = witness_projection_rank1();
    CHECK(op_norm(eval(g, proj)) < 1e-14);

    RepTuple idem(2);
    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
    idem.assignment[GeneratorId("x")] = m;
    // x - x* fails: (x - x*)*(x - x*) = I there.
    CHECK(op_norm(eval(g, idem)) == doctest::Approx(1.0).epsilon(1e-12));

    NcExpr doubled = combine_to_single({x}, {2.0});
    RepTuple z(1);
    z.assignment[GeneratorId("x")] = cmatrix_zero(1);
    CHECK(op_norm(eval(doubled, z)) == 0.0);

    CHECK_THROWS_WITH_AS(combine_to_single({}, {}), doctest::Contains("EmptyList"), Error);
    CHECK_THROWS_WITH_AS(combine_to_single({x}, {0.0}), doctest::Contains("NonpositiveWeight"),
                         Error);
}

TEST_CASE("combine_to_single zero-set equivalence on random tuples") {
    Rng rng(3);
    std::vector<GeneratorId> gens{GeneratorId("x"), GeneratorId("y")};
    NcExpr y = NcExpr::gen("y");
    std::vector<NcExpr> gs{x - adjoint(x), x * y - y, y * y - y};
    std::vector<double> weights{1.0, 2.0, 0.5};
    NcExpr g = combine_to_single(gs, weights);
    for (int i = 0; i < 200; ++i) {
        RepTuple rho = random_tuple(gens, 1 + (i % 4), rng);
        const double total = op_norm(eval(g, rho));
        double parts = 0.0;
        for (size_t k2 = 0; k2 < gs.size(); ++k2) {
            const double nk = op_norm(eval(gs[k2], rho));
            // each alpha_k g_k* g_k is dominated by the PSD sum
            CHECK(weights[k2] * nk * nk <= total + 1e-12 * (1.0 + total));
            parts += weights[k2] * nk * nk;
        }
        // and the sum cannot exceed the parts
        CHECK(total <= parts + 1e-9 * (1.0 + parts));
        if (total <= 1e-12)
            for (size_t k2 = 0; k2 < gs.size(); ++k2)
                CHECK(op_norm(eval(gs[k2], rho)) <= 1e-6 / std::sqrt(weights[k2]));
    }
}

TEST_CASE("check_zero_object: plain, unital, empty") {
    CheckReport r1 = check_zero_object(projection_set());
    CHECK(r1.satisfied);
    CHECK_FALSE(has_flag(r1.flags, "vacuous-unit"));

    CheckReport r2 = check_zero_object(commutator_unit_set());
    CHECK(r2.satisfied);
    CHECK(has_flag(r2.flags, "vacuous-unit"));

    RelationSet empty;
    empty.generators.push_back(GeneratorId("x"));
    CHECK(check_zero_object(empty).satisfied);
}

TEST_CASE("pushforward closure: projection under conjugation, contraction under any hom") {
    Rng rng(7);
    RepTuple proj = witness_projection_rank1();
    MatHom u(2, 1, 0, random_unitary(2, rng));
    PassFail pf = check_pushforward_closure(projection_set(), proj, u, 1e-9);
    CHECK(pf.pass);

    RepTuple contraction(2);
    CMatrix c = 0.8 * random_unitary(2, rng);
    contraction.assignment[GeneratorId("x")] = c;
    for (auto [k, z] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {0, 2}}) {
        MatHom phi(2, k, z, random_unitary(2 * k + z, rng));
        PassFail p2 = check_pushforward_closure(contraction_set(), contraction, phi, 1e-9);
        CHECK(p2.pass);
    }
}

TEST_CASE("pushforward closure: unit relation under non-unital map flags expected failure") {
    // No finite-dimensional tuple satisfies xy - yx - 1 = 0 (trace
    // obstruction); exercise the flag with the weaker relation x - 1 = 0,
    // which the identity satisfies but any z > 0 pushforward breaks.
    RelationSet R = make_relation_set({Relation::eq_zero(x - NcExpr::unit())});
    RepTuple rho(2);
    rho.assignment[GeneratorId("x")] = cmatrix_identity(2);
    Rng rng(9);
    MatHom nonunital(2, 1, 1, random_unitary(3, rng));
    PassFail pf = check_pushforward_closure(R, rho, nonunital, 1e-9);
    CHECK_FALSE(pf.pass);
    CHECK(has_flag(pf.flags, "expected-unit-failure"));

    // unital (z = 0) conjugation keeps it satisfied
    MatHom unital(2, 2, 0, random_unitary(4, rng));
    CHECK(check_pushforward_closure(R, rho, unital, 1e-9).pass);
}

TEST_CASE("commutator relation: no witness in finite dimension (trace obstruction)") {
    SearchConfig cfg;
    cfg.dim = 3;
    cfg.restarts = 6;
    cfg.max_iters = 400;
    cfg.seed = 11;
    SearchResult sr = find_representation(commutator_unit_set(), cfg);
    CHECK_FALSE(sr.converged);
    // residual is bounded below: ||xy - yx - I|| >= 1, since tr(xy - yx) = 0
    CHECK(sr.residual > 0.5);
}

TEST_CASE("injective reflection: identity, norm violation reflected, projection") {
    Rng rng(13);
    RepTuple rho(2);
    CMatrix m(2, 2);
    m << Complex(0, 0), Complex(2, 0), Complex(0, 0), Complex(0, 0);
    rho.assignment[GeneratorId("x")] = m;

    PassFail p1 = check_injective_reflection(contraction_set(), rho, MatHom::identity(2), 1e-9);
    CHECK(p1.pass); // hypothesis unsatisfied on both sides -> vacuous

    MatHom pad(2, 1, 2, random_unitary(4, rng));
    PassFail p2 = check_injective_reflection(contraction_set(), rho, pad, 1e-9);
    CHECK(p2.pass);
    CHECK(has_flag(p2.flags, "hypothesis-unsatisfied")); // a (+) 0 keeps norm 2

    MatHom amp(2, 2, 1, random_unitary(5, rng));
    PassFail p3 = check_injective_reflection(projection_set(), witness_projection_rank1(), amp,
                                             1e-9);
    CHECK(p3.pass);

    MatHom zero_map(2, 0, 2, random_unitary(2, rng));
    CHECK_THROWS_WITH_AS(check_injective_reflection(projection_set(), rho, zero_map, 1e-9),
                         doctest::Contains("NotInjective"), Error);
}

TEST_CASE("finite products: projections, contractions, strict-norm escape to the sup") {
    RepTuple p1 = witness_projection_rank1();
    RepTuple p2(1);
    p2.assignment[GeneratorId("x")] = cmatrix_identity(1);
    PassFail f1 = check_finite_products(projection_set(), {p1, p2}, 1e-9);
    CHECK(f1.pass);

    PassFail f2 = check_finite_products(contraction_set(), {p1, p2}, 1e-9);
    CHECK(f2.pass);

    // ||x|| < 1 with norms 1 - 1/m: every finite product passes while the
    // suprema approach 1 (the closedness failure is only in the limit).
    RelationSet strict = make_relation_set({Relation::norm_lt(x, 1.0)});
    std::vector<RepTuple> family;
    for (int m2 = 1; m2 <= 8; ++m2) {
        RepTuple r(1);
        r.assignment[GeneratorId("x")] = Complex(1.0 - 1.0 / (m2 + 1), 0.0) * cmatrix_identity(1);
        family.push_back(std::move(r));
    }
    PassFail f3 = check_bounded_products(strict, family, 1e-9);
    CHECK(f3.pass);
    CHECK(f3.detail.find("x=0.88") != std::string::npos); // sup of 1 - 1/9
}

TEST_CASE("unitary invariance of check") {
    Rng rng(17);
    std::vector<GeneratorId> gens{GeneratorId("x")};
    RelationSet R = idempotent_set();
    for (int i = 0; i < 30; ++i) {
        RepTuple rho = random_tuple(gens, 3, rng);
        MatHom u(3, 1, 0, random_unitary(3, rng));
        CheckReport a = check(R, rho, 1e-6);
        CheckReport b = check(R, pushforward(rho, u), 1e-6);
        CHECK(a.satisfied == b.satisfied);
        for (size_t k = 0; k < a.residuals.size(); ++k)
            CHECK(a.residuals[k] == doctest::Approx(b.residuals[k]).epsilon(1e-8));
    }
}

TEST_CASE("direct-sum law for EqZero: holds iff every summand holds") {
    Rng rng(19);
    std::vector<GeneratorId> gens{GeneratorId("x")};
    RelationSet R = projection_set();
    RepTuple good = witness_projection_rank1();
    RepTuple bad = random_tuple(gens, 2, rng);
    REQUIRE_FALSE(check(R, bad, 1e-6).satisfied);

    CHECK(check(R, direct_sum({good, good}), 1e-8).satisfied);
    CHECK_FALSE(check(R, direct_sum({good, bad}), 1e-6).satisfied);
}

TEST_CASE("intersection monotonicity and vacuity") {
    Rng rng(23);
    std::vector<GeneratorId> gens{GeneratorId("x")};
    RepTuple rho = random_tuple(gens, 2, rng);

    RelationSet R1 = contraction_set();
    RelationSet R2 = contraction_set();
    R2.add(Relation::eq_zero(x * x - x));
    CheckReport a = check(R1, rho, 1e-9);
    CheckReport b = check(R2, rho, 1e-9);
    if (!a.satisfied) CHECK_FALSE(b.satisfied);

    RepTuple nil(0);
    nil.assignment[GeneratorId("x")] = CMatrix(0, 0);
    CHECK(check(R2, nil, 0.0).satisfied);
    CHECK(check(commutator_unit_set(), direct_sum(std::vector<RepTuple>{}), 0.0).satisfied);
}

TEST_CASE("classify_probe: projection bounded, idempotent unbounded, free generator unbounded") {
    SearchConfig cfg;
    cfg.dim = 2;
    cfg.restarts = 6;
    cfg.max_iters = 1200;
    cfg.seed = 29;

    EvidenceReport proj = classify_probe(projection_set(), cfg);
    REQUIRE(proj.per_generator.size() == 1);
    CHECK_FALSE(proj.per_generator[0].unbounded);
    CHECK(proj.per_generator[0].max_norm_found <= 1.0 + 1e-6);

    EvidenceReport idem = classify_probe(idempotent_set(), cfg);
    REQUIRE(idem.per_generator.size() == 1);
    CHECK(idem.per_generator[0].unbounded);
    CHECK(idem.per_generator[0].max_norm_found >= 100.0);
    for (const auto& w : idem.per_generator[0].witnesses)
        CHECK(check(idempotent_set(), w, 1e-7).satisfied);

    RelationSet free_gen;
    free_gen.generators.push_back(GeneratorId("x"));
    EvidenceReport free_rep = classify_probe(free_gen, cfg);
    CHECK(free_rep.per_generator[0].unbounded);
}
