#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starrel/comatrix.hpp"
#include "starrel/search.hpp"
#include "test_support.hpp"

using namespace starrel;
using starrel::testing::random_tuple;
using starrel::testing::rel_err;

namespace {

const GeneratorId gp("p");

RelationSet projection_base() { // p^2 = p* = p
    NcExpr p = NcExpr::gen(gp);
    return make_relation_set(
        {Relation::eq_zero(p * p - p), Relation::eq_zero(adjoint(p) - p)});
}

ScalarRep alpha_diag10() {
    ScalarRep a;
    a.n = 2;
    CMatrix m = cmatrix_zero(2);
    m(0, 0) = Complex(1, 0);
    a.alpha[gp] = m;
    return a;
}

RepTuple random_entry_tuple(const UnfoldedRelationSet& u, Eigen::Index m, Rng& rng,
                            double scale = 1.0) {
    return random_tuple(u.entry_generators, m, rng, scale);
}

} // namespace

TEST_CASE("unfold: alpha must satisfy the base relations") {
    ScalarRep bad;
    bad.n = 2;
    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0); // idempotent, not self-adjoint
    bad.alpha[gp] = m;
    CHECK_THROWS_WITH_AS(unfold(projection_base(), bad), doctest::Contains("AlphaNotRepresentation"),
                         Error);
    ScalarRep zero_dim;
    zero_dim.n = 0;
    CHECK_THROWS_WITH_AS(unfold(projection_base(), zero_dim), doctest::Contains("BadDimension"),
                         Error);
}

TEST_CASE("unfold golden: the projection relation becomes the matrix-projection block") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());
    CHECK(u.entry_generators.size() == 4);

    // Rename (p,1,1) -> -h, (p,2,2) -> k, (p,2,1) -> x, (p,1,2) -> adj(x):
    // the block must become P = [[1 - h, x*], [x, k]].
    NcExpr h = NcExpr::gen("h"), k = NcExpr::gen("k"), x = NcExpr::gen("x");
    std::map<GeneratorId, NcExpr> rename{
        {entry_generator(gp, 1, 1), -h},
        {entry_generator(gp, 1, 2), adjoint(x)},
        {entry_generator(gp, 2, 1), x},
        {entry_generator(gp, 2, 2), k},
    };
    RelationSet renamed = substitute_entries(u, rename);

    BlockExpr block = u.block_exprs.at(gp);
    std::vector<NcExpr> sub_entries;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) sub_entries.push_back(substitute(block.at(i, j), rename));
    BlockExpr p_block(2, sub_entries);
    BlockExpr expected(2, {NcExpr::unit() - h, adjoint(x), x, k});
    CHECK(p_block.equals_normalized(expected));

    // The renamed set is {P^2 - P = 0, P* - P = 0} over {h, k, x}.
    REQUIRE(renamed.relations.size() == 2);
    CHECK(renamed.relations[0].expr.equals_normalized((expected * expected - expected).normalized()));
    CHECK(renamed.relations[1].expr.equals_normalized((expected.adjoint() - expected).normalized()));
    CHECK(renamed.generators.size() == 3);

    // h = k = x = 1/2 satisfies the renamed presentation (P has spectrum {0, 1}).
    CHECK(check(renamed, witness_half_block(), 1e-9).satisfied);
}

TEST_CASE("unfold with n = 1 and alpha = 0 is generator renaming") {
    RelationSet base = make_relation_set({Relation::eq_zero(
        NcExpr::gen("x") * NcExpr::gen("x") - NcExpr::gen("x"))});
    ScalarRep a;
    a.n = 1;
    a.alpha[GeneratorId("x")] = cmatrix_zero(1);
    UnfoldedRelationSet u = unfold(base, a);
    REQUIRE(u.entry_generators.size() == 1);
    CHECK(u.entry_generators[0].token() == "x_1_1");
    REQUIRE(u.materialized.has_value());
    NcExpr e = NcExpr::gen(entry_generator(GeneratorId("x"), 1, 1));
    CHECK(u.materialized->relations[0].expr.equals_normalized(
        BlockExpr(normalize(e * e - e))));
}

TEST_CASE("the C0(0,1) presentation unfolds at n = 1") {
    // (1+x)* (1+x) = 1 and (1+x)(1+x)* = 1
    NcExpr x = NcExpr::gen("x");
    NcExpr w = NcExpr::unit() + x;
    RelationSet base = make_relation_set(
        {Relation::eq_zero(NcExpr::product({adjoint(w), w}) - NcExpr::unit()),
         Relation::eq_zero(NcExpr::product({w, adjoint(w)}) - NcExpr::unit())});
    ScalarRep a;
    a.n = 1;
    a.alpha[GeneratorId("x")] = cmatrix_zero(1); // alpha = 0 satisfies: (1+0)* (1+0) = 1
    UnfoldedRelationSet u = unfold(base, a);

    // x |-> u - 1 for a unitary u gives a representation of the entry set.
    Rng rng(5);
    CMatrix uni = random_unitary(3, rng);
    RepTuple f(3);
    f.assignment[entry_generator(GeneratorId("x"), 1, 1)] = uni - cmatrix_identity(3);
    CHECK(u.check_tuple(f, 1e-9).satisfied);
    CHECK(check(base, assemble(f, u), 1e-9).satisfied);
}

TEST_CASE("assemble: zero tuple gives alpha tensor identity; half block matches") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());

    RepTuple zero1(1);
    for (const auto& g : u.entry_generators) zero1.assignment[g] = cmatrix_zero(1);
    RepTuple asm0 = assemble(zero1, u);
    CMatrix expect = cmatrix_zero(2);
    expect(0, 0) = Complex(1, 0);
    CHECK(rel_err(asm0.at(gp), expect) == 0.0);

    // entries h = k = x = 1/2 with the projection renaming give
    // P = [[1/2, 1/2], [1/2, 1/2]]; in entry coordinates (p,1,1) = -1/2.
    RepTuple f(1);
    f.assignment[entry_generator(gp, 1, 1)] = Complex(-0.5, 0) * cmatrix_identity(1);
    f.assignment[entry_generator(gp, 1, 2)] = Complex(0.5, 0) * cmatrix_identity(1);
    f.assignment[entry_generator(gp, 2, 1)] = Complex(0.5, 0) * cmatrix_identity(1);
    f.assignment[entry_generator(gp, 2, 2)] = Complex(0.5, 0) * cmatrix_identity(1);
    RepTuple p = assemble(f, u);
    CMatrix half(2, 2);
    half << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0);
    CHECK(rel_err(p.at(gp), half) == 0.0);
    CHECK(check(projection_base(), p, 1e-9).satisfied);

    RepTuple missing(1);
    missing.assignment[entry_generator(gp, 1, 1)] = cmatrix_zero(1);
    CHECK_THROWS_WITH_AS(assemble(missing, u), doctest::Contains("MissingEntry"), Error);
}

TEST_CASE("round-trip: block expressions evaluate to the assembled matrices") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());
    Rng rng(7);
    for (Eigen::Index m = 1; m <= 3; ++m) {
        for (int i = 0; i < 10; ++i) {
            RepTuple f = random_entry_tuple(u, m, rng);
            RepTuple assembled = assemble(f, u);
            CHECK(rel_err(u.block_exprs.at(gp).eval_on(f), assembled.at(gp)) < 1e-13);
        }
    }
}

TEST_CASE("equivalence: entry-level check equals base check on the assembly") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());
    REQUIRE(u.materialized.has_value());
    Rng rng(11);
    int satisfied_seen = 0;
    for (int i = 0; i < 60; ++i) {
        const Eigen::Index m = 1 + (i % 3);
        // mix raw random tuples with near-satisfying ones (zero tuple noise)
        const double scale = i % 2 == 0 ? 1.0 : 1e-7;
        RepTuple f = random_entry_tuple(u, m, rng, scale);
        CheckReport via_entries = u.check_tuple(f, 1e-6);
        CheckReport via_assembly = check(projection_base(), assemble(f, u), 1e-6);
        CHECK(via_entries.satisfied == via_assembly.satisfied);
        REQUIRE(via_entries.residuals.size() == via_assembly.residuals.size());
        for (size_t k = 0; k < via_entries.residuals.size(); ++k)
            CHECK(via_entries.residuals[k] ==
                  doctest::Approx(via_assembly.residuals[k]).epsilon(1e-8));
        satisfied_seen += via_entries.satisfied ? 1 : 0;
    }
    CHECK(satisfied_seen > 0); // the tiny-scale tuples approximate alpha (x) I
}

TEST_CASE("zero entry tuple satisfies the unfolded set at any dimension") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());
    for (Eigen::Index m : {1, 2, 5}) {
        RepTuple zero(m);
        for (const auto& g : u.entry_generators) zero.assignment[g] = cmatrix_zero(m);
        CHECK(u.check_tuple(zero, 1e-10).satisfied);
    }
}

TEST_CASE("closure transfer: direct sums intertwine through the block permutation") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());
    Rng rng(13);
    for (int i = 0; i < 15; ++i) {
        RepTuple f1 = random_entry_tuple(u, 2, rng);
        RepTuple f2 = random_entry_tuple(u, 3, rng);
        RepTuple sum = direct_sum({f1, f2});
        CMatrix lhs = assemble(sum, u).at(gp);
        CMatrix rhs = direct_sum(assemble(f1, u).at(gp), assemble(f2, u).at(gp));
        CMatrix perm = block_interleave_permutation(2, {2, 3});
        CHECK(rel_err(perm * lhs * perm.adjoint(), rhs) < 1e-13);
        // permutation is unitary
        CHECK(rel_err(perm * perm.adjoint(), cmatrix_identity(perm.rows())) < 1e-14);
    }
}

TEST_CASE("direct sums of satisfying entry tuples satisfy the unfolded set") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());
    // Entry tuples from known satisfying assembled projections: zero tuple
    // (assembles to alpha (x) I) and the half-block pattern.
    RepTuple zero2(2);
    for (const auto& g : u.entry_generators) zero2.assignment[g] = cmatrix_zero(2);
    RepTuple half(1);
    half.assignment[entry_generator(gp, 1, 1)] = Complex(-0.5, 0) * cmatrix_identity(1);
    half.assignment[entry_generator(gp, 1, 2)] = Complex(0.5, 0) * cmatrix_identity(1);
    half.assignment[entry_generator(gp, 2, 1)] = Complex(0.5, 0) * cmatrix_identity(1);
    half.assignment[entry_generator(gp, 2, 2)] = Complex(0.5, 0) * cmatrix_identity(1);
    REQUIRE(u.check_tuple(zero2, 1e-9).satisfied);
    REQUIRE(u.check_tuple(half, 1e-9).satisfied);
    CHECK(u.check_tuple(direct_sum({zero2, half}), 1e-8).satisfied);
}

TEST_CASE("assemble is linear when alpha = 0") {
    RelationSet base;
    base.generators.push_back(GeneratorId("x"));
    ScalarRep zero_alpha;
    zero_alpha.n = 2;
    zero_alpha.alpha[GeneratorId("x")] = cmatrix_zero(2);
    UnfoldedRelationSet u = unfold(base, zero_alpha);
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        RepTuple f = random_entry_tuple(u, 2, rng);
        RepTuple g = random_entry_tuple(u, 2, rng);
        RepTuple fg(2);
        for (const auto& eg : u.entry_generators) fg.assignment[eg] = f.at(eg) + g.at(eg);
        CHECK(rel_err(assemble(fg, u).at(GeneratorId("x")),
                      CMatrix(assemble(f, u).at(GeneratorId("x")) +
                              assemble(g, u).at(GeneratorId("x")))) < 1e-13);
    }
}

TEST_CASE("substitute_entries: identity and collapse-to-alpha substitutions") {
    UnfoldedRelationSet u = unfold(projection_base(), alpha_diag10());

    std::map<GeneratorId, NcExpr> ident;
    for (const auto& g : u.entry_generators) ident[g] = NcExpr::gen(g);
    RelationSet same = substitute_entries(u, ident);
    REQUIRE(u.materialized.has_value());
    CHECK(same.relations.size() == u.materialized->relations.size());
    for (size_t i = 0; i < same.relations.size(); ++i)
        CHECK(same.relations[i].expr.equals_normalized(u.materialized->relations[i].expr));

    std::map<GeneratorId, NcExpr> to_zero;
    for (const auto& g : u.entry_generators) to_zero[g] = NcExpr::zero();
    RelationSet collapsed = substitute_entries(u, to_zero);
    RepTuple nothing(1); // no generators left; relations are statements about alpha
    CHECK(check(collapsed, nothing, 1e-9).satisfied);
}
