#ifndef STARREL_RELATIONS_HPP
#define STARREL_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "starrel/blockexpr.hpp"
#include "starrel/search_config.hpp"

namespace starrel {

// One relation predicate. Order chains desugar to Psd at construction.
struct Relation {
    enum class Kind { EqZero, NormLe, NormLt, Psd };

    Kind kind = Kind::EqZero;
    BlockExpr expr;
    double bound = 0.0; // NormLe / NormLt only

    static Relation eq_zero(BlockExpr e);
    static Relation eq_zero(NcExpr e) { return eq_zero(BlockExpr(std::move(e))); }
    static Relation norm_le(BlockExpr e, double c);
    static Relation norm_le(NcExpr e, double c) { return norm_le(BlockExpr(std::move(e)), c); }
    static Relation norm_lt(BlockExpr e, double c);
    static Relation norm_lt(NcExpr e, double c) { return norm_lt(BlockExpr(std::move(e)), c); }
    static Relation psd(BlockExpr e);
    static Relation psd(NcExpr e) { return psd(BlockExpr(std::move(e))); }

    bool mentions_unit() const;
    bool equals_normalized(const Relation& o) const;
};

/// Desugar e0 <= e1 <= ... <= ek into Psd(e_{i+1} - e_i).
std::vector<Relation> order_chain(const std::vector<BlockExpr>& chain);

struct RelationSet {
    std::vector<GeneratorId> generators;
    std::vector<Relation> relations;

    void declare(const GeneratorId& g);
    bool declares(const GeneratorId& g) const;
    void add(Relation r); // validates that mentioned generators are declared

    bool mentions_unit() const;
    bool equals_normalized(const RelationSet& o) const;
};

// Convenience: a relation set over the closure of the relations' generators.
RelationSet make_relation_set(std::vector<Relation> rels);

struct CheckReport {
    bool satisfied = false;
    std::vector<double> residuals;
    double tolerance = 0.0;
    std::vector<std::string> flags;
};

/// Residuals: EqZero -> op norm; NormLe -> hinge above the bound; NormLt ->
/// hinge above bound - eps (eps = 1e-9 (1 + c)); Psd -> negative-part
/// magnitude plus Hermiticity defect. Evaluation errors become +inf
/// residuals with a flag, never exceptions. dim 0 satisfies everything.
CheckReport check(const RelationSet& R, const RepTuple& rho, double tol);

/// Smooth aggregate used by the searcher: sqrt of the sum of squared
/// Frobenius-style residuals, with precondition violations penalized
/// instead of thrown. Zero iff check-satisfied at tolerance 0.
double residual(const RelationSet& R, const RepTuple& rho);

/// g = sum_k alpha_k g_k* g_k. Each term is PSD, so eval(g) vanishes iff
/// every eval(g_k) does.
NcExpr combine_to_single(const std::vector<NcExpr>& gs, const std::vector<double>& weights);

/// C1 probe: the dim-0 tuple. Sets a "vacuous-unit" flag for relation sets
/// mentioning the unit, which dim 0 satisfies only vacuously.
CheckReport check_zero_object(const RelationSet& R);

struct PassFail {
    bool pass = false;
    std::vector<std::string> flags;
    CheckReport hypothesis;
    CheckReport conclusion;
    std::string detail;
};

/// C3 surrogate: rho satisfies R  =>  pushforward(rho, phi) satisfies R at
/// 10x tolerance. Unit-mentioning relations under a non-unital phi (z > 0)
/// get an "expected-unit-failure" flag when the conclusion fails.
PassFail check_pushforward_closure(const RelationSet& R, const RepTuple& rho, const MatHom& phi,
                                   double tol);

/// C2 surrogate: along injective phi (k >= 1), satisfaction reflects back.
PassFail check_injective_reflection(const RelationSet& R, const RepTuple& rho, const MatHom& phi,
                                    double tol);

/// C4f surrogate: the direct sum of satisfying tuples satisfies at 10x tol.
PassFail check_finite_products(const RelationSet& R, const std::vector<RepTuple>& rhos,
                               double tol);

/// C4b desk-scale surrogate: as check_finite_products, with per-generator
/// norm suprema recorded in the detail string.
PassFail check_bounded_products(const RelationSet& R, const std::vector<RepTuple>& rhos,
                                double tol);

// Norm-bound evidence for one generator. No compactness theorem is claimed;
// this is search output, labeled as such.
struct GeneratorEvidence {
    GeneratorId gen;
    bool unbounded = false;       // a witness reached the top probe target
    double max_norm_found = 0.0;  // largest verified norm of this generator
    std::vector<double> targets_hit;
    std::vector<RepTuple> witnesses;
};

struct EvidenceReport {
    std::vector<double> targets; // escalation ladder
    std::vector<GeneratorEvidence> per_generator;
};

EvidenceReport classify_probe(const RelationSet& R, const SearchConfig& cfg);

} // namespace starrel

#endif
