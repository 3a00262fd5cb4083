#ifndef STARREL_COMATRIX_HPP
#define STARREL_COMATRIX_HPP

#include <optional>

#include "starrel/relations.hpp"

namespace starrel {

// A scalar n x n matrix assignment for the base generators; must satisfy the
// base relation set (validated by unfold).
struct ScalarRep {
    Eigen::Index n = 1;
    std::map<GeneratorId, CMatrix> alpha;

    RepTuple as_tuple() const;
    Complex entry(const GeneratorId& g, Eigen::Index i, Eigen::Index j) const; // 1-based
};

// The rewrite of a relation set on X into one on entry generators
// X x {1..n} x {1..n}. Checking an entry tuple f is equivalent to checking
// the base set on assemble(f, alpha).
struct UnfoldedRelationSet {
    RelationSet base;
    ScalarRep alpha;
    std::vector<GeneratorId> entry_generators;
    std::map<GeneratorId, BlockExpr> block_exprs; // base generator -> B_x

    // Block-level relation set over the entry generators; absent when a base
    // relation carries a functional-calculus node (those cannot be written
    // as block expressions; checking falls back to the assemble route).
    std::optional<RelationSet> materialized;

    CheckReport check_tuple(const RepTuple& f, double tol) const;
};

UnfoldedRelationSet unfold(const RelationSet& R, const ScalarRep& alpha);

/// Entry tuple (dim m) -> base tuple (dim n*m): block (i,j) of generator x
/// is alpha_ij I_m + f(x,i,j).
RepTuple assemble(const RepTuple& f, const ScalarRep& alpha,
                  const std::vector<GeneratorId>& base_generators);
RepTuple assemble(const RepTuple& f, const UnfoldedRelationSet& u);

/// Rewrite the unfolded relations through a total map from entry generators
/// to expressions over a reduced generator set.
RelationSet substitute_entries(const UnfoldedRelationSet& u,
                               const std::map<GeneratorId, NcExpr>& m);

/// Permutation P with P assemble(direct_sum(f_t)) P* = direct_sum(assemble(f_t))
/// for entry tuples of dims part_dims under an n x n unfolding.
CMatrix block_interleave_permutation(Eigen::Index n, const std::vector<Eigen::Index>& part_dims);

GeneratorId entry_generator(const GeneratorId& base, Eigen::Index i, Eigen::Index j); // 1-based

} // namespace starrel

#endif
