#ifndef STARREL_SEARCH_HPP
#define STARREL_SEARCH_HPP

#include <optional>
#include <string>

#include "starrel/relations.hpp"
#include "starrel/search_config.hpp"

namespace starrel {

/// Multi-restart finite-difference descent on the smooth residual over the
/// real parameterization (2 n^2 reals per generator). Deterministic for a
/// fixed config. Non-convergence is a result state, not an error.
SearchResult find_representation(const RelationSet& R, const SearchConfig& cfg);

/// Search for a satisfying tuple whose generator g has operator norm >= target.
/// The objective trades the smooth residual against a capped Frobenius
/// norm proxy (a lower bound on the operator norm after scaling); accepted
/// witnesses are re-verified with check() and a true operator norm test.
std::optional<RepTuple> probe_norm_bound(const RelationSet& R, const GeneratorId& g,
                                         double target, const SearchConfig& cfg,
                                         ProbeReport* report = nullptr);

// Closed-form witness library used by tests and the axiom harness.
RepTuple witness_idempotent(double t);   // x -> [[1, t], [0, 0]]
RepTuple witness_projection_rank1();     // x -> diag(1, 0)
RepTuple witness_half_block();           // h = k = x = [1/2], dim 1

/// Parse "idempotent(t)", "projection_rank1" or "half_block_P".
RepTuple seeded_witness(const std::string& name);

} // namespace starrel

#endif
