#include "starrel/harness.hpp"

#include <algorithm>
#include <sstream>

#include "starrel/rng.hpp"
#include "starrel/search.hpp"

namespace starrel {

bool AxiomCaseResult::ok() const {
    if (pass || vacuous) return true;
    return std::find(flags.begin(), flags.end(), "expected-unit-failure") != flags.end();
}

namespace {

AxiomCaseResult from_passfail(const std::string& axiom, const std::string& variant,
                              const PassFail& pf) {
    AxiomCaseResult c;
    c.axiom = axiom;
    c.variant = variant;
    c.pass = pf.pass;
    c.flags = pf.flags;
    c.detail = pf.detail;
    return c;
}

AxiomCaseResult vacuous_case(const std::string& axiom, const std::string& variant) {
    AxiomCaseResult c;
    c.axiom = axiom;
    c.variant = variant;
    c.vacuous = true;
    c.flags.push_back("NoWitness");
    return c;
}

} // namespace

AxiomHarnessReport run_axiom_harness(const RelationSet& R, const SearchConfig& cfg) {
    AxiomHarnessReport rep;
    const double tol = cfg.success_tol;

    {
        CheckReport zero = check_zero_object(R);
        AxiomCaseResult c;
        c.axiom = "C1";
        c.variant = "zero object";
        c.pass = zero.satisfied;
        c.flags = zero.flags;
        rep.cases.push_back(std::move(c));
    }

    // Witnesses drive C2/C3/C4f. A second, independently seeded witness makes
    // the direct-sum case non-degenerate.
    SearchResult w1 = find_representation(R, cfg);
    SearchConfig cfg2 = cfg;
    cfg2.seed = cfg.seed + 101;
    SearchResult w2 = find_representation(R, cfg2);
    rep.witness_found = w1.converged;

    if (!w1.converged) {
        rep.cases.push_back(vacuous_case("C2", "k=1 unitary"));
        rep.cases.push_back(vacuous_case("C2", "k=2 z=1"));
        rep.cases.push_back(vacuous_case("C3", "k=1 unitary"));
        rep.cases.push_back(vacuous_case("C3", "k=2 z=1"));
        rep.cases.push_back(vacuous_case("C3", "k=0 z=2 zero map"));
        rep.cases.push_back(vacuous_case("C4f", "direct sum"));
    } else {
        const RepTuple& rho = w1.best;
        const Eigen::Index n = rho.dim;
        Rng rng(cfg.seed, 0xA);
        MatHom unitary(n, 1, 0, random_unitary(n, rng));
        MatHom amplified(n, 2, 1, random_unitary(2 * n + 1, rng));
        MatHom zero_map(n, 0, 2, random_unitary(2, rng));

        rep.cases.push_back(
            from_passfail("C3", "k=1 unitary", check_pushforward_closure(R, rho, unitary, tol)));
        rep.cases.push_back(
            from_passfail("C3", "k=2 z=1", check_pushforward_closure(R, rho, amplified, tol)));
        rep.cases.push_back(from_passfail("C3", "k=0 z=2 zero map",
                                          check_pushforward_closure(R, rho, zero_map, tol)));

        rep.cases.push_back(
            from_passfail("C2", "k=1 unitary", check_injective_reflection(R, rho, unitary, tol)));
        rep.cases.push_back(
            from_passfail("C2", "k=2 z=1", check_injective_reflection(R, rho, amplified, tol)));

        std::vector<RepTuple> summands{rho, rho};
        if (w2.converged && w2.best.dim == rho.dim) summands.push_back(w2.best);
        rep.cases.push_back(
            from_passfail("C4f", "direct sum", check_finite_products(R, summands, tol)));

        std::ostringstream bounded_variant;
        bounded_variant << summands.size() << " bounded summands";
        rep.cases.push_back(from_passfail("C4b", bounded_variant.str(),
                                          check_bounded_products(R, summands, tol)));
    }

    for (const auto& c : rep.cases) rep.all_ok = rep.all_ok && c.ok();
    return rep;
}

} // namespace starrel
