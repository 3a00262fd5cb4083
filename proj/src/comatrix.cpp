#include "starrel/comatrix.hpp"

#include <set>

namespace starrel {

GeneratorId entry_generator(const GeneratorId& base, Eigen::Index i, Eigen::Index j) {
    if (base.is_entry())
        throw Error(Errc::InvalidArgument, "cannot nest entry generator " + base.token());
    return GeneratorId(base.base, static_cast<int>(i), static_cast<int>(j));
}

RepTuple ScalarRep::as_tuple() const {
    RepTuple rho(n);
    for (const auto& [g, m] : alpha) {
        if (m.rows() != n || m.cols() != n)
            throw Error(Errc::BadDimension, "alpha(" + g.token() + ") is not " +
                                                std::to_string(n) + "x" + std::to_string(n));
        rho.assignment[g] = m;
    }
    return rho;
}

Complex ScalarRep::entry(const GeneratorId& g, Eigen::Index i, Eigen::Index j) const {
    auto it = alpha.find(g);
    if (it == alpha.end()) throw Error(Errc::UnboundGenerator, "alpha lacks " + g.token());
    return it->second(i - 1, j - 1);
}

namespace {

// Substitute every base generator of a block expression by its n x n block,
// producing a (k*n) x (k*n) block over the entry generators.
BlockExpr expand_through_blocks(const BlockExpr& e,
                                const std::map<GeneratorId, BlockExpr>& blocks, size_t n) {
    const size_t k = e.rows();
    const size_t kn = k * n;
    std::vector<NcExpr> entries(kn * kn, NcExpr::zero());
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            BlockExpr sub = lift_to_blocks(e.at(i, j), blocks, n);
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    entries[(i * n + a) * kn + (j * n + b)] = sub.at(a, b);
        }
    }
    return BlockExpr(kn, std::move(entries));
}

} // namespace

UnfoldedRelationSet unfold(const RelationSet& R, const ScalarRep& alpha) {
    if (alpha.n < 1) throw Error(Errc::BadDimension, "alpha dimension must be >= 1");
    RepTuple alpha_tuple = alpha.as_tuple();
    for (const auto& g : R.generators)
        if (!alpha_tuple.assigns(g)) throw Error(Errc::UnboundGenerator, "alpha lacks " + g.token());
    CheckReport rep = check(R, alpha_tuple, 1e-9);
    if (!rep.satisfied)
        throw Error(Errc::AlphaNotRepresentation, "alpha does not satisfy the base relations");

    UnfoldedRelationSet u;
    u.base = R;
    u.alpha = alpha;
    const Eigen::Index n = alpha.n;
    for (const auto& g : R.generators) {
        std::vector<NcExpr> entries;
        entries.reserve(n * n);
        for (Eigen::Index i = 1; i <= n; ++i) {
            for (Eigen::Index j = 1; j <= n; ++j) {
                GeneratorId eg = entry_generator(g, i, j);
                u.entry_generators.push_back(eg);
                entries.push_back(normalize(NcExpr::scalar(alpha.entry(g, i, j)) +
                                            NcExpr::gen(eg)));
            }
        }
        u.block_exprs.emplace(g, BlockExpr(static_cast<size_t>(n), std::move(entries)));
    }

    try {
        RelationSet mat;
        for (const auto& eg : u.entry_generators) mat.declare(eg);
        for (const auto& r : R.relations) {
            Relation lifted = r;
            lifted.expr =
                expand_through_blocks(r.expr, u.block_exprs, static_cast<size_t>(n)).normalized();
            mat.relations.push_back(std::move(lifted));
        }
        u.materialized = std::move(mat);
    } catch (const Error& err) {
        if (err.code() != Errc::NonPolynomial) throw;
        u.materialized.reset(); // Func-bearing base relations: assemble route only
    }
    return u;
}

RepTuple assemble(const RepTuple& f, const ScalarRep& alpha,
                  const std::vector<GeneratorId>& base_generators) {
    const Eigen::Index n = alpha.n;
    const Eigen::Index m = f.dim;
    RepTuple out(n * m);
    for (const auto& g : base_generators) {
        CMatrix big = cmatrix_zero(n * m);
        for (Eigen::Index i = 1; i <= n; ++i) {
            for (Eigen::Index j = 1; j <= n; ++j) {
                GeneratorId eg = entry_generator(g, i, j);
                if (!f.assigns(eg)) throw Error(Errc::MissingEntry, eg.token());
                big.block((i - 1) * m, (j - 1) * m, m, m) =
                    alpha.entry(g, i, j) * cmatrix_identity(m) + f.at(eg);
            }
        }
        out.assignment[g] = std::move(big);
    }
    return out;
}

RepTuple assemble(const RepTuple& f, const UnfoldedRelationSet& u) {
    return assemble(f, u.alpha, u.base.generators);
}

CheckReport UnfoldedRelationSet::check_tuple(const RepTuple& f, double tol) const {
    if (materialized) return check(*materialized, f, tol);
    return check(base, assemble(f, *this), tol);
}

RelationSet substitute_entries(const UnfoldedRelationSet& u,
                               const std::map<GeneratorId, NcExpr>& m) {
    for (const auto& eg : u.entry_generators)
        if (!m.count(eg)) throw Error(Errc::UnboundGenerator, "no image for " + eg.token());

    const size_t n = static_cast<size_t>(u.alpha.n);
    std::map<GeneratorId, BlockExpr> renamed_blocks;
    for (const auto& [g, block] : u.block_exprs) {
        std::vector<NcExpr> entries;
        entries.reserve(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                entries.push_back(normalize(substitute(block.at(i, j), m)));
        renamed_blocks.emplace(g, BlockExpr(n, std::move(entries)));
    }

    std::set<GeneratorId> gens;
    for (const auto& [eg, img] : m)
        for (const auto& g : img.generators()) gens.insert(g);

    RelationSet out;
    for (const auto& g : gens) out.generators.push_back(g);
    for (const auto& r : u.base.relations) {
        Relation lifted = r;
        lifted.expr = expand_through_blocks(r.expr, renamed_blocks, n).normalized();
        for (const auto& g : lifted.expr.generators())
            if (!out.declares(g)) out.generators.push_back(g);
        out.relations.push_back(std::move(lifted));
    }
    return out;
}

CMatrix block_interleave_permutation(Eigen::Index n, const std::vector<Eigen::Index>& part_dims) {
    Eigen::Index total = 0;
    for (Eigen::Index m : part_dims) total += m;
    CMatrix p = cmatrix_zero(n * total);
    Eigen::Index off = 0;   // row offset of the current part inside the sum tuple
    Eigen::Index out_off = 0; // row offset of the current part's assembled copy
    for (Eigen::Index m : part_dims) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index r = 0; r < m; ++r)
                p(out_off + i * m + r, i * total + off + r) = Complex(1.0, 0.0);
        off += m;
        out_off += n * m;
    }
    return p;
}

} // namespace starrel
