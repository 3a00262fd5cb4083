#include "starrel/fdca.hpp"

#include <algorithm>
#include <sstream>

#include "starrel/rng.hpp"

namespace starrel {

FDAlgebra::FDAlgebra(std::vector<Eigen::Index> b) : blocks(std::move(b)) {
    for (Eigen::Index n : blocks)
        if (n <= 0) throw Error(Errc::BadDimension, "block dimension must be positive");
}

FDElement FDElement::zero(const FDAlgebra& a) {
    FDElement e;
    e.mats.reserve(a.block_count());
    for (Eigen::Index n : a.blocks) e.mats.push_back(cmatrix_zero(n));
    return e;
}

bool FDElement::matches(const FDAlgebra& a) const {
    if (mats.size() != a.block_count()) return false;
    for (size_t i = 0; i < mats.size(); ++i)
        if (mats[i].rows() != a.blocks[i] || mats[i].cols() != a.blocks[i]) return false;
    return true;
}

double FDElement::norm() const {
    double out = 0.0;
    for (const auto& m : mats) out = std::max(out, op_norm(m));
    return out;
}

FDElement FDElement::operator+(const FDElement& o) const {
    if (mats.size() != o.mats.size()) throw Error(Errc::DimMismatch, "block counts differ");
    FDElement e;
    e.mats.reserve(mats.size());
    for (size_t i = 0; i < mats.size(); ++i) e.mats.push_back(mats[i] + o.mats[i]);
    return e;
}

FDElement FDElement::operator*(const FDElement& o) const {
    if (mats.size() != o.mats.size()) throw Error(Errc::DimMismatch, "block counts differ");
    FDElement e;
    e.mats.reserve(mats.size());
    for (size_t i = 0; i < mats.size(); ++i) e.mats.push_back(mats[i] * o.mats[i]);
    return e;
}

FDElement FDElement::adjoint() const {
    FDElement e;
    e.mats.reserve(mats.size());
    for (const auto& m : mats) e.mats.push_back(m.adjoint());
    return e;
}

bool FDElement::equals(const FDElement& o, double tol) const {
    if (mats.size() != o.mats.size()) return false;
    for (size_t i = 0; i < mats.size(); ++i) {
        if (mats[i].rows() != o.mats[i].rows()) return false;
        if ((mats[i] - o.mats[i]).norm() > tol) return false;
    }
    return true;
}

BlockIdeal BlockIdeal::unite(const BlockIdeal& o) const {
    std::set<size_t> u = indices;
    u.insert(o.indices.begin(), o.indices.end());
    return BlockIdeal(std::move(u));
}

void BlockIdeal::validate(const FDAlgebra& a) const {
    for (size_t i : indices)
        if (i >= a.block_count())
            throw Error(Errc::BadIndex, "block index " + std::to_string(i) + " out of range");
}

FDElement BlockSurjection::apply(const FDElement& x) const {
    if (!x.matches(source)) throw Error(Errc::DimMismatch, "element does not match source");
    FDElement y;
    y.mats.reserve(kept.size());
    for (size_t i : kept) y.mats.push_back(x.mats[i]);
    return y;
}

bool BlockSurjection::kills(size_t source_index) const {
    return std::find(kept.begin(), kept.end(), source_index) == kept.end();
}

FDElement BlockSurjection::section(const FDElement& y) const {
    if (!y.matches(target)) throw Error(Errc::DimMismatch, "element does not match target");
    FDElement x = FDElement::zero(source);
    for (size_t i = 0; i < kept.size(); ++i) x.mats[kept[i]] = y.mats[i];
    return x;
}

std::pair<FDAlgebra, BlockSurjection> quotient(const FDAlgebra& a, const BlockIdeal& ideal) {
    ideal.validate(a);
    BlockSurjection s;
    s.source = a;
    for (size_t i = 0; i < a.block_count(); ++i) {
        if (ideal.contains(i)) continue;
        s.kept.push_back(i);
        s.target.blocks.push_back(a.blocks[i]);
    }
    return {s.target, std::move(s)};
}

PushoutSquare pushout_of_quotients(const FDAlgebra& c, const BlockIdeal& j, const BlockIdeal& k) {
    j.validate(c);
    k.validate(c);
    PushoutSquare sq;
    sq.c = c;
    sq.j = j;
    sq.k = k;
    sq.alpha = quotient(c, k).second;
    sq.beta = quotient(c, j).second;
    const BlockIdeal jk = j.unite(k);

    // gamma : C/J -> X keeps positions whose source block survives J + K.
    sq.gamma.source = sq.beta.target;
    for (size_t pos = 0; pos < sq.beta.kept.size(); ++pos) {
        const size_t src = sq.beta.kept[pos];
        if (jk.contains(src)) continue;
        sq.gamma.kept.push_back(pos);
        sq.gamma.target.blocks.push_back(sq.beta.target.blocks[pos]);
    }
    // delta : C/K -> X likewise.
    sq.delta.source = sq.alpha.target;
    for (size_t pos = 0; pos < sq.alpha.kept.size(); ++pos) {
        const size_t src = sq.alpha.kept[pos];
        if (jk.contains(src)) continue;
        sq.delta.kept.push_back(pos);
        sq.delta.target.blocks.push_back(sq.alpha.target.blocks[pos]);
    }
    return sq;
}

FDElement random_element(const FDAlgebra& a, std::uint64_t seed) {
    Rng rng(seed);
    FDElement e;
    e.mats.reserve(a.block_count());
    for (Eigen::Index n : a.blocks) e.mats.push_back(random_matrix(n, rng));
    return e;
}

VerifyReport verify_kernel_image(const PushoutSquare& sq, int samples, std::uint64_t seed) {
    VerifyReport rep;
    std::ostringstream detail;

    // Square commutes: the two composites keep exactly the blocks outside J+K,
    // in the same order.
    std::vector<size_t> via_a, via_b;
    for (size_t pos : sq.delta.kept) via_a.push_back(sq.alpha.kept[pos]);
    for (size_t pos : sq.gamma.kept) via_b.push_back(sq.beta.kept[pos]);
    rep.square_commutes = via_a == via_b && sq.gamma.target == sq.delta.target;

    rep.gamma_surjective = sq.gamma.kept.size() == sq.gamma.target.block_count();
    rep.delta_surjective = sq.delta.kept.size() == sq.delta.target.block_count();

    // alpha(ker beta) = ker delta at the index level: both are the J \ K
    // blocks, read inside C/K.
    std::set<size_t> alpha_of_ker_beta;
    for (size_t pos = 0; pos < sq.alpha.kept.size(); ++pos)
        if (sq.j.contains(sq.alpha.kept[pos])) alpha_of_ker_beta.insert(pos);
    std::set<size_t> ker_delta;
    for (size_t pos = 0; pos < sq.alpha.kept.size(); ++pos)
        if (sq.delta.kills(pos)) ker_delta.insert(pos);
    rep.kernel_image_match = alpha_of_ker_beta == ker_delta;

    rep.numeric_pass = true;
    for (int s = 0; s < samples; ++s) {
        // commutativity on a random element
        FDElement x = random_element(sq.c, seed + 2 * s);
        if (!sq.delta.apply(sq.alpha.apply(x)).equals(sq.gamma.apply(sq.beta.apply(x))))
            rep.numeric_pass = false;

        // a random ker(beta) element maps into ker(delta)
        FDElement kb = FDElement::zero(sq.c);
        FDElement r = random_element(sq.c, seed + 2 * s + 1);
        for (size_t i : sq.j.indices) kb.mats[i] = r.mats[i];
        FDElement img = sq.alpha.apply(kb);
        FDElement dx = sq.delta.apply(img);
        if (dx.norm() != 0.0) rep.numeric_pass = false;

        // and every ker(delta) element is alpha of a ker(beta) element
        FDElement kd = FDElement::zero(sq.delta.source);
        for (size_t pos : ker_delta) kd.mats[pos] = r.mats[sq.alpha.kept[pos]];
        FDElement pre = sq.alpha.section(kd);
        if (!sq.beta.apply(pre).equals(FDElement::zero(sq.beta.target)))
            rep.numeric_pass = false;
        if (!sq.alpha.apply(pre).equals(kd)) rep.numeric_pass = false;
    }

    rep.pass = rep.square_commutes && rep.gamma_surjective && rep.delta_surjective &&
               rep.kernel_image_match && rep.numeric_pass;
    if (!rep.pass) {
        detail << "commutes=" << rep.square_commutes << " gamma_onto=" << rep.gamma_surjective
               << " delta_onto=" << rep.delta_surjective
               << " kernels=" << rep.kernel_image_match << " numeric=" << rep.numeric_pass;
        rep.detail = detail.str();
    }
    return rep;
}

FDElement lift_pair(const PushoutSquare& sq, const FDElement& a, const FDElement& b) {
    if (!a.matches(sq.a())) throw Error(Errc::DimMismatch, "a does not live in C/K");
    if (!b.matches(sq.b())) throw Error(Errc::DimMismatch, "b does not live in C/J");
    if (!sq.delta.apply(a).equals(sq.gamma.apply(b)))
        throw Error(Errc::IncompatiblePair, "delta(a) != gamma(b)");

    // Position of each surviving block inside C/K and C/J.
    std::vector<int> pos_in_a(sq.c.block_count(), -1), pos_in_b(sq.c.block_count(), -1);
    for (size_t p = 0; p < sq.alpha.kept.size(); ++p) pos_in_a[sq.alpha.kept[p]] = static_cast<int>(p);
    for (size_t p = 0; p < sq.beta.kept.size(); ++p) pos_in_b[sq.beta.kept[p]] = static_cast<int>(p);

    FDElement c = FDElement::zero(sq.c);
    for (size_t i = 0; i < sq.c.block_count(); ++i) {
        const bool in_j = sq.j.contains(i);
        const bool in_k = sq.k.contains(i);
        if (in_j && in_k) continue; // kernel overlap: 0 is the canonical choice
        if (!in_k)
            c.mats[i] = a.mats[pos_in_a[i]]; // covers both J\K and the common part
        else
            c.mats[i] = b.mats[pos_in_b[i]]; // K\J
    }
    return c;
}

PushoutTower make_tower(const FDAlgebra& top, const BlockIdeal& top_rho_kernel,
                        const std::vector<BlockIdeal>& bonding_kernels) {
    top_rho_kernel.validate(top);

    std::vector<FDAlgebra> a_td{top};
    std::vector<PushoutSquare> sq_td;
    FDAlgebra cur = top;
    BlockIdeal cur_j = top_rho_kernel;
    for (const auto& k : bonding_kernels) {
        k.validate(cur);
        PushoutSquare sq = pushout_of_quotients(cur, cur_j, k);
        // The kernel of the lower rho is forced: the image of J inside C/K.
        BlockIdeal next_j;
        for (size_t pos = 0; pos < sq.alpha.kept.size(); ++pos)
            if (cur_j.contains(sq.alpha.kept[pos])) next_j.indices.insert(pos);
        cur = sq.a();
        cur_j = next_j;
        a_td.push_back(cur);
        sq_td.push_back(std::move(sq));
    }

    PushoutTower t;
    const size_t n = a_td.size();
    t.a_col.assign(a_td.rbegin(), a_td.rend());
    t.squares.assign(sq_td.rbegin(), sq_td.rend());

    auto bottom = quotient(cur, cur_j);
    t.b_col.resize(n);
    t.rho.resize(n);
    t.b_col[0] = bottom.first;
    t.rho[0] = bottom.second;
    for (size_t lvl = 1; lvl < n; ++lvl) {
        t.b_col[lvl] = t.squares[lvl - 1].b();
        t.rho[lvl] = t.squares[lvl - 1].beta;
        t.alpha_bond.push_back(t.squares[lvl - 1].alpha);
        t.beta_bond.push_back(t.squares[lvl - 1].gamma);
    }
    return t;
}

std::vector<FDElement> lift_coherent_sequence(const PushoutTower& tower,
                                              const std::vector<FDElement>& b) {
    const size_t n = tower.depth();
    if (b.size() != n) throw Error(Errc::InvalidArgument, "sequence length != tower depth");
    for (size_t lvl = 0; lvl < n; ++lvl) {
        if (!b[lvl].matches(tower.b_col[lvl]))
            throw Error(Errc::DimMismatch, "b[" + std::to_string(lvl) + "] shape mismatch");
        if (tower.rho[lvl].kept.size() != tower.b_col[lvl].block_count())
            throw Error(Errc::NotSurjective, "rho_" + std::to_string(lvl));
    }
    for (size_t lvl = 0; lvl + 1 < n; ++lvl)
        if (!tower.beta_bond[lvl].apply(b[lvl + 1]).equals(b[lvl]))
            throw Error(Errc::NotCoherent, "bonding map mismatch at level " + std::to_string(lvl));

    std::vector<FDElement> a;
    a.reserve(n);
    a.push_back(tower.rho[0].section(b[0])); // free choice: zeros off the image
    for (size_t lvl = 0; lvl + 1 < n; ++lvl)
        a.push_back(lift_pair(tower.squares[lvl], a[lvl], b[lvl + 1]));
    return a;
}

} // namespace starrel
