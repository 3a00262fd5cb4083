#include "starrel/blockexpr.hpp"

#include <set>

namespace starrel {

BlockExpr::BlockExpr(size_t k, std::vector<NcExpr> entries) : rows_(k), entries_(std::move(entries)) {
    if (rows_ == 0) throw Error(Errc::BadDimension, "block dimension must be >= 1");
    if (entries_.size() != rows_ * rows_)
        throw Error(Errc::BadDimension, "expected " + std::to_string(rows_ * rows_) + " entries");
}

BlockExpr BlockExpr::diagonal(const NcExpr& e, size_t k) {
    std::vector<NcExpr> entries(k * k, NcExpr::zero());
    for (size_t i = 0; i < k; ++i) entries[i * k + i] = e;
    return BlockExpr(k, std::move(entries));
}

BlockExpr BlockExpr::zero(size_t k) { return diagonal(NcExpr::zero(), k); }
BlockExpr BlockExpr::identity(size_t k) { return diagonal(NcExpr::unit(), k); }

const NcExpr& BlockExpr::scalar_expr() const {
    if (!is_scalar()) throw Error(Errc::BadDimension, "block expression is not 1x1");
    return entries_[0];
}

static void require_same_shape(const BlockExpr& a, const BlockExpr& b) {
    if (a.rows() != b.rows())
        throw Error(Errc::DimMismatch, "block shapes " + std::to_string(a.rows()) + " vs " +
                                           std::to_string(b.rows()));
}

BlockExpr BlockExpr::operator+(const BlockExpr& o) const {
    require_same_shape(*this, o);
    std::vector<NcExpr> entries;
    entries.reserve(entries_.size());
    for (size_t idx = 0; idx < entries_.size(); ++idx)
        entries.push_back(entries_[idx] + o.entries_[idx]);
    return BlockExpr(rows_, std::move(entries));
}

BlockExpr BlockExpr::operator-(const BlockExpr& o) const {
    require_same_shape(*this, o);
    std::vector<NcExpr> entries;
    entries.reserve(entries_.size());
    for (size_t idx = 0; idx < entries_.size(); ++idx)
        entries.push_back(entries_[idx] - o.entries_[idx]);
    return BlockExpr(rows_, std::move(entries));
}

BlockExpr BlockExpr::operator*(const BlockExpr& o) const {
    require_same_shape(*this, o);
    const size_t k = rows_;
    std::vector<NcExpr> entries;
    entries.reserve(k * k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            std::vector<NcExpr> terms;
            terms.reserve(k);
            for (size_t l = 0; l < k; ++l) terms.push_back(at(i, l) * o.at(l, j));
            entries.push_back(NcExpr::sum(std::move(terms)));
        }
    }
    return BlockExpr(k, std::move(entries));
}

BlockExpr BlockExpr::scaled(Complex c) const {
    std::vector<NcExpr> entries;
    entries.reserve(entries_.size());
    for (const auto& e : entries_) entries.push_back(NcExpr::scalar_mul(c, e));
    return BlockExpr(rows_, std::move(entries));
}

BlockExpr BlockExpr::adjoint() const {
    const size_t k = rows_;
    std::vector<NcExpr> entries(k * k, NcExpr::zero());
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) entries[i * k + j] = starrel::adjoint(at(j, i));
    return BlockExpr(k, std::move(entries));
}

BlockExpr BlockExpr::normalized() const {
    std::vector<NcExpr> entries;
    entries.reserve(entries_.size());
    for (const auto& e : entries_) entries.push_back(normalize(e));
    return BlockExpr(rows_, std::move(entries));
}

bool BlockExpr::equals_normalized(const BlockExpr& o) const {
    if (rows_ != o.rows_) return false;
    for (size_t idx = 0; idx < entries_.size(); ++idx)
        if (!normalize(entries_[idx]).equals(normalize(o.entries_[idx]))) return false;
    return true;
}

std::vector<GeneratorId> BlockExpr::generators() const {
    std::set<GeneratorId> seen;
    for (const auto& e : entries_)
        for (const auto& g : e.generators()) seen.insert(g);
    return {seen.begin(), seen.end()};
}

bool BlockExpr::mentions_unit() const {
    for (const auto& e : entries_)
        if (e.mentions_unit()) return true;
    return false;
}

bool BlockExpr::has_func() const {
    for (const auto& e : entries_)
        if (e.has_func()) return true;
    return false;
}

CMatrix BlockExpr::eval_on(const RepTuple& rho, const EvalOptions& opt) const {
    const Eigen::Index m = rho.dim;
    const Eigen::Index k = static_cast<Eigen::Index>(rows_);
    CMatrix out = cmatrix_zero(k * m);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            out.block(i * m, j * m, m, m) = eval(at(i, j), rho, opt);
    return out;
}

CMatrix BlockExpr::eval_on_clamped(const RepTuple& rho, double* penalty,
                                   const EvalOptions& opt) const {
    const Eigen::Index m = rho.dim;
    const Eigen::Index k = static_cast<Eigen::Index>(rows_);
    CMatrix out = cmatrix_zero(k * m);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            out.block(i * m, j * m, m, m) = eval_clamped(at(i, j), rho, penalty, opt);
    return out;
}

BlockExpr lift_to_blocks(const NcExpr& e, const std::map<GeneratorId, BlockExpr>& blocks,
                         size_t k) {
    using Tag = NcExpr::Tag;
    // Block-free subtrees embed diagonally as a whole; this keeps scalar
    // Func nodes legal inside block relations.
    bool mentions_block = false;
    for (const auto& g : e.generators())
        if (blocks.count(g)) mentions_block = true;
    if (!mentions_block) return BlockExpr::diagonal(e, k);

    switch (e.tag()) {
        case Tag::Gen: {
            const BlockExpr& b = blocks.at(e.gen_id());
            if (b.rows() != k)
                throw Error(Errc::DimMismatch, "block " + e.gen_id().token() + " is " +
                                                   std::to_string(b.rows()) + "x" +
                                                   std::to_string(b.rows()) + ", expected " +
                                                   std::to_string(k));
            return b;
        }
        case Tag::Unit: return BlockExpr::identity(k);
        case Tag::Adjoint: return lift_to_blocks(e.kid(), blocks, k).adjoint();
        case Tag::ScalarMul: return lift_to_blocks(e.kid(), blocks, k).scaled(e.scalar_value());
        case Tag::Sum: {
            BlockExpr acc = lift_to_blocks(e.kids().front(), blocks, k);
            for (size_t i = 1; i < e.kids().size(); ++i)
                acc = acc + lift_to_blocks(e.kids()[i], blocks, k);
            return acc;
        }
        case Tag::Product: {
            BlockExpr acc = lift_to_blocks(e.kids().front(), blocks, k);
            for (size_t i = 1; i < e.kids().size(); ++i)
                acc = acc * lift_to_blocks(e.kids()[i], blocks, k);
            return acc;
        }
        case Tag::Func:
            throw Error(Errc::NonPolynomial,
                        std::string(func_name(e.func_kind())) + " of a block expression");
    }
    return BlockExpr::zero(k);
}

} // namespace starrel
