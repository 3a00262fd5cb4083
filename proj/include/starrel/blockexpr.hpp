#ifndef STARREL_BLOCKEXPR_HPP
#define STARREL_BLOCKEXPR_HPP

#include <vector>

#include "starrel/matrep.hpp"
#include "starrel/ncexpr.hpp"

namespace starrel {

// A k x k matrix of *-expressions. Scalar expressions are the k = 1 case.
// Evaluating a block on a dim-m tuple assembles a (k*m) x (k*m) matrix with
// the (i,j) entry's value in block position (i,j).
class BlockExpr {
  public:
    BlockExpr() : rows_(1), entries_{NcExpr::zero()} {}
    explicit BlockExpr(NcExpr scalar_expr) : rows_(1), entries_{std::move(scalar_expr)} {}
    BlockExpr(size_t k, std::vector<NcExpr> entries);

    static BlockExpr diagonal(const NcExpr& e, size_t k);
    static BlockExpr zero(size_t k);
    static BlockExpr identity(size_t k);

    size_t rows() const { return rows_; }
    bool is_scalar() const { return rows_ == 1; }
    const NcExpr& at(size_t i, size_t j) const { return entries_[i * rows_ + j]; }
    NcExpr& at(size_t i, size_t j) { return entries_[i * rows_ + j]; }
    const NcExpr& scalar_expr() const;

    BlockExpr operator+(const BlockExpr& o) const;
    BlockExpr operator-(const BlockExpr& o) const;
    BlockExpr operator*(const BlockExpr& o) const;
    BlockExpr scaled(Complex c) const;
    BlockExpr adjoint() const;
    BlockExpr normalized() const;

    bool equals_normalized(const BlockExpr& o) const;

    std::vector<GeneratorId> generators() const;
    bool mentions_unit() const;
    bool has_func() const;

    CMatrix eval_on(const RepTuple& rho, const EvalOptions& opt = {}) const;
    CMatrix eval_on_clamped(const RepTuple& rho, double* penalty,
                            const EvalOptions& opt = {}) const;

  private:
    size_t rows_;
    std::vector<NcExpr> entries_; // row-major, rows_ * rows_
};

/// Lift a scalar expression over generators-and-block-names into a k x k
/// block expression: block names map through `blocks`, everything else embeds
/// diagonally. Func nodes over block-mentioning subtrees are rejected.
BlockExpr lift_to_blocks(const NcExpr& e, const std::map<GeneratorId, BlockExpr>& blocks,
                         size_t k);

} // namespace starrel

#endif
