#ifndef STARREL_FDCA_HPP
#define STARREL_FDCA_HPP

#include <set>
#include <string>
#include <vector>

#include "starrel/matrep.hpp"

namespace starrel {

// Finite-dimensional C*-algebra: a direct sum of matrix blocks. k = 0 is the
// zero algebra. Closed two-sided ideals are exactly subsets of blocks.
struct FDAlgebra {
    std::vector<Eigen::Index> blocks;

    FDAlgebra() = default;
    explicit FDAlgebra(std::vector<Eigen::Index> b);

    size_t block_count() const { return blocks.size(); }
    bool operator==(const FDAlgebra& o) const { return blocks == o.blocks; }
};

struct FDElement {
    std::vector<CMatrix> mats; // one per block

    static FDElement zero(const FDAlgebra& a);
    bool matches(const FDAlgebra& a) const;
    double norm() const; // max of block operator norms

    FDElement operator+(const FDElement& o) const;
    FDElement operator*(const FDElement& o) const;
    FDElement adjoint() const;
    bool equals(const FDElement& o, double tol = 0.0) const;
};

// Ideal as a set of 0-based block indices.
struct BlockIdeal {
    std::set<size_t> indices;

    BlockIdeal() = default;
    BlockIdeal(std::initializer_list<size_t> l) : indices(l) {}
    explicit BlockIdeal(std::set<size_t> s) : indices(std::move(s)) {}

    bool contains(size_t i) const { return indices.count(i) > 0; }
    BlockIdeal unite(const BlockIdeal& o) const;
    void validate(const FDAlgebra& a) const;
};

// Block-dropping surjection A -> A/I; kept[i] is the source index of the
// i-th surviving block.
struct BlockSurjection {
    FDAlgebra source;
    FDAlgebra target;
    std::vector<size_t> kept;

    FDElement apply(const FDElement& x) const;
    bool kills(size_t source_index) const;
    /// Preimage with zeros on the dropped blocks.
    FDElement section(const FDElement& y) const;
};

std::pair<FDAlgebra, BlockSurjection> quotient(const FDAlgebra& a, const BlockIdeal& ideal);

// The commuting square C -> C/J, C -> C/K, with X = C/(J+K):
//
//        beta
//     C ------> C/J = B
//     |            |
//   alpha        gamma
//     v            v
//  A = C/K ----> X
//         delta
struct PushoutSquare {
    FDAlgebra c;
    BlockIdeal j;
    BlockIdeal k;
    BlockSurjection alpha; // C -> C/K
    BlockSurjection beta;  // C -> C/J
    BlockSurjection gamma; // C/J -> X
    BlockSurjection delta; // C/K -> X

    const FDAlgebra& a() const { return alpha.target; }
    const FDAlgebra& b() const { return beta.target; }
    const FDAlgebra& x() const { return gamma.target; }
};

PushoutSquare pushout_of_quotients(const FDAlgebra& c, const BlockIdeal& j, const BlockIdeal& k);

struct VerifyReport {
    bool pass = false;
    bool square_commutes = false;
    bool gamma_surjective = false;
    bool delta_surjective = false;
    bool kernel_image_match = false; // alpha(ker beta) = ker delta, structurally
    bool numeric_pass = false;
    std::string detail;
};

/// Structural and randomized checks of the square: commutativity,
/// surjectivity of gamma and delta, and alpha(ker beta) = ker delta.
VerifyReport verify_kernel_image(const PushoutSquare& sq, int samples, std::uint64_t seed);

/// Given a in C/K and b in C/J with delta(a) = gamma(b), produce c in C with
/// alpha(c) = a, beta(c) = b. Blocks in both J and K are set to zero.
FDElement lift_pair(const PushoutSquare& sq, const FDElement& a, const FDElement& b);

// Tower of pushout squares: level n is the square with C = algebra(n+1),
// alpha bonding algebra(n+1) -> algebra(n) and rho(n) : algebra(n) -> B(n).
// The kernels of the downward rho maps are forced by the pushout property.
struct PushoutTower {
    std::vector<FDAlgebra> a_col;        // A_1 .. A_N (index 0 = bottom)
    std::vector<FDAlgebra> b_col;        // B_1 .. B_N
    std::vector<BlockSurjection> rho;    // rho_n : A_n -> B_n
    std::vector<PushoutSquare> squares;  // square n joins levels n+1 and n
    std::vector<BlockSurjection> alpha_bond; // A_{n+1} -> A_n
    std::vector<BlockSurjection> beta_bond;  // B_{n+1} -> B_n

    size_t depth() const { return a_col.size(); }
};

/// Build the tower determined by the top algebra, the kernel of the top rho,
/// and one alpha-bonding kernel per level (top to bottom).
PushoutTower make_tower(const FDAlgebra& top, const BlockIdeal& top_rho_kernel,
                        const std::vector<BlockIdeal>& bonding_kernels);

/// Lift a coherent sequence b_n in the B column to a coherent a_n with
/// rho_n(a_n) = b_n, exactly: one free choice at the bottom, then repeated
/// lift_pair.
std::vector<FDElement> lift_coherent_sequence(const PushoutTower& tower,
                                              const std::vector<FDElement>& b);

FDElement random_element(const FDAlgebra& a, std::uint64_t seed);

} // namespace starrel

#endif
