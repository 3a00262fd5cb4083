#ifndef STARREL_MATREP_HPP
#define STARREL_MATREP_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "starrel/ncexpr.hpp"

namespace starrel {

// Dense complex matrices throughout; n = 0 is the zero C*-algebra.
using CMatrix = Eigen::MatrixXcd;

CMatrix cmatrix_zero(Eigen::Index n);
CMatrix cmatrix_identity(Eigen::Index n);

// Assignment of each generator to an n x n matrix.
struct RepTuple {
    Eigen::Index dim = 0;
    std::map<GeneratorId, CMatrix> assignment;

    RepTuple() = default;
    explicit RepTuple(Eigen::Index n) : dim(n) {}

    void set(const GeneratorId& g, CMatrix m);
    const CMatrix& at(const GeneratorId& g) const;
    bool assigns(const GeneratorId& g) const { return assignment.count(g) > 0; }
};

struct EvalOptions {
    double herm_tol = 1e-9;  // relative, for sqrt/exp preconditions
    double psd_tol = 1e-9;   // relative, for sqrt precondition
    double cond_limit = 1e12; // inv is Singular at or above this
};

/// Evaluate an expression on a matrix tuple. sqrt/exp use the spectral
/// calculus of the Hermitian argument; abs(e) = sqrt(eval(e)* eval(e));
/// inv is a general matrix inverse guarded by a condition-number check.
CMatrix eval(const NcExpr& e, const RepTuple& rho, const EvalOptions& opt = {});

/// Like eval, but functional-calculus precondition violations accumulate
/// squared magnitudes into *penalty and the calculus proceeds on the nearest
/// legal argument. Keeps search objectives defined everywhere.
CMatrix eval_clamped(const NcExpr& e, const RepTuple& rho, double* penalty,
                     const EvalOptions& opt = {});

/// Largest singular value; 0 for the 0 x 0 matrix.
double op_norm(const CMatrix& m);

double herm_defect(const CMatrix& m); // ||m - m*||
bool is_hermitian(const CMatrix& m, double tol = 1e-9);
bool is_psd(const CMatrix& m, double tol = 1e-9);

/// Deterministic Hermitian eigendecomposition of (m + m*)/2: eigenvalues
/// ascending, each eigenvector's first significant component rotated to be
/// real positive. Identical input bits give identical output bits.
struct HermEig {
    Eigen::VectorXd values;
    CMatrix vectors;
};
HermEig hermitian_eig(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part; 0 for dim 0.
double min_herm_eigenvalue(const CMatrix& m);

CMatrix mat_sqrt_psd(const CMatrix& m, const EvalOptions& opt = {});
CMatrix mat_exp_hermitian(const CMatrix& m, const EvalOptions& opt = {});
CMatrix mat_abs(const CMatrix& m, const EvalOptions& opt = {});
CMatrix mat_inv(const CMatrix& m, const EvalOptions& opt = {});

/// Block-diagonal direct sum; generator domains must coincide.
RepTuple direct_sum(const std::vector<RepTuple>& parts);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

// Finite-dimensional *-homomorphism M_n -> M_{kn+z} in the normal form
// a |-> U (a (x) I_k  (+)  0_z) U*.
struct MatHom {
    Eigen::Index source_dim = 0;
    Eigen::Index multiplicity = 0; // k
    Eigen::Index zero_pad = 0;     // z
    CMatrix conjugator;            // unitary of dimension k*n + z

    MatHom() = default;
    MatHom(Eigen::Index n, Eigen::Index k, Eigen::Index z, CMatrix u);

    static MatHom identity(Eigen::Index n);

    Eigen::Index target_dim() const { return multiplicity * source_dim + zero_pad; }
    bool injective() const { return multiplicity >= 1; }

    CMatrix apply(const CMatrix& a) const;
};

RepTuple pushforward(const RepTuple& rho, const MatHom& phi);

CMatrix kron(const CMatrix& a, const CMatrix& b);

} // namespace starrel

#endif
