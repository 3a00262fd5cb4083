#ifndef STARREL_TEST_SUPPORT_HPP
#define STARREL_TEST_SUPPORT_HPP

// Test-only oracles, kept independent of the library's computation paths:
// operator norms via power iteration on m* m, 2x2 eigenvalues in closed form,
// and brute-force *-polynomial evaluation by direct word products.

#include <cmath>
#include <vector>

#include "starrel/gmembed.hpp"
#include "starrel/matrep.hpp"
#include "starrel/ncexpr.hpp"
#include "starrel/rng.hpp"

namespace starrel::testing {

// Largest singular value by power iteration on m* m. Independent of the
// SVD used by op_norm.
inline double oracle_opnorm(const CMatrix& m, int iters = 4000) {
    if (m.rows() == 0) return 0.0;
    CMatrix h = m.adjoint() * m;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(h.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += Complex(0.01 * (i + 1), 0.003 * i);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXcd w = h * v;
        const double n = w.norm();
        if (n == 0.0) return 0.0;
        v = w / n;
        lambda = n;
    }
    return std::sqrt(lambda);
}

// Closed-form eigenvalues of a 2x2 Hermitian matrix, ascending.
inline std::pair<double, double> oracle_eig2(const CMatrix& m) {
    const double tr = (m(0, 0) + m(1, 1)).real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

// Direct evaluation of a *-polynomial by word products; bypasses NcExpr eval.
inline CMatrix oracle_poly_eval(const StarPolynomial& p, const RepTuple& rho) {
    CMatrix acc = cmatrix_zero(rho.dim);
    for (const auto& [mono, c] : p.terms()) {
        CMatrix word = cmatrix_identity(rho.dim);
        for (const auto& l : mono) {
            const CMatrix& g = rho.at(l.g);
            word = word * (l.star ? CMatrix(g.adjoint()) : g);
        }
        acc += c * word;
    }
    return acc;
}

inline RepTuple random_tuple(const std::vector<GeneratorId>& gens, Eigen::Index n, Rng& rng,
                             double scale = 1.0) {
    RepTuple rho(n);
    for (const auto& g : gens) rho.assignment[g] = random_matrix(n, rng, scale);
    return rho;
}

// Random expression tree over the given generators; Func-free unless asked.
inline NcExpr random_expr(const std::vector<GeneratorId>& gens, Rng& rng, int depth,
                          bool allow_func = false) {
    if (depth <= 0) {
        switch (rng.uniform_int(0, 3)) {
            case 0: return NcExpr::unit();
            case 1: return NcExpr::scalar(Complex(rng.uniform_int(-3, 3), rng.uniform_int(-2, 2)));
            default: return NcExpr::gen(gens[rng.uniform_int(0, static_cast<int>(gens.size()) - 1)]);
        }
    }
    switch (rng.uniform_int(0, allow_func ? 5 : 4)) {
        case 0: {
            std::vector<NcExpr> terms;
            const int k = rng.uniform_int(2, 3);
            for (int i = 0; i < k; ++i) terms.push_back(random_expr(gens, rng, depth - 1, allow_func));
            return NcExpr::sum(std::move(terms));
        }
        case 1: {
            std::vector<NcExpr> factors;
            const int k = rng.uniform_int(2, 3);
            for (int i = 0; i < k; ++i)
                factors.push_back(random_expr(gens, rng, depth - 1, allow_func));
            return NcExpr::product(std::move(factors));
        }
        case 2:
            return NcExpr::scalar_mul(Complex(rng.uniform_int(-3, 3), rng.uniform_int(-2, 2)),
                                      random_expr(gens, rng, depth - 1, allow_func));
        case 3: return NcExpr::adjoint_node(random_expr(gens, rng, depth - 1, allow_func));
        case 4: return random_expr(gens, rng, 0, allow_func);
        default:
            // Hermitian-by-construction argument keeps sqrt/exp well defined.
            {
                NcExpr e = random_expr(gens, rng, depth - 1, false);
                NcExpr herm = NcExpr::product({adjoint(e), e});
                return NcExpr::func(rng.uniform_int(0, 1) ? FuncKind::Sqrt : FuncKind::Abs, herm);
            }
    }
    return NcExpr::unit();
}

// Random integer-coefficient *-polynomial.
inline StarPolynomial random_int_poly(const std::vector<GeneratorId>& gens, Rng& rng,
                                      int max_degree, int max_terms, int coeff_range = 5) {
    StarPolynomial p;
    const int terms = rng.uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        const int d = rng.uniform_int(0, max_degree);
        for (int i = 0; i < d; ++i)
            m.push_back(Letter{gens[rng.uniform_int(0, static_cast<int>(gens.size()) - 1)],
                               rng.uniform_int(0, 1) == 1});
        int c = rng.uniform_int(-coeff_range, coeff_range);
        p.add_term(m, Complex(c, 0.0));
    }
    return p;
}

inline double rel_err(const CMatrix& a, const CMatrix& b) {
    const double scale = 1.0 + std::max(a.norm(), b.norm());
    return (a - b).norm() / scale;
}

} // namespace starrel::testing

#endif
