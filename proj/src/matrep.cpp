#include "starrel/matrep.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace starrel {

CMatrix cmatrix_zero(Eigen::Index n) { return CMatrix::Zero(n, n); }
CMatrix cmatrix_identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

void RepTuple::set(const GeneratorId& g, CMatrix m) {
    if (m.rows() != dim || m.cols() != dim)
        throw Error(Errc::DimMismatch, g.token() + ": matrix is " + std::to_string(m.rows()) +
                                           "x" + std::to_string(m.cols()) + ", tuple dim " +
                                           std::to_string(dim));
    assignment[g] = std::move(m);
}

const CMatrix& RepTuple::at(const GeneratorId& g) const {
    auto it = assignment.find(g);
    if (it == assignment.end()) throw Error(Errc::UnboundGenerator, g.token());
    return it->second;
}

double op_norm(const CMatrix& m) {
    if (m.rows() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

double herm_defect(const CMatrix& m) {
    if (m.rows() == 0) return 0.0;
    return op_norm(m - m.adjoint());
}

HermEig hermitian_eig(const CMatrix& m) {
    HermEig out;
    if (m.rows() == 0) {
        out.values.resize(0);
        out.vectors.resize(0, 0);
        return out;
    }
    CMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    out.values = es.eigenvalues(); // ascending
    out.vectors = es.eigenvectors();
    // Fix each eigenvector's phase: first significant component real positive.
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
            Complex v = out.vectors(r, c);
            if (std::abs(v) > 1e-12) {
                out.vectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return out;
}

double min_herm_eigenvalue(const CMatrix& m) {
    if (m.rows() == 0) return 0.0;
    return hermitian_eig(m).values(0);
}

bool is_hermitian(const CMatrix& m, double tol) {
    return herm_defect(m) <= tol * (1.0 + op_norm(m));
}

bool is_psd(const CMatrix& m, double tol) {
    if (m.rows() == 0) return true;
    const double scale = tol * (1.0 + op_norm(m));
    if (herm_defect(m) > scale) return false;
    return min_herm_eigenvalue(m) >= -scale;
}

CMatrix mat_sqrt_psd(const CMatrix& m, const EvalOptions& opt) {
    if (m.rows() == 0) return m;
    const double scale = 1.0 + op_norm(m);
    if (herm_defect(m) > opt.herm_tol * scale)
        throw Error(Errc::NotPSD, "sqrt argument is not Hermitian");
    HermEig eig = hermitian_eig(m);
    if (eig.values(0) < -opt.psd_tol * scale)
        throw Error(Errc::NotPSD, "sqrt argument has eigenvalue " + std::to_string(eig.values(0)));
    Eigen::VectorXd roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

CMatrix mat_exp_hermitian(const CMatrix& m, const EvalOptions& opt) {
    if (m.rows() == 0) return m;
    if (herm_defect(m) > opt.herm_tol * (1.0 + op_norm(m)))
        throw Error(Errc::NotHermitian, "exp argument is not Hermitian");
    HermEig eig = hermitian_eig(m);
    Eigen::VectorXd ex = eig.values.array().exp();
    return eig.vectors * ex.asDiagonal() * eig.vectors.adjoint();
}

CMatrix mat_abs(const CMatrix& m, const EvalOptions& opt) {
    return mat_sqrt_psd(m.adjoint() * m, opt);
}

CMatrix mat_inv(const CMatrix& m, const EvalOptions& opt) {
    if (m.rows() == 0) return m;
    auto svd = m.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0 || smax / smin >= opt.cond_limit)
        throw Error(Errc::Singular, "condition number exceeds limit");
    return svd.solve(cmatrix_identity(m.rows()));
}

CMatrix eval(const NcExpr& e, const RepTuple& rho, const EvalOptions& opt) {
    using Tag = NcExpr::Tag;
    const Eigen::Index n = rho.dim;
    if (n == 0) return CMatrix(0, 0);
    switch (e.tag()) {
        case Tag::Gen: return rho.at(e.gen_id());
        case Tag::Unit: return cmatrix_identity(n);
        case Tag::Adjoint: return eval(e.kid(), rho, opt).adjoint();
        case Tag::ScalarMul: return e.scalar_value() * eval(e.kid(), rho, opt);
        case Tag::Sum: {
            CMatrix acc = cmatrix_zero(n);
            for (const auto& k : e.kids()) acc += eval(k, rho, opt);
            return acc;
        }
        case Tag::Product: {
            CMatrix acc = eval(e.kids().front(), rho, opt);
            for (size_t i = 1; i < e.kids().size(); ++i) acc = acc * eval(e.kids()[i], rho, opt);
            return acc;
        }
        case Tag::Func: {
            CMatrix arg = eval(e.kid(), rho, opt);
            switch (e.func_kind()) {
                case FuncKind::Sqrt: return mat_sqrt_psd(arg, opt);
                case FuncKind::Abs: return mat_abs(arg, opt);
                case FuncKind::Exp: return mat_exp_hermitian(arg, opt);
                case FuncKind::Inv: return mat_inv(arg, opt);
            }
            break;
        }
    }
    throw Error(Errc::InvalidArgument, "unreachable expression tag");
}

namespace {

CMatrix clamped_sqrt(const CMatrix& m, double* penalty) {
    if (m.rows() == 0) return m;
    *penalty += std::pow((m - m.adjoint()).norm(), 2);
    HermEig eig = hermitian_eig(m);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) < 0.0) *penalty += eig.values(i) * eig.values(i);
    Eigen::VectorXd roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

} // namespace

CMatrix eval_clamped(const NcExpr& e, const RepTuple& rho, double* penalty,
                     const EvalOptions& opt) {
    using Tag = NcExpr::Tag;
    const Eigen::Index n = rho.dim;
    if (n == 0) return CMatrix(0, 0);
    switch (e.tag()) {
        case Tag::Gen: return rho.at(e.gen_id());
        case Tag::Unit: return cmatrix_identity(n);
        case Tag::Adjoint: return eval_clamped(e.kid(), rho, penalty, opt).adjoint();
        case Tag::ScalarMul: return e.scalar_value() * eval_clamped(e.kid(), rho, penalty, opt);
        case Tag::Sum: {
            CMatrix acc = cmatrix_zero(n);
            for (const auto& k : e.kids()) acc += eval_clamped(k, rho, penalty, opt);
            return acc;
        }
        case Tag::Product: {
            CMatrix acc = eval_clamped(e.kids().front(), rho, penalty, opt);
            for (size_t i = 1; i < e.kids().size(); ++i)
                acc = acc * eval_clamped(e.kids()[i], rho, penalty, opt);
            return acc;
        }
        case Tag::Func: {
            CMatrix arg = eval_clamped(e.kid(), rho, penalty, opt);
            switch (e.func_kind()) {
                case FuncKind::Sqrt: return clamped_sqrt(arg, penalty);
                case FuncKind::Abs: {
                    double ignore = 0.0; // arg* arg is PSD up to roundoff
                    return clamped_sqrt(arg.adjoint() * arg, &ignore);
                }
                case FuncKind::Exp: {
                    *penalty += std::pow((arg - arg.adjoint()).norm(), 2);
                    HermEig eig = hermitian_eig(arg);
                    Eigen::VectorXd ex = eig.values.array().exp();
                    return eig.vectors * ex.asDiagonal() * eig.vectors.adjoint();
                }
                case FuncKind::Inv: {
                    auto svd = arg.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV);
                    Eigen::VectorXd sv = svd.singularValues();
                    const double floor_at = 1e-9 * (1.0 + sv(0));
                    for (Eigen::Index i = 0; i < sv.size(); ++i) {
                        if (sv(i) < floor_at) {
                            *penalty += std::pow(floor_at - sv(i), 2);
                            sv(i) = floor_at;
                        }
                    }
                    // pseudo-inverse with floored singular values
                    return svd.matrixV() * sv.cwiseInverse().asDiagonal() *
                           svd.matrixU().adjoint();
                }
            }
            break;
        }
    }
    throw Error(Errc::InvalidArgument, "unreachable expression tag");
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    CMatrix out = cmatrix_zero(a.rows() + b.rows());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

RepTuple direct_sum(const std::vector<RepTuple>& parts) {
    if (parts.empty()) return RepTuple(0);
    for (size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].assignment.size() != parts[0].assignment.size())
            throw Error(Errc::DomainMismatch, "generator domains differ");
        for (const auto& [g, _] : parts[0].assignment)
            if (!parts[i].assigns(g)) throw Error(Errc::DomainMismatch, g.token());
    }
    Eigen::Index total = 0;
    for (const auto& p : parts) total += p.dim;
    RepTuple out(total);
    for (const auto& [g, _] : parts[0].assignment) {
        CMatrix m = cmatrix_zero(total);
        Eigen::Index off = 0;
        for (const auto& p : parts) {
            m.block(off, off, p.dim, p.dim) = p.at(g);
            off += p.dim;
        }
        out.assignment[g] = std::move(m);
    }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatHom::MatHom(Eigen::Index n, Eigen::Index k, Eigen::Index z, CMatrix u)
    : source_dim(n), multiplicity(k), zero_pad(z), conjugator(std::move(u)) {
    if (n < 0 || k < 0 || z < 0) throw Error(Errc::InvalidArgument, "negative MatHom shape");
    const Eigen::Index t = k * n + z;
    if (conjugator.rows() != t || conjugator.cols() != t)
        throw Error(Errc::DimMismatch, "conjugator must be " + std::to_string(t) + "x" +
                                           std::to_string(t));
    if (t > 0) {
        const double defect = op_norm(conjugator.adjoint() * conjugator - cmatrix_identity(t));
        if (defect > 1e-10)
            throw Error(Errc::InvalidArgument,
                        "conjugator is not unitary (defect " + std::to_string(defect) + ")");
    }
}

MatHom MatHom::identity(Eigen::Index n) { return MatHom(n, 1, 0, cmatrix_identity(n)); }

CMatrix MatHom::apply(const CMatrix& a) const {
    if (a.rows() != source_dim || a.cols() != source_dim)
        throw Error(Errc::DimMismatch, "element dim " + std::to_string(a.rows()) +
                                           " vs source dim " + std::to_string(source_dim));
    const Eigen::Index t = target_dim();
    CMatrix inner = cmatrix_zero(t);
    if (multiplicity > 0 && source_dim > 0)
        inner.topLeftCorner(multiplicity * source_dim, multiplicity * source_dim) =
            kron(a, cmatrix_identity(multiplicity));
    return conjugator * inner * conjugator.adjoint();
}

RepTuple pushforward(const RepTuple& rho, const MatHom& phi) {
    if (phi.source_dim != rho.dim)
        throw Error(Errc::DimMismatch, "pushforward source dim " + std::to_string(phi.source_dim) +
                                           " vs tuple dim " + std::to_string(rho.dim));
    RepTuple out(phi.target_dim());
    for (const auto& [g, m] : rho.assignment) out.assignment[g] = phi.apply(m);
    return out;
}

} // namespace starrel
