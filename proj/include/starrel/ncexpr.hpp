#ifndef STARREL_NCEXPR_HPP
#define STARREL_NCEXPR_HPP

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starrel/errors.hpp"

namespace starrel {

using Complex = std::complex<double>;

// A generator symbol. Plain generators carry just a base token; entry
// generators (base, i, j) with 1 <= i, j are produced by comatrix unfolding
// and render as "base_i_j". Ordering is by rendered token throughout.
struct GeneratorId {
    std::string base;
    int i = 0;
    int j = 0;

    GeneratorId() = default;
    explicit GeneratorId(std::string name) : base(std::move(name)) {}
    GeneratorId(std::string b, int i_, int j_) : base(std::move(b)), i(i_), j(j_) {}

    bool is_entry() const { return i >= 1 && j >= 1; }
    std::string token() const;

    bool operator==(const GeneratorId& o) const { return base == o.base && i == o.i && j == o.j; }
    bool operator!=(const GeneratorId& o) const { return !(*this == o); }
    bool operator<(const GeneratorId& o) const { return token() < o.token(); }
};

enum class FuncKind { Sqrt, Abs, Exp, Inv };

const char* func_name(FuncKind f);

// Immutable noncommutative *-expression tree. Cheap to copy (shared nodes).
class NcExpr {
  public:
    enum class Tag { Gen, Unit, Adjoint, Sum, Product, ScalarMul, Func };

    struct Node {
        Tag tag;
        GeneratorId gen;              // Tag::Gen
        Complex scalar{0.0, 0.0};     // Tag::ScalarMul
        FuncKind func = FuncKind::Sqrt; // Tag::Func
        std::vector<NcExpr> kids;     // unary: one child; Sum/Product: >= 1
    };

    NcExpr(); // the zero expression, 0 * 1

    static NcExpr gen(GeneratorId g);
    static NcExpr gen(const std::string& name) { return gen(GeneratorId(name)); }
    static NcExpr unit();
    static NcExpr zero();
    static NcExpr scalar(Complex c); // c * 1
    static NcExpr adjoint_node(NcExpr e);
    static NcExpr sum(std::vector<NcExpr> terms);
    static NcExpr product(std::vector<NcExpr> factors);
    static NcExpr scalar_mul(Complex c, NcExpr e);
    static NcExpr func(FuncKind f, NcExpr arg);

    Tag tag() const { return node_->tag; }
    const GeneratorId& gen_id() const { return node_->gen; }
    Complex scalar_value() const { return node_->scalar; }
    FuncKind func_kind() const { return node_->func; }
    const std::vector<NcExpr>& kids() const { return node_->kids; }
    const NcExpr& kid(size_t k = 0) const { return node_->kids[k]; }

    bool is_zero() const; // structurally 0 * 1
    bool is_unit() const { return tag() == Tag::Unit; }

    // Total structural order; used for canonical form and grouping.
    static int compare(const NcExpr& a, const NcExpr& b);
    bool equals(const NcExpr& o) const { return compare(*this, o) == 0; }

    // Collect distinct generators, ordered by token.
    std::vector<GeneratorId> generators() const;
    bool mentions_unit() const;
    bool has_func() const;

    std::string to_string() const;

  private:
    explicit NcExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Convenience arithmetic (does not normalize).
NcExpr operator+(const NcExpr& a, const NcExpr& b);
NcExpr operator-(const NcExpr& a, const NcExpr& b);
NcExpr operator*(const NcExpr& a, const NcExpr& b);
NcExpr operator*(Complex c, const NcExpr& e);
NcExpr operator-(const NcExpr& e);

/// Canonical flattening: folds scalars, flattens sums/products, combines
/// like summands, drops zero summands and unit factors, lowers adjoints to
/// generators and functional-calculus nodes. Idempotent; eval-preserving.
NcExpr normalize(const NcExpr& e);

/// The involution: anti-multiplicative, conjugate-linear, an involution.
NcExpr adjoint(const NcExpr& e);

/// Homomorphic substitution of generators. Throws UnboundGenerator if a
/// generator of e is missing from m.
NcExpr substitute(const NcExpr& e, const std::map<GeneratorId, NcExpr>& m);

// ---------------------------------------------------------------------------
// *-polynomials: finitely supported complex combinations of words over
// {g, g*}. Canonical order is graded lexicographic with g < g* per
// generator and generators ordered by token.

struct Letter {
    GeneratorId g;
    bool star = false;

    bool operator==(const Letter& o) const { return g == o.g && star == o.star; }
    bool operator<(const Letter& o) const {
        if (g != o.g) return g < o.g;
        return star < o.star;
    }
};

using Monomial = std::vector<Letter>; // empty = the constant word

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

std::string monomial_to_string(const Monomial& m);

class StarPolynomial {
  public:
    using Terms = std::map<Monomial, Complex, MonomialLess>;

    StarPolynomial() = default;

    static StarPolynomial zero() { return {}; }
    static StarPolynomial constant(Complex c);
    static StarPolynomial generator(const GeneratorId& g, bool star = false);
    static StarPolynomial monomial(Monomial m, Complex c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Complex coeff(const Monomial& m) const;
    Complex constant_term() const { return coeff({}); }
    int degree() const; // -1 for the zero polynomial

    void add_term(const Monomial& m, Complex c);

    StarPolynomial operator+(const StarPolynomial& o) const;
    StarPolynomial operator-(const StarPolynomial& o) const;
    StarPolynomial operator*(const StarPolynomial& o) const;
    StarPolynomial scaled(Complex c) const;
    StarPolynomial adjoint() const;

    bool equals(const StarPolynomial& o, double tol = 1e-12) const;

    NcExpr to_expr() const;
    std::string to_string() const;

  private:
    Terms terms_;
};

/// Expansion of a Func-free expression into its *-polynomial. Throws
/// NonPolynomial when the expression contains sqrt/abs/exp/inv.
StarPolynomial to_polynomial(const NcExpr& e);

std::string complex_to_string(Complex c);

} // namespace starrel

#endif
