#include "starrel/ncexpr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace starrel {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPolynomial: return "NonPolynomial";
        case Errc::UnboundGenerator: return "UnboundGenerator";
        case Errc::NotPSD: return "NotPSD";
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::Singular: return "Singular";
        case Errc::DimMismatch: return "DimMismatch";
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::EmptyList: return "EmptyList";
        case Errc::NonpositiveWeight: return "NonpositiveWeight";
        case Errc::NotInjective: return "NotInjective";
        case Errc::AlphaNotRepresentation: return "AlphaNotRepresentation";
        case Errc::BadDimension: return "BadDimension";
        case Errc::MissingEntry: return "MissingEntry";
        case Errc::BadIndex: return "BadIndex";
        case Errc::IncompatiblePair: return "IncompatiblePair";
        case Errc::NotCoherent: return "NotCoherent";
        case Errc::NotSurjective: return "NotSurjective";
        case Errc::UnknownName: return "UnknownName";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UndeclaredGenerator: return "UndeclaredGenerator";
        case Errc::DuplicateGenerator: return "DuplicateGenerator";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

std::string GeneratorId::token() const {
    if (!is_entry()) return base;
    return base + "_" + std::to_string(i) + "_" + std::to_string(j);
}

const char* func_name(FuncKind f) {
    switch (f) {
        case FuncKind::Sqrt: return "sqrt";
        case FuncKind::Abs: return "abs";
        case FuncKind::Exp: return "exp";
        case FuncKind::Inv: return "inv";
    }
    return "?";
}

// --- construction ---

static std::shared_ptr<const NcExpr::Node> make_node(NcExpr::Node n) {
    return std::make_shared<const NcExpr::Node>(std::move(n));
}

NcExpr::NcExpr() { *this = zero(); }

NcExpr NcExpr::gen(GeneratorId g) {
    Node n;
    n.tag = Tag::Gen;
    n.gen = std::move(g);
    return NcExpr(make_node(std::move(n)));
}

NcExpr NcExpr::unit() {
    Node n;
    n.tag = Tag::Unit;
    return NcExpr(make_node(std::move(n)));
}

NcExpr NcExpr::zero() { return scalar_mul(Complex(0.0, 0.0), unit()); }

NcExpr NcExpr::scalar(Complex c) { return scalar_mul(c, unit()); }

NcExpr NcExpr::adjoint_node(NcExpr e) {
    Node n;
    n.tag = Tag::Adjoint;
    n.kids.push_back(std::move(e));
    return NcExpr(make_node(std::move(n)));
}

NcExpr NcExpr::sum(std::vector<NcExpr> terms) {
    if (terms.empty()) throw Error(Errc::InvalidArgument, "empty sum");
    if (terms.size() == 1) return terms.front();
    Node n;
    n.tag = Tag::Sum;
    n.kids = std::move(terms);
    return NcExpr(make_node(std::move(n)));
}

NcExpr NcExpr::product(std::vector<NcExpr> factors) {
    if (factors.empty()) throw Error(Errc::InvalidArgument, "empty product");
    if (factors.size() == 1) return factors.front();
    Node n;
    n.tag = Tag::Product;
    n.kids = std::move(factors);
    return NcExpr(make_node(std::move(n)));
}

NcExpr NcExpr::scalar_mul(Complex c, NcExpr e) {
    Node n;
    n.tag = Tag::ScalarMul;
    n.scalar = c;
    n.kids.push_back(std::move(e));
    return NcExpr(make_node(std::move(n)));
}

NcExpr NcExpr::func(FuncKind f, NcExpr arg) {
    Node n;
    n.tag = Tag::Func;
    n.func = f;
    n.kids.push_back(std::move(arg));
    return NcExpr(make_node(std::move(n)));
}

bool NcExpr::is_zero() const {
    return tag() == Tag::ScalarMul && scalar_value() == Complex(0.0, 0.0) && kid().is_unit();
}

NcExpr operator+(const NcExpr& a, const NcExpr& b) { return NcExpr::sum({a, b}); }
NcExpr operator-(const NcExpr& a, const NcExpr& b) {
    return NcExpr::sum({a, NcExpr::scalar_mul(Complex(-1.0, 0.0), b)});
}
NcExpr operator*(const NcExpr& a, const NcExpr& b) { return NcExpr::product({a, b}); }
NcExpr operator*(Complex c, const NcExpr& e) { return NcExpr::scalar_mul(c, e); }
NcExpr operator-(const NcExpr& e) { return NcExpr::scalar_mul(Complex(-1.0, 0.0), e); }

// --- structural order ---

static int cmp_complex(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
    if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
    return 0;
}

int NcExpr::compare(const NcExpr& a, const NcExpr& b) {
    if (a.tag() != b.tag()) return static_cast<int>(a.tag()) < static_cast<int>(b.tag()) ? -1 : 1;
    switch (a.tag()) {
        case Tag::Unit: return 0;
        case Tag::Gen: {
            const std::string ta = a.gen_id().token(), tb = b.gen_id().token();
            return ta < tb ? -1 : (ta > tb ? 1 : 0);
        }
        case Tag::ScalarMul: {
            if (int c = cmp_complex(a.scalar_value(), b.scalar_value())) return c;
            return compare(a.kid(), b.kid());
        }
        case Tag::Adjoint: return compare(a.kid(), b.kid());
        case Tag::Func: {
            if (a.func_kind() != b.func_kind())
                return static_cast<int>(a.func_kind()) < static_cast<int>(b.func_kind()) ? -1 : 1;
            return compare(a.kid(), b.kid());
        }
        case Tag::Sum:
        case Tag::Product: {
            const auto& ka = a.kids();
            const auto& kb = b.kids();
            if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
            for (size_t i = 0; i < ka.size(); ++i)
                if (int c = compare(ka[i], kb[i])) return c;
            return 0;
        }
    }
    return 0;
}

static void collect_gens(const NcExpr& e, std::map<GeneratorId, bool>& out) {
    if (e.tag() == NcExpr::Tag::Gen) {
        out[e.gen_id()] = true;
        return;
    }
    for (const auto& k : e.kids()) collect_gens(k, out);
}

std::vector<GeneratorId> NcExpr::generators() const {
    std::map<GeneratorId, bool> seen;
    collect_gens(*this, seen);
    std::vector<GeneratorId> out;
    out.reserve(seen.size());
    for (const auto& [g, _] : seen) out.push_back(g);
    return out;
}

bool NcExpr::mentions_unit() const {
    if (tag() == Tag::Unit) return true;
    for (const auto& k : kids())
        if (k.mentions_unit()) return true;
    return false;
}

bool NcExpr::has_func() const {
    if (tag() == Tag::Func) return true;
    for (const auto& k : kids())
        if (k.has_func()) return true;
    return false;
}

// --- adjoint ---

NcExpr adjoint(const NcExpr& e) {
    using Tag = NcExpr::Tag;
    switch (e.tag()) {
        case Tag::Unit: return e;
        case Tag::Gen: return NcExpr::adjoint_node(e);
        case Tag::Adjoint: return e.kid();
        case Tag::ScalarMul:
            return NcExpr::scalar_mul(std::conj(e.scalar_value()), adjoint(e.kid()));
        case Tag::Sum: {
            std::vector<NcExpr> terms;
            terms.reserve(e.kids().size());
            for (const auto& k : e.kids()) terms.push_back(adjoint(k));
            return NcExpr::sum(std::move(terms));
        }
        case Tag::Product: {
            std::vector<NcExpr> factors;
            factors.reserve(e.kids().size());
            for (auto it = e.kids().rbegin(); it != e.kids().rend(); ++it)
                factors.push_back(adjoint(*it));
            return NcExpr::product(std::move(factors));
        }
        case Tag::Func:
            // No sound symbolic rewrite for a general argument; the node stays.
            return NcExpr::adjoint_node(e);
    }
    return e;
}

// --- normalize ---

namespace {

struct ExprLess {
    bool operator()(const NcExpr& a, const NcExpr& b) const { return NcExpr::compare(a, b) < 0; }
};

// Split a normalized expression into (coefficient, scalar-free core).
std::pair<Complex, NcExpr> split_scalar(const NcExpr& e) {
    if (e.tag() == NcExpr::Tag::ScalarMul) return {e.scalar_value(), e.kid()};
    return {Complex(1.0, 0.0), e};
}

NcExpr with_scalar(Complex c, const NcExpr& core) {
    if (c == Complex(0.0, 0.0)) return NcExpr::zero();
    if (c == Complex(1.0, 0.0)) return core;
    return NcExpr::scalar_mul(c, core);
}

} // namespace

NcExpr normalize(const NcExpr& e) {
    using Tag = NcExpr::Tag;
    switch (e.tag()) {
        case Tag::Gen:
        case Tag::Unit:
            return e;

        case Tag::ScalarMul: {
            NcExpr inner = normalize(e.kid());
            auto [c, core] = split_scalar(inner);
            return with_scalar(e.scalar_value() * c, core);
        }

        case Tag::Adjoint: {
            NcExpr inner = normalize(e.kid());
            switch (inner.tag()) {
                case Tag::Unit: return inner;
                case Tag::Gen: return NcExpr::adjoint_node(inner);
                case Tag::Adjoint: return inner.kid(); // already normalized
                case Tag::Func: return NcExpr::adjoint_node(inner);
                default: return normalize(adjoint(inner));
            }
        }

        case Tag::Sum: {
            // Flatten, then combine like cores.
            std::vector<NcExpr> flat;
            for (const auto& k : e.kids()) {
                NcExpr nk = normalize(k);
                if (nk.tag() == Tag::Sum)
                    flat.insert(flat.end(), nk.kids().begin(), nk.kids().end());
                else
                    flat.push_back(std::move(nk));
            }
            std::map<NcExpr, Complex, ExprLess> groups;
            for (const auto& t : flat) {
                if (t.is_zero()) continue;
                auto [c, core] = split_scalar(t);
                groups[core] += c;
            }
            std::vector<NcExpr> terms;
            for (const auto& [core, c] : groups) {
                if (c == Complex(0.0, 0.0)) continue;
                terms.push_back(with_scalar(c, core));
            }
            if (terms.empty()) return NcExpr::zero();
            if (terms.size() == 1) return terms.front();
            return NcExpr::sum(std::move(terms));
        }

        case Tag::Product: {
            std::vector<NcExpr> flat;
            Complex coeff(1.0, 0.0);
            for (const auto& k : e.kids()) {
                NcExpr nk = normalize(k);
                if (nk.is_zero()) return NcExpr::zero();
                auto [c, core] = split_scalar(nk);
                coeff *= c;
                if (core.is_unit()) continue;
                if (core.tag() == Tag::Product)
                    flat.insert(flat.end(), core.kids().begin(), core.kids().end());
                else
                    flat.push_back(std::move(core));
            }
            if (flat.empty()) return with_scalar(coeff, NcExpr::unit());
            NcExpr core = flat.size() == 1 ? flat.front() : NcExpr::product(std::move(flat));
            return with_scalar(coeff, core);
        }

        case Tag::Func:
            return NcExpr::func(e.func_kind(), normalize(e.kid()));
    }
    return e;
}

// --- substitute ---

NcExpr substitute(const NcExpr& e, const std::map<GeneratorId, NcExpr>& m) {
    using Tag = NcExpr::Tag;
    switch (e.tag()) {
        case Tag::Gen: {
            auto it = m.find(e.gen_id());
            if (it == m.end())
                throw Error(Errc::UnboundGenerator, "no image for " + e.gen_id().token());
            return it->second;
        }
        case Tag::Unit: return e;
        case Tag::Adjoint: return adjoint(substitute(e.kid(), m));
        case Tag::ScalarMul: return NcExpr::scalar_mul(e.scalar_value(), substitute(e.kid(), m));
        case Tag::Sum: {
            std::vector<NcExpr> terms;
            terms.reserve(e.kids().size());
            for (const auto& k : e.kids()) terms.push_back(substitute(k, m));
            return NcExpr::sum(std::move(terms));
        }
        case Tag::Product: {
            std::vector<NcExpr> factors;
            factors.reserve(e.kids().size());
            for (const auto& k : e.kids()) factors.push_back(substitute(k, m));
            return NcExpr::product(std::move(factors));
        }
        case Tag::Func: return NcExpr::func(e.func_kind(), substitute(e.kid(), m));
    }
    return e;
}

// --- printing ---

std::string complex_to_string(Complex c) {
    std::ostringstream os;
    os.precision(17);
    auto emit = [&os](double v) {
        if (v == static_cast<long long>(v) && std::abs(v) < 1e15)
            os << static_cast<long long>(v);
        else
            os << v;
    };
    if (c.imag() == 0.0) {
        emit(c.real());
    } else if (c.real() == 0.0) {
        emit(c.imag());
        os << "i";
    } else {
        emit(c.real());
        if (c.imag() >= 0.0) os << "+";
        emit(c.imag());
        os << "i";
    }
    return os.str();
}

namespace {

// Precedence: sum < product < atom. Parenthesize children as needed.
void print_expr(std::ostringstream& os, const NcExpr& e, int parent_prec);

void print_wrapped(std::ostringstream& os, const NcExpr& e, int prec, int parent_prec) {
    if (prec < parent_prec) {
        os << "(";
        print_expr(os, e, 0);
        os << ")";
    } else {
        print_expr(os, e, parent_prec);
    }
}

void print_expr(std::ostringstream& os, const NcExpr& e, int parent_prec) {
    using Tag = NcExpr::Tag;
    switch (e.tag()) {
        case Tag::Gen:
            os << e.gen_id().token();
            return;
        case Tag::Unit:
            os << "1";
            return;
        case Tag::Adjoint:
            os << "adj(";
            print_expr(os, e.kid(), 0);
            os << ")";
            return;
        case Tag::Func:
            os << func_name(e.func_kind()) << "(";
            print_expr(os, e.kid(), 0);
            os << ")";
            return;
        case Tag::ScalarMul: {
            const Complex c = e.scalar_value();
            if (e.kid().is_unit()) {
                // Bare scalar literal; may need parens when negative or complex.
                std::string lit = complex_to_string(c);
                bool needs_parens = parent_prec >= 1 && (lit.find('+') != std::string::npos ||
                                                         lit.find('-', 1) != std::string::npos ||
                                                         lit[0] == '-');
                if (needs_parens) os << "(" << lit << ")";
                else os << lit;
                return;
            }
            // c * core, printed at product precedence.
            if (parent_prec > 1) os << "(";
            std::string lit = complex_to_string(c);
            if (lit.find('+') != std::string::npos || lit.find('-', 1) != std::string::npos ||
                lit[0] == '-')
                os << "(" << lit << ")";
            else
                os << lit;
            os << " * ";
            print_wrapped(os, e.kid(), e.kid().tag() == Tag::Sum ? 0 : 1, 1);
            if (parent_prec > 1) os << ")";
            return;
        }
        case Tag::Sum: {
            if (parent_prec >= 1) os << "(";
            bool first = true;
            for (const auto& t : e.kids()) {
                if (!first) {
                    // Render real-negative scalar multiples with binary minus.
                    auto [c, core] = std::pair<Complex, NcExpr>{
                        t.tag() == Tag::ScalarMul ? t.scalar_value() : Complex(1.0, 0.0),
                        t.tag() == Tag::ScalarMul ? t.kid() : t};
                    if (c.imag() == 0.0 && c.real() < 0.0) {
                        os << " - ";
                        NcExpr pos = c.real() == -1.0 && !core.is_unit()
                                         ? core
                                         : NcExpr::scalar_mul(-c, core);
                        print_wrapped(os, pos, pos.tag() == Tag::Sum ? 0 : 1, 1);
                        first = false;
                        continue;
                    }
                    os << " + ";
                }
                print_wrapped(os, t, t.tag() == Tag::Sum ? 0 : 1, 1);
                first = false;
            }
            if (parent_prec >= 1) os << ")";
            return;
        }
        case Tag::Product: {
            if (parent_prec > 1) os << "(";
            bool first = true;
            for (const auto& f : e.kids()) {
                if (!first) os << " * ";
                print_wrapped(os, f, f.tag() == Tag::Sum ? 0 : (f.tag() == Tag::Product ? 1 : 2), 2);
                first = false;
            }
            if (parent_prec > 1) os << ")";
            return;
        }
    }
}

} // namespace

std::string NcExpr::to_string() const {
    std::ostringstream os;
    print_expr(os, *this, 0);
    return os.str();
}

// --- StarPolynomial ---

std::string monomial_to_string(const Monomial& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& l : m) {
        if (!first) os << " ";
        os << l.g.token();
        if (l.star) os << "*";
        first = false;
    }
    return os.str();
}

StarPolynomial StarPolynomial::constant(Complex c) {
    StarPolynomial p;
    p.add_term({}, c);
    return p;
}

StarPolynomial StarPolynomial::generator(const GeneratorId& g, bool star) {
    StarPolynomial p;
    p.add_term({Letter{g, star}}, Complex(1.0, 0.0));
    return p;
}

StarPolynomial StarPolynomial::monomial(Monomial m, Complex c) {
    StarPolynomial p;
    p.add_term(std::move(m), c);
    return p;
}

Complex StarPolynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

int StarPolynomial::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.size());
}

void StarPolynomial::add_term(const Monomial& m, Complex c) {
    if (c == Complex(0.0, 0.0)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

StarPolynomial StarPolynomial::operator+(const StarPolynomial& o) const {
    StarPolynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

StarPolynomial StarPolynomial::operator-(const StarPolynomial& o) const {
    StarPolynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

StarPolynomial StarPolynomial::operator*(const StarPolynomial& o) const {
    StarPolynomial out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

StarPolynomial StarPolynomial::scaled(Complex c) const {
    StarPolynomial out;
    for (const auto& [m, a] : terms_) out.add_term(m, a * c);
    return out;
}

StarPolynomial StarPolynomial::adjoint() const {
    StarPolynomial out;
    for (const auto& [m, c] : terms_) {
        Monomial rev(m.rbegin(), m.rend());
        for (auto& l : rev) l.star = !l.star;
        out.add_term(rev, std::conj(c));
    }
    return out;
}

bool StarPolynomial::equals(const StarPolynomial& o, double tol) const {
    StarPolynomial d = *this - o;
    for (const auto& [m, c] : d.terms())
        if (std::abs(c) > tol) return false;
    return true;
}

NcExpr StarPolynomial::to_expr() const {
    if (terms_.empty()) return NcExpr::zero();
    std::vector<NcExpr> sum_terms;
    for (const auto& [m, c] : terms_) {
        if (m.empty()) {
            sum_terms.push_back(NcExpr::scalar(c));
            continue;
        }
        std::vector<NcExpr> factors;
        for (const auto& l : m) {
            NcExpr g = NcExpr::gen(l.g);
            factors.push_back(l.star ? NcExpr::adjoint_node(g) : g);
        }
        NcExpr word = factors.size() == 1 ? factors.front() : NcExpr::product(std::move(factors));
        sum_terms.push_back(c == Complex(1.0, 0.0) ? word : NcExpr::scalar_mul(c, word));
    }
    return sum_terms.size() == 1 ? sum_terms.front() : NcExpr::sum(std::move(sum_terms));
}

std::string StarPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        os << complex_to_string(c);
        if (!m.empty()) os << " " << monomial_to_string(m);
        first = false;
    }
    return os.str();
}

StarPolynomial to_polynomial(const NcExpr& e) {
    using Tag = NcExpr::Tag;
    switch (e.tag()) {
        case Tag::Gen: return StarPolynomial::generator(e.gen_id());
        case Tag::Unit: return StarPolynomial::constant(Complex(1.0, 0.0));
        case Tag::Adjoint: return to_polynomial(e.kid()).adjoint();
        case Tag::ScalarMul: return to_polynomial(e.kid()).scaled(e.scalar_value());
        case Tag::Sum: {
            StarPolynomial out;
            for (const auto& k : e.kids()) out = out + to_polynomial(k);
            return out;
        }
        case Tag::Product: {
            StarPolynomial out = StarPolynomial::constant(Complex(1.0, 0.0));
            for (const auto& k : e.kids()) out = out * to_polynomial(k);
            return out;
        }
        case Tag::Func:
            throw Error(Errc::NonPolynomial,
                        std::string(func_name(e.func_kind())) + " node in expression");
    }
    return {};
}

} // namespace starrel
