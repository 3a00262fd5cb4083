#include "starrel/dsl.hpp"

#include <cctype>
#include <sstream>

namespace starrel {

namespace {

enum class Tok {
    Ident,
    Number, // value in num_value, with_i set for an 'i' suffix
    Semi,
    Eq,
    Le,
    Lt,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double num_value = 0.0;
    bool with_i = false;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) { next(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        next();
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::ostringstream os;
        os << "expected " << expected << " at " << cur_.line << ":" << cur_.col;
        if (cur_.kind != Tok::End) os << " (got '" << cur_.text << "')";
        throw Error(Errc::SyntaxError, os.str());
    }

  private:
    void next() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else if (c == '#') { // comment to end of line
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        cur_ = Token{};
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= s_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        const char c = s_[pos_];
        auto single = [&](Tok k) {
            cur_.kind = k;
            cur_.text = std::string(1, c);
            advance(1);
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            cur_.kind = Tok::Ident;
            cur_.text = s_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E' ||
                                        ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > start &&
                                         (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
                ++pos_;
                ++col_;
            }
            cur_.kind = Tok::Number;
            cur_.text = s_.substr(start, pos_ - start);
            cur_.num_value = std::stod(cur_.text);
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                cur_.with_i = true;
                ++pos_;
                ++col_;
            }
            return;
        }
        switch (c) {
            case ';': single(Tok::Semi); return;
            case '=': single(Tok::Eq); return;
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case ',': single(Tok::Comma); return;
            case '<':
                if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
                    cur_.kind = Tok::Le;
                    cur_.text = "<=";
                    advance(2);
                } else {
                    cur_.kind = Tok::Lt;
                    cur_.text = "<";
                    advance(1);
                }
                return;
            default: {
                std::ostringstream os;
                os << "unexpected character '" << c << "' at " << line_ << ":" << col_;
                throw Error(Errc::SyntaxError, os.str());
            }
        }
    }

    void advance(size_t k) {
        pos_ += k;
        col_ += static_cast<int>(k);
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

bool is_keyword(const std::string& s) {
    return s == "gens" || s == "block" || s == "alpha" || s == "rel" || s == "norm" ||
           s == "adj" || s == "sqrt" || s == "abs" || s == "exp" || s == "inv";
}

class Parser {
  public:
    Parser(const std::string& text, bool implicit_gens)
        : lex_(text), implicit_gens_(implicit_gens) {}

    RelationDocument parse_doc() {
        while (lex_.peek().kind != Tok::End) {
            parse_decl();
            expect(Tok::Semi, "';'");
        }
        if (doc_.set.relations.empty() && doc_.set.generators.empty() && doc_.blocks.empty())
            lex_.fail("at least one declaration");
        return std::move(doc_);
    }

    NcExpr parse_single_expr() {
        NcExpr e = parse_expr();
        if (lex_.peek().kind != Tok::End) lex_.fail("end of expression");
        return e;
    }

  private:
    void parse_decl() {
        const Token t = lex_.peek();
        if (t.kind != Tok::Ident) lex_.fail("'gens', 'block', 'alpha' or 'rel'");
        if (t.text == "gens") {
            lex_.take();
            bool any = false;
            while (lex_.peek().kind == Tok::Ident && !is_keyword(lex_.peek().text)) {
                GeneratorId g(lex_.take().text);
                if (doc_.set.declares(g)) throw Error(Errc::DuplicateGenerator, g.token());
                doc_.set.declare(g);
                any = true;
            }
            if (!any) lex_.fail("generator name");
        } else if (t.text == "block") {
            lex_.take();
            if (lex_.peek().kind != Tok::Ident) lex_.fail("block name");
            std::string name = lex_.take().text;
            if (doc_.blocks.count(name)) throw Error(Errc::DuplicateGenerator, name);
            expect(Tok::Eq, "'='");
            doc_.blocks.emplace(name, parse_matrix_of_exprs());
        } else if (t.text == "alpha") {
            lex_.take();
            if (lex_.peek().kind != Tok::Ident) lex_.fail("generator name");
            GeneratorId g(lex_.take().text);
            require_generator(g);
            expect(Tok::Eq, "'='");
            CMatrix m = parse_scalar_matrix();
            if (doc_.alpha_dim == 0)
                doc_.alpha_dim = m.rows();
            else if (doc_.alpha_dim != m.rows())
                throw Error(Errc::BadDimension, "alpha tables must share one dimension");
            doc_.alpha_entries[g] = std::move(m);
        } else if (t.text == "rel") {
            lex_.take();
            parse_rel();
        } else {
            lex_.fail("'gens', 'block', 'alpha' or 'rel'");
        }
    }

    void parse_rel() {
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "norm") {
            lex_.take();
            expect(Tok::LParen, "'('");
            NcExpr e = parse_expr();
            expect(Tok::RParen, "')'");
            const Token op = lex_.take();
            if (op.kind != Tok::Le && op.kind != Tok::Lt) lex_.fail("'<=' or '<'");
            if (lex_.peek().kind != Tok::Number) lex_.fail("numeric bound");
            const Token num = lex_.take();
            if (num.with_i) throw Error(Errc::InvalidArgument, "norm bound must be real");
            BlockExpr be = to_block(e);
            doc_.set.add(op.kind == Tok::Le ? Relation::norm_le(be, num.num_value)
                                            : Relation::norm_lt(be, num.num_value));
            return;
        }
        NcExpr first = parse_expr();
        if (lex_.peek().kind == Tok::Eq) {
            lex_.take();
            NcExpr rhs = parse_expr();
            doc_.set.add(Relation::eq_zero(to_block(first - rhs)));
            return;
        }
        if (lex_.peek().kind != Tok::Le) lex_.fail("'=' or '<='");
        std::vector<NcExpr> chain{first};
        while (lex_.peek().kind == Tok::Le) {
            lex_.take();
            chain.push_back(parse_expr());
        }
        size_t k = block_dim_of(chain);
        std::vector<BlockExpr> blocks;
        blocks.reserve(chain.size());
        for (const auto& e : chain) blocks.push_back(to_block(e, k));
        for (auto& r : order_chain(blocks)) doc_.set.add(std::move(r));
    }

    // expr := term (('+'|'-') term)*
    NcExpr parse_expr() {
        NcExpr acc = parse_term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            const bool minus = lex_.take().kind == Tok::Minus;
            NcExpr rhs = parse_term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    NcExpr parse_term() {
        NcExpr acc = parse_factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            acc = acc * parse_factor();
        }
        return acc;
    }

    NcExpr parse_factor() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return -parse_factor();
        }
        const Token t = lex_.peek();
        if (t.kind == Tok::Number) {
            lex_.take();
            Complex c = t.with_i ? Complex(0.0, t.num_value) : Complex(t.num_value, 0.0);
            if (c == Complex(1.0, 0.0)) return NcExpr::unit();
            return NcExpr::scalar(c);
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            NcExpr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (t.kind == Tok::Ident) {
            const std::string name = lex_.take().text;
            if (name == "adj" || name == "sqrt" || name == "abs" || name == "exp" ||
                name == "inv") {
                expect(Tok::LParen, "'('");
                NcExpr arg = parse_expr();
                expect(Tok::RParen, "')'");
                if (name == "adj") return adjoint(arg);
                if (name == "sqrt") return NcExpr::func(FuncKind::Sqrt, arg);
                if (name == "abs") return NcExpr::func(FuncKind::Abs, arg);
                if (name == "exp") return NcExpr::func(FuncKind::Exp, arg);
                return NcExpr::func(FuncKind::Inv, arg);
            }
            GeneratorId g(name);
            if (!implicit_gens_) require_symbol(g, name);
            else if (!doc_.set.declares(g))
                doc_.set.declare(g);
            return NcExpr::gen(g);
        }
        lex_.fail("expression");
    }

    BlockExpr parse_matrix_of_exprs() {
        std::vector<std::vector<NcExpr>> rows = parse_rows();
        const size_t k = rows.size();
        for (const auto& r : rows)
            if (r.size() != k) throw Error(Errc::BadDimension, "block matrix must be square");
        std::vector<NcExpr> entries;
        entries.reserve(k * k);
        for (auto& r : rows)
            for (auto& e : r) {
                for (const auto& g : e.generators())
                    if (doc_.blocks.count(g.token()))
                        throw Error(Errc::InvalidArgument, "nested block " + g.token());
                entries.push_back(std::move(e));
            }
        return BlockExpr(k, std::move(entries));
    }

    CMatrix parse_scalar_matrix() {
        std::vector<std::vector<NcExpr>> rows = parse_rows();
        const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (static_cast<Eigen::Index>(rows[i].size()) != n)
                throw Error(Errc::BadDimension, "alpha matrix must be square");
            for (Eigen::Index j = 0; j < n; ++j) {
                NcExpr e = normalize(rows[i][j]);
                if (e.is_unit())
                    m(i, j) = Complex(1.0, 0.0);
                else if (e.tag() == NcExpr::Tag::ScalarMul && e.kid().is_unit())
                    m(i, j) = e.scalar_value();
                else
                    throw Error(Errc::InvalidArgument, "alpha entries must be scalars");
            }
        }
        return m;
    }

    std::vector<std::vector<NcExpr>> parse_rows() {
        expect(Tok::LBracket, "'['");
        std::vector<std::vector<NcExpr>> rows;
        while (true) {
            expect(Tok::LBracket, "'['");
            std::vector<NcExpr> row;
            row.push_back(parse_expr());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                row.push_back(parse_expr());
            }
            expect(Tok::RBracket, "']'");
            rows.push_back(std::move(row));
            if (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                continue;
            }
            break;
        }
        expect(Tok::RBracket, "']'");
        return rows;
    }

    // Dimension shared by the block names mentioned across the given
    // expressions; 1 when none is mentioned.
    size_t block_dim_of(const std::vector<NcExpr>& exprs) {
        size_t k = 1;
        for (const auto& e : exprs) {
            for (const auto& g : e.generators()) {
                auto it = doc_.blocks.find(g.token());
                if (it == doc_.blocks.end()) continue;
                if (k != 1 && it->second.rows() != k)
                    throw Error(Errc::DimMismatch, "blocks of different dimension in one relation");
                k = it->second.rows();
            }
        }
        return k;
    }

    BlockExpr to_block(const NcExpr& e) { return to_block(e, block_dim_of({e})); }

    BlockExpr to_block(const NcExpr& e, size_t k) {
        std::map<GeneratorId, BlockExpr> by_id;
        for (const auto& [name, b] : doc_.blocks) by_id.emplace(GeneratorId(name), b);
        if (k == 1 && by_id.empty()) return BlockExpr(e);
        return lift_to_blocks(e, by_id, k).normalized();
    }

    void require_generator(const GeneratorId& g) {
        if (!doc_.set.declares(g)) throw Error(Errc::UndeclaredGenerator, g.token());
    }

    void require_symbol(const GeneratorId& g, const std::string& name) {
        if (!doc_.set.declares(g) && !doc_.blocks.count(name))
            throw Error(Errc::UndeclaredGenerator, name);
    }

    void expect(Tok k, const std::string& what) {
        if (lex_.peek().kind != k) lex_.fail(what);
        lex_.take();
    }

    Lexer lex_;
    bool implicit_gens_;
    RelationDocument doc_;
};

} // namespace

ScalarRep RelationDocument::alpha() const {
    if (!has_alpha()) throw Error(Errc::MissingEntry, "document has no alpha table");
    ScalarRep rep;
    rep.n = alpha_dim;
    rep.alpha = alpha_entries;
    for (const auto& g : set.generators) {
        if (!rep.alpha.count(g))
            rep.alpha[g] = cmatrix_zero(alpha_dim); // unlisted generators default to 0
    }
    return rep;
}

RelationDocument parse_document(const std::string& text) {
    Parser p(text, /*implicit_gens=*/false);
    return p.parse_doc();
}

NcExpr parse_expression(const std::string& text) {
    Parser p(text, /*implicit_gens=*/true);
    return p.parse_single_expr();
}

namespace {

void print_block_decl(std::ostringstream& os, const std::string& name, const BlockExpr& b) {
    os << "block " << name << " = [";
    for (size_t i = 0; i < b.rows(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (size_t j = 0; j < b.rows(); ++j) {
            if (j) os << ", ";
            os << normalize(b.at(i, j)).to_string();
        }
        os << "]";
    }
    os << "];\n";
}

void print_relation(std::ostringstream& os, const Relation& r, const std::string& subject) {
    switch (r.kind) {
        case Relation::Kind::EqZero: os << "rel " << subject << " = 0;\n"; break;
        case Relation::Kind::NormLe:
            os << "rel norm(" << subject << ") <= " << complex_to_string(Complex(r.bound, 0))
               << ";\n";
            break;
        case Relation::Kind::NormLt:
            os << "rel norm(" << subject << ") < " << complex_to_string(Complex(r.bound, 0))
               << ";\n";
            break;
        case Relation::Kind::Psd: os << "rel 0 <= " << subject << ";\n"; break;
    }
}

} // namespace

std::string print_document(const RelationSet& set) {
    std::ostringstream os;
    if (!set.generators.empty()) {
        os << "gens";
        for (const auto& g : set.generators) os << " " << g.token();
        os << ";\n";
    }
    int next_block = 0;
    for (const auto& r : set.relations) {
        if (r.expr.is_scalar()) {
            print_relation(os, r, normalize(r.expr.scalar_expr()).to_string());
        } else {
            std::string name = "B" + std::to_string(next_block++);
            print_block_decl(os, name, r.expr);
            print_relation(os, r, name);
        }
    }
    return os.str();
}

std::string print_unfolded(const UnfoldedRelationSet& u) {
    std::ostringstream os;
    os << "gens";
    for (const auto& g : u.entry_generators) os << " " << g.token();
    os << ";\n";

    std::map<GeneratorId, NcExpr> block_names;
    for (const auto& [g, block] : u.block_exprs) {
        std::string name = "B_" + g.token();
        print_block_decl(os, name, block);
        block_names.emplace(g, NcExpr::gen(GeneratorId(name)));
    }

    int next_block = 0;
    for (const auto& r : u.base.relations) {
        if (r.expr.is_scalar()) {
            NcExpr renamed = substitute(r.expr.scalar_expr(), block_names);
            print_relation(os, r, normalize(renamed).to_string());
        } else if (u.materialized) {
            // base relation already at block level: print its expanded form
            const Relation& m = u.materialized->relations[&r - u.base.relations.data()];
            std::string name = "M" + std::to_string(next_block++);
            print_block_decl(os, name, m.expr);
            print_relation(os, m, name);
        } else {
            throw Error(Errc::NonPolynomial, "cannot print unfolded functional relation");
        }
    }
    return os.str();
}

} // namespace starrel
