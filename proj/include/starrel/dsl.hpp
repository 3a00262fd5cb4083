#ifndef STARREL_DSL_HPP
#define STARREL_DSL_HPP

#include <optional>
#include <string>

#include "starrel/comatrix.hpp"
#include "starrel/relations.hpp"

namespace starrel {

// A parsed relation document: generator declarations, relation statements,
// optional named blocks and an optional scalar-rep (alpha) table.
struct RelationDocument {
    RelationSet set;
    std::map<std::string, BlockExpr> blocks;
    std::map<GeneratorId, CMatrix> alpha_entries;
    Eigen::Index alpha_dim = 0;

    bool has_alpha() const { return alpha_dim > 0; }
    ScalarRep alpha() const;
};

/// Grammar (semicolon-terminated declarations):
///   doc     := (decl ';')+
///   decl    := 'gens' ident+ | 'block' ident '=' matrix
///            | 'alpha' ident '=' matrix | 'rel' relexpr
///   relexpr := expr '=' expr | 'norm' '(' expr ')' ('<='|'<') num
///            | expr ('<=' expr)+
///   expr    := term (('+'|'-') term)* ; term := factor ('*' factor)*
///   factor  := ['-'] (num | ident | fn '(' expr ')' | '(' expr ')')
///   fn      := adj | sqrt | abs | exp | inv
///   matrix  := '[' row (',' row)* ']' ; row := '[' expr (',' expr)* ']'
/// 'a = b' desugars to EqZero(a - b); chains desugar to Psd differences.
/// Numbers are decimals with an optional 'i' suffix.
RelationDocument parse_document(const std::string& text);

/// Free-standing expression over implicit generators (every identifier).
NcExpr parse_expression(const std::string& text);

/// Canonical document text; parse(print(R)) is an equal RelationSet.
std::string print_document(const RelationSet& set);

/// Unfolded set as a document with entry generators named x_i_j and one
/// named block per base generator.
std::string print_unfolded(const UnfoldedRelationSet& u);

} // namespace starrel

#endif
