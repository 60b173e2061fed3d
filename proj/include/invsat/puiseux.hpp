#pragma once

#include <map>
#include <optional>
#include <string>

#include "invsat/fq.hpp"
#include "invsat/rational.hpp"

namespace invsat {

// Elements of the group algebra F_q[t^Q]: finitely supported maps from Q to
// F_q. Zeros are never stored, so an empty map is the zero element.
struct GroupAlgElt {
    std::map<Rat, Fq> terms;

    bool is_zero() const { return terms.empty(); }
    Rat min_exp() const { return terms.begin()->first; }   // nonzero only
    Rat max_exp() const { return terms.rbegin()->first; }  // nonzero only
};

GroupAlgElt ga_zero();
GroupAlgElt ga_one(const FqCtx& ctx);
GroupAlgElt ga_term(const Rat& e, const Fq& c);
GroupAlgElt ga_add(const FqCtx& ctx, const GroupAlgElt& a, const GroupAlgElt& b);
GroupAlgElt ga_neg(const FqCtx& ctx, const GroupAlgElt& a);
GroupAlgElt ga_mul(const FqCtx& ctx, const GroupAlgElt& a, const GroupAlgElt& b);
bool ga_eq(const GroupAlgElt& a, const GroupAlgElt& b);

// Fractions num/den over the group algebra. Kept in a canonical form (den
// shifted so its minimal exponent is 0 and scaled so that coefficient is 1)
// purely so that printing is deterministic; equality is decided by
// cross-multiplication and does not rely on the representation.
struct FieldElt {
    GroupAlgElt num;
    GroupAlgElt den; // nonzero
};

FieldElt fe_make(const FqCtx& ctx, GroupAlgElt num, GroupAlgElt den);
FieldElt fe_zero(const FqCtx& ctx);
FieldElt fe_one(const FqCtx& ctx);
FieldElt fe_from_int(const FqCtx& ctx, long long n);
FieldElt fe_monomial(const FqCtx& ctx, const Rat& e); // t^e
bool fe_is_zero(const FieldElt& a);
bool fe_eq(const FqCtx& ctx, const FieldElt& a, const FieldElt& b);
FieldElt fe_add(const FqCtx& ctx, const FieldElt& a, const FieldElt& b);
FieldElt fe_neg(const FqCtx& ctx, const FieldElt& a);
FieldElt fe_sub(const FqCtx& ctx, const FieldElt& a, const FieldElt& b);
FieldElt fe_mul(const FqCtx& ctx, const FieldElt& a, const FieldElt& b);
FieldElt fe_inv(const FqCtx& ctx, const FieldElt& a); // a != 0
FieldElt fe_div(const FqCtx& ctx, const FieldElt& a, const FieldElt& b);

// Serialization. Terms are printed sorted by exponent as
// "c", "c*t", "c*t^2" or "c*t^(3/2)"; fractions as "(num)/(den)".
std::string ga_to_string(const FqCtx& ctx, const GroupAlgElt& a);
std::string fe_to_string(const FqCtx& ctx, const FieldElt& a);

// Parses the element grammar:
//   elt  ::= poly | '(' poly ')' '/' '(' poly ')'
//   poly ::= term ('+' term)*
//   term ::= COEF ['*' tpow] | tpow
//   tpow ::= 't' ['^' (INT | '(' INT '/' INT ')')]
//   COEF ::= INT | 'g[' INT (',' INT)* ']'
// Bare t-terms (without an explicit coefficient) are accepted.
// Throws std::invalid_argument with an offset on malformed input.
FieldElt fe_parse(const FqCtx& ctx, const std::string& text);

} // namespace invsat
