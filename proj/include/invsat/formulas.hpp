#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invsat/backend.hpp"

namespace invsat {

// Atoms of pp-1-formulae:
//   Top            x=x
//   Bot            x=0
//   Divides(a)     a|x
//   Ann(b)         xb=0
//   DivProd(c,d)   c|xd
//   ExistsPair(a,b)  exists y (ya=x and yb=0)
struct Atom {
    enum Kind { Top, Bot, Divides, Ann, DivProd, ExistsPair } kind = Top;
    FieldElt x, y; // scalars; y used by DivProd/ExistsPair only

    static Atom top() { return {Top, {}, {}}; }
    static Atom bot() { return {Bot, {}, {}}; }
    static Atom divides(FieldElt a) { return {Divides, std::move(a), {}}; }
    static Atom ann(FieldElt b) { return {Ann, std::move(b), {}}; }
    static Atom divprod(FieldElt c, FieldElt d) { return {DivProd, std::move(c), std::move(d)}; }
    static Atom exists_pair(FieldElt a, FieldElt b) { return {ExistsPair, std::move(a), std::move(b)}; }
};

// A pp-1-formula: a finite sum of finite conjunctions of atoms. Lists are
// kept sorted by the structural key so that equal formulae print equally.
struct PPFormula {
    std::vector<std::vector<Atom>> sum; // nonempty; each conjunct nonempty

    static PPFormula atom(Atom a) { return {{{std::move(a)}}}; }
    static PPFormula top() { return atom(Atom::top()); }
    static PPFormula bot() { return atom(Atom::bot()); }
};

struct PPPair {
    PPFormula phi, psi;
};

// Degenerate-scalar rewrites: Divides(unit)->Top, Divides(0)->Bot, Ann(0)->Top,
// Ann(unit)->Bot, DivProd(c,0)->Top, DivProd(unit,d)->Top, DivProd(0,d)->Ann(d),
// DivProd(c,unit)->Divides(c*d^-1)... (see implementation for the full list).
Atom normalize_atom(const Backend& R, Atom a);
PPFormula normalize_formula(const Backend& R, PPFormula f);

std::string atom_to_string(const Backend& R, const Atom& a);
std::string formula_to_string(const Backend& R, const PPFormula& f);
std::string pair_to_string(const Backend& R, const PPPair& p);

bool formula_is_top(const PPFormula& f);
bool formula_is_bot(const PPFormula& f);

// Syntactic guarantee that |phi/psi| = 1 in every module (psi ~ Top,
// phi ~ Bot, or phi == psi after normalization).
bool pair_trivially_one(const Backend& R, const PPPair& p);

// Conjunctive invariants sentence, the (*) shape: exact values H >= 2,
// forced-1 pairs, and lower bounds E >= 2.
struct StarSentence {
    std::vector<std::pair<PPPair, long long>> eqs;  // |phi/psi| = H, H >= 2
    std::vector<PPPair> ones;                       // |phi/psi| = 1
    std::vector<std::pair<PPPair, long long>> geqs; // |phi/psi| >= E, E >= 2
};

long long exponent(const StarSentence& s);

// Normalizes all pairs and discharges constant ones. Returns nullopt when a
// constant pair contradicts an Eq/Geq conjunct (no module can satisfy s).
std::optional<StarSentence> simplify_star(const Backend& R, StarSentence s);

std::string star_to_string(const Backend& R, const StarSentence& s);

// Boolean combinations of interval-constrained invariants sentences.
struct BoolSentence {
    enum Kind { And, Or, Not, Leaf } kind = Leaf;
    std::vector<BoolSentence> children; // And/Or/Not
    // Leaf: |phi/psi| in [lo, hi]; hi < 0 encodes infinity
    PPPair pair;
    long long lo = 1, hi = -1;
};

// Disjunctive star normal form: s is satisfiable iff some member is.
// Finite intervals expand to exact values; [n, inf] maps to Geq/EqOne/drop;
// negation complements the interval.
std::vector<StarSentence> to_star_dnf(const Backend& R, const BoolSentence& s);

// Sentence grammar (see README):
//   sentence ::= or ; or ::= and ('|' and)* ; and ::= clause ('&' clause)*
//   clause ::= ['!'] '[' pp '/' pp ']' rel
//   rel ::= '=' INT | '>=' INT | 'in' '[' INT ',' (INT|'inf') ']'
//   pp ::= conj ('+' conj)* ; conj ::= atom ('&' atom)*
//   atom ::= 'x=x' | 'x=0' | 'div(' elt ')' | 'ann(' elt ')'
//          | 'divprod(' elt ',' elt ')' | 'exists(' elt ',' elt ')'
// '&' binds tighter than '|' between clauses.
BoolSentence parse_sentence(const std::string& text, const Backend& R);

} // namespace invsat
