#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invsat/formulas.hpp"

namespace invsat {

// A cut of the value group Q. In ideal position (bounds >= 0) the variants
// are the ideals of the localization V = R_m: Zero, {v >= b} / {v > b},
// and Unit = Bound(0, closed) = V. In module position (arbitrary bounds)
// cuts name the submodules of a uniserial sub-quotient of Frac(V); Full is
// the whole fraction field.
struct Cut {
    enum Kind { Zero, Bound, Full } kind = Zero;
    Rat bound = Rat(0);
    bool open = false; // Bound only: {v > bound} when open, {v >= bound} when closed

    static Cut zero() { return {Zero, Rat(0), false}; }
    static Cut full() { return {Full, Rat(0), false}; }
    static Cut at(Rat b, bool open) { return {Bound, b, open}; }
    static Cut unit() { return at(Rat(0), false); }
    static Cut maximal() { return at(Rat(0), true); }
};

bool cut_eq(const Cut& a, const Cut& b);
bool cut_subset(const Cut& a, const Cut& b); // a included in b
Cut cut_union(const Cut& a, const Cut& b);   // cuts are totally ordered
Cut cut_intersect(const Cut& a, const Cut& b);
std::string cut_to_string(const Cut& c);
std::optional<Cut> cut_parse(const std::string& s); // "zero" | "full" | ">=r" | ">r"

// Ideal-position algebra.
Cut cut_mul(const Cut& a, const Cut& b);     // Zero absorbs; bounds add; open iff either
Cut cut_colon(const Cut& k, const Rat& vr);  // (K : r), clipped at Unit
Cut cut_sharp(const Cut& i);                 // Zero -> Zero; nonzero proper -> maximal

// Module-position algebra (no clipping).
Cut cut_shift(const Cut& c, const Rat& v);
Cut cut_colon_mod(const Cut& c, const Rat& v);

// x in the cut: zero lies in every ideal; otherwise compare v(x) with the bound.
bool elem_in_cut(const Cut& c, bool is_zero, const Rat& v);

// The pair shapes produced by the reduction: xb=0 / c|x and x=x / xd=0.
struct BasicPair {
    enum Kind { AnnOverDiv, TopOverAnn } kind = TopOverAnn;
    FieldElt b, c; // AnnOverDiv; either may be zero
    FieldElt d;    // TopOverAnn; nonzero

    static BasicPair ann_over_div(FieldElt b, FieldElt c) {
        BasicPair p;
        p.kind = AnnOverDiv;
        p.b = std::move(b);
        p.c = std::move(c);
        return p;
    }
    static BasicPair top_over_ann(FieldElt d) {
        BasicPair p;
        p.kind = TopOverAnn;
        p.d = std::move(d);
        return p;
    }
};

PPPair basic_to_pair(const BasicPair& p);
std::string basic_to_string(const Backend& R, const BasicPair& p);

// PE(I, J): the point named by a pair of proper-or-zero ideals of R_m.
struct ZgPoint {
    MaxIdealId ideal_id = 0;
    Cut I, J;
};

Cut ann_point(const ZgPoint& p); // cut_mul(I, J)

// Fact-style open-set membership with a = d = 1:
//   AnnOverDiv(b,c): c in J^#, b in I^#, bc in I*J
//   TopOverAnn(d):   d not in I*J
bool point_opens(const Backend& R, const ZgPoint& p, const BasicPair& pair);

// A uniserial sub-quotient top/bottom of the fraction field of R_m.
struct UniserialDesc {
    MaxIdealId ideal_id = 0;
    Cut top, bottom; // bottom included in top
};

// PE(I,J) realized as a uniserial sub-quotient with the same invariants.
UniserialDesc point_to_uniserial(const ZgPoint& p);

UniserialDesc desc_n_gamma(MaxIdealId m, const Rat& v_gamma);  // R_m / gamma*m*R_m
UniserialDesc desc_n_prime(MaxIdealId m, const Rat& v_beta_eta); // m*R_m / beta*eta*R_m
UniserialDesc desc_residue_field(MaxIdealId m);                // R_m / m*R_m

struct InvariantValue {
    enum Kind { One, Q, Infinite } kind = One;
};

InvariantValue uniserial_invariant(const Backend& R, const UniserialDesc& M, const BasicPair& pair);

// General pp-pair value on a uniserial sub-quotient (used by the verifier).
InvariantValue uniserial_pair_value(const Backend& R, const UniserialDesc& M, const PPPair& pair);

// Searches for a point over R_m opening every pair in `opens` and none in
// `closes`. Candidate bounds: 0, scalar valuations, their pairwise sums and
// differences (clipped at 0), midpoints of adjacent candidates, and max+1.
std::optional<ZgPoint> point_search(const Backend& R, MaxIdealId m,
                                    const std::vector<BasicPair>& opens,
                                    const std::vector<BasicPair>& closes);

} // namespace invsat
