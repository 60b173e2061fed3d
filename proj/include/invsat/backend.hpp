#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "invsat/puiseux.hpp"

namespace invsat {

// Oracle query types. DPRQuery is the (2l+2)-tuple (a, b_1..b_l, c, d_1..d_l);
// PPQuery asks whether n lies in the span of residue degrees of maximal
// ideals containing every cs entry but not d.
struct DPRQuery {
    FieldElt a;
    std::vector<FieldElt> bs;
    FieldElt c;
    std::vector<FieldElt> ds; // |bs| == |ds| >= 1
};

struct PPQuery {
    int p = 2;
    int n = 1;
    std::vector<FieldElt> cs;
    FieldElt d;
};

enum class RingKind { Local, TwoValued };

using MaxIdealId = int; // 0 = m0; 1 = mInf (TwoValued only)

// One of the two bundled rings:
//   Local(q):     F_q[t^{Q>=0}] localized at the augmentation ideal.
//                 One maximal ideal m0 = {v0 > 0}.
//   TwoValued(q): V_0 `intersect` V_inf inside Frac(F_q[t^Q]).
//                 Two maximal ideals m0 = {v0 > 0}, mInf = {vInf > 0}.
// Both have value group Q at every maximal ideal and residue field GF(q).
//
// The first block of operations below is the effectively-given-domain
// contract (arithmetic, divisibility, Tuganbaev witnesses, Bezout gcd,
// DPR*/PP* oracles). The second block is backend introspection (ideal
// enumeration, valuations, residues) used to realize the oracles and the
// exponent-one point search; generic algorithms should prefer the contract.
class Backend {
public:
    static Backend from_string(const std::string& ring); // "local:q" | "twovalued:q"

    RingKind kind() const { return kind_; }
    const FqCtx& fq() const { return ctx_; }
    std::string name() const;

    // --- contract: ring arithmetic ---
    FieldElt zero() const { return fe_zero(ctx_); }
    FieldElt one() const { return fe_one(ctx_); }
    FieldElt from_int(long long n) const { return fe_from_int(ctx_, n); }
    FieldElt add(const FieldElt& a, const FieldElt& b) const { return fe_add(ctx_, a, b); }
    FieldElt sub(const FieldElt& a, const FieldElt& b) const { return fe_sub(ctx_, a, b); }
    FieldElt neg(const FieldElt& a) const { return fe_neg(ctx_, a); }
    FieldElt mul(const FieldElt& a, const FieldElt& b) const { return fe_mul(ctx_, a, b); }
    bool eq(const FieldElt& a, const FieldElt& b) const { return fe_eq(ctx_, a, b); }
    bool is_zero(const FieldElt& a) const { return fe_is_zero(a); }
    bool is_unit(const FieldElt& a) const;
    FieldElt unit_inverse(const FieldElt& a) const; // a a unit of R

    // b in aR; degenerate arguments allowed (0 divides only 0).
    bool divides(const FieldElt& a, const FieldElt& b) const;

    // (alpha, r, s) with b*alpha = a*s and a*(alpha-1) = b*r.
    std::tuple<FieldElt, FieldElt, FieldElt> tuganbaev(const FieldElt& a, const FieldElt& b) const;

    // (g, u, v) with g = a*u + b*v, g | a, g | b and
    // v_m(g) = min(v_m(a), v_m(b)) at every maximal ideal.
    std::tuple<FieldElt, FieldElt, FieldElt> gcd_bezout(const FieldElt& a, const FieldElt& b) const;

    bool dpr_star(const DPRQuery& q) const;
    bool pp_star(const PPQuery& q) const;

    // --- introspection ---
    std::vector<MaxIdealId> max_ideal_ids() const;
    std::string ideal_name(MaxIdealId m) const; // "m0" | "mInf"
    std::optional<MaxIdealId> ideal_by_name(const std::string& s) const;
    std::pair<int, int> residue_size(MaxIdealId m) const; // (p, k), |R/m| = p^k

    Rat valuation(MaxIdealId m, const FieldElt& f) const; // f != 0
    bool in_ring(const FieldElt& f) const;
    bool in_ideal(MaxIdealId m, const FieldElt& f) const; // f in R and v_m(f) > 0
    Fq residue(MaxIdealId m, const FieldElt& f) const;    // v_m(f) >= 0

    // An element of R with exactly the prescribed valuations (one per
    // maximal ideal, all >= 0).
    FieldElt element_of_values(const std::vector<Rat>& vals) const;

    FieldElt parse(const std::string& text) const { return fe_parse(ctx_, text); }
    std::string print(const FieldElt& f) const { return fe_to_string(ctx_, f); }

private:
    Backend(RingKind kind, FqCtx ctx) : kind_(kind), ctx_(ctx) {}

    RingKind kind_;
    FqCtx ctx_;
};

// Remark-style cross-check: decides b in aR through tuganbaev + dpr_star
// instead of valuations. Both arguments must be nonzero.
bool divides_via_dpr(const Backend& R, const FieldElt& a, const FieldElt& b);

} // namespace invsat
