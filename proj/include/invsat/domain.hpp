#pragma once

#include <optional>
#include <vector>

#include "invsat/backend.hpp"

namespace invsat {

// Boolean combinations of "e in M" conditions on a maximal-ideal variable M.
struct MICondition {
    enum Kind { True, False, In, And, Or, Not } kind = True;
    FieldElt elem; // In only
    std::vector<MICondition> children;

    static MICondition yes() { return {True, {}, {}}; }
    static MICondition no() { return {False, {}, {}}; }
    static MICondition in(FieldElt e) { return {In, std::move(e), {}}; }
    static MICondition all(std::vector<MICondition> cs) { return {And, {}, std::move(cs)}; }
    static MICondition any(std::vector<MICondition> cs) { return {Or, {}, std::move(cs)}; }
    static MICondition negate(MICondition c) { return {Not, {}, {std::move(c)}}; }
};

// One disjunct: /\ ins_i in M  and  out not in M.
struct DNFClause {
    std::vector<FieldElt> ins; // nonempty (padded with 0, which lies in every M)
    FieldElt out;              // 1 when there is no negative literal
};

bool mi_holds(const Backend& R, MaxIdealId m, const MICondition& D);

// Semantic DNF: a maximal ideal satisfies D iff it satisfies some clause.
// Negative literals are merged into a single product; clauses requiring a
// unit in M or a product 0 outside M are dropped as unsatisfiable.
std::vector<DNFClause> mi_dnf(const Backend& R, const MICondition& D);

// (p, n) realizable by direct sums of residue fields at ideals satisfying D:
// computed through mi_dnf and compositions of n, each nonzero part answered
// by the backend's pp_star oracle.
bool pp0(const Backend& R, int p, int n, const MICondition& D);

// The same question answered by enumerating the backend's maximal ideals
// directly (introspection route; used as an independent cross-check).
bool pp0_direct(const Backend& R, int p, int n, const MICondition& D);

// A concrete realization: ideals satisfying D with copy counts whose residue
// degrees sum to n. Empty result means no realization exists.
std::optional<std::vector<std::pair<MaxIdealId, int>>> pp0_materialize(const Backend& R, int p, int n,
                                                                       const MICondition& D);

} // namespace invsat
