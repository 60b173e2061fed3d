#pragma once

#include <cstdint>
#include <vector>

#include "invsat/formulas.hpp"

namespace invsat {

// A finite semisimple module (+) (R/m_i)^{lambda_i}, stored as the list of
// maximal ideals acting on each coordinate. Elements are indices into the
// mixed-radix enumeration of F_q vectors; scalars act through residues.
struct FiniteModule {
    const Backend* R = nullptr;
    std::vector<MaxIdealId> coords;

    long long size() const;
};

FiniteModule semisimple_module(const Backend& R, const std::vector<int>& counts_per_ideal);

using ModElt = std::vector<Fq>;

ModElt mod_zero(const FiniteModule& M);
ModElt mod_from_index(const FiniteModule& M, long long idx);
long long mod_to_index(const FiniteModule& M, const ModElt& x);
ModElt mod_add(const FiniteModule& M, const ModElt& x, const ModElt& y);
ModElt mod_scale(const FiniteModule& M, const ModElt& x, const FieldElt& a); // a in R

// |phi(M)| / |phi(M) /\ psi(M)| by exhaustive enumeration; existential
// quantifiers range over all of M.
long long eval_invariant_finite(const FiniteModule& M, const PPPair& pair);

} // namespace invsat
