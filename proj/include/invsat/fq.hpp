#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace invsat {

// Arithmetic in GF(p^k), k <= 4. Elements are coefficient vectors over GF(p)
// reduced modulo a fixed irreducible polynomial. The polynomial is the
// lexicographically first monic irreducible of degree k, found by trial
// division, so the representation is deterministic per (p, k).
struct FqCtx {
    int p = 2;
    int k = 1;
    std::array<int, 5> irred{}; // irred[i] = coefficient of x^i, monic degree k

    static FqCtx make(int p, int k);
    int q() const;
};

struct Fq {
    std::array<int, 4> c{}; // c[i] = coefficient of x^i
    bool operator==(const Fq&) const = default;
};

bool fq_is_zero(const Fq& a);
Fq fq_from_int(const FqCtx& ctx, long long n);
Fq fq_add(const FqCtx& ctx, const Fq& a, const Fq& b);
Fq fq_neg(const FqCtx& ctx, const Fq& a);
Fq fq_sub(const FqCtx& ctx, const Fq& a, const Fq& b);
Fq fq_mul(const FqCtx& ctx, const Fq& a, const Fq& b);
Fq fq_inv(const FqCtx& ctx, const Fq& a); // a != 0

// Enumeration index in [0, q): mixed-radix over the coefficients.
int fq_to_index(const FqCtx& ctx, const Fq& a);
Fq fq_from_index(const FqCtx& ctx, int idx);

// "3" for prime fields, "g[c0,c1,...]" otherwise.
std::string fq_to_string(const FqCtx& ctx, const Fq& a);

} // namespace invsat
