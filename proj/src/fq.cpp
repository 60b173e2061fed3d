#include "invsat/fq.hpp"

#include <stdexcept>
#include <vector>

namespace invsat {

namespace {

int mod(int a, int p) {
    int r = a % p;
    return r < 0 ? r + p : r;
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.
using Poly = std::vector<int>;

int deg(const Poly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly poly_mod(Poly f, const Poly& g, int p) {
    int dg = deg(g);
    // g monic
    while (deg(f) >= dg) {
        int df = deg(f);
        int lead = f[df];
        for (int i = 0; i <= dg; ++i)
            f[df - dg + i] = mod(f[df - dg + i] - lead * g[i], p);
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    return r;
}

// Enumerate monic polys of degree d in lexicographic order of their
// low coefficients (c0 fastest).
bool next_coeffs(std::vector<int>& c, int p) {
    for (auto& x : c) {
        if (++x < p) return true;
        x = 0;
    }
    return false;
}

bool is_irreducible(const Poly& f, int p) {
    int d = deg(f);
    if (d <= 1) return d == 1;
    for (int e = 1; e <= d / 2; ++e) {
        std::vector<int> c(e, 0);
        do {
            Poly g(c.begin(), c.end());
            g.push_back(1); // monic of degree e
            if (deg(poly_mod(f, g, p)) < 0) return false;
        } while (next_coeffs(c, p));
    }
    return true;
}

} // namespace

FqCtx FqCtx::make(int p, int k) {
    if (p < 2 || k < 1 || k > 4) throw std::invalid_argument("FqCtx: need prime p and 1 <= k <= 4");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("FqCtx: p not prime");
    FqCtx ctx;
    ctx.p = p;
    ctx.k = k;
    ctx.irred.fill(0);
    ctx.irred[k] = 1;
    if (k == 1) return ctx; // x itself; never used for reduction
    // first monic irreducible of degree k, low coefficients counted up first
    std::vector<int> c(k, 0);
    do {
        Poly f(c.begin(), c.end());
        f.push_back(1);
        if (is_irreducible(f, p)) {
            for (int i = 0; i < k; ++i) ctx.irred[i] = c[i];
            return ctx;
        }
    } while (next_coeffs(c, p));
    throw std::logic_error("FqCtx: no irreducible polynomial found");
}

int FqCtx::q() const {
    int r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

bool fq_is_zero(const Fq& a) {
    for (int x : a.c)
        if (x != 0) return false;
    return true;
}

Fq fq_from_int(const FqCtx& ctx, long long n) {
    Fq r;
    r.c[0] = (int)((n % ctx.p + ctx.p) % ctx.p);
    return r;
}

Fq fq_add(const FqCtx& ctx, const Fq& a, const Fq& b) {
    Fq r;
    for (int i = 0; i < ctx.k; ++i) r.c[i] = mod(a.c[i] + b.c[i], ctx.p);
    return r;
}

Fq fq_neg(const FqCtx& ctx, const Fq& a) {
    Fq r;
    for (int i = 0; i < ctx.k; ++i) r.c[i] = mod(-a.c[i], ctx.p);
    return r;
}

Fq fq_sub(const FqCtx& ctx, const Fq& a, const Fq& b) {
    return fq_add(ctx, a, fq_neg(ctx, b));
}

Fq fq_mul(const FqCtx& ctx, const Fq& a, const Fq& b) {
    Poly pa(a.c.begin(), a.c.begin() + ctx.k);
    Poly pb(b.c.begin(), b.c.begin() + ctx.k);
    Poly prod = poly_mul(pa, pb, ctx.p);
    if (ctx.k > 1) {
        Poly g(ctx.irred.begin(), ctx.irred.begin() + ctx.k + 1);
        prod = poly_mod(prod, g, ctx.p);
    } else {
        prod.resize(1);
    }
    Fq r;
    for (int i = 0; i < ctx.k && i < (int)prod.size(); ++i) r.c[i] = prod[i];
    return r;
}

Fq fq_inv(const FqCtx& ctx, const Fq& a) {
    if (fq_is_zero(a)) throw std::invalid_argument("fq_inv: zero");
    // a^(q-2)
    Fq base = a;
    Fq acc = fq_from_int(ctx, 1);
    int e = ctx.q() - 2;
    while (e > 0) {
        if (e & 1) acc = fq_mul(ctx, acc, base);
        base = fq_mul(ctx, base, base);
        e >>= 1;
    }
    return acc;
}

int fq_to_index(const FqCtx& ctx, const Fq& a) {
    int idx = 0;
    for (int i = ctx.k - 1; i >= 0; --i) idx = idx * ctx.p + a.c[i];
    return idx;
}

Fq fq_from_index(const FqCtx& ctx, int idx) {
    Fq r;
    for (int i = 0; i < ctx.k; ++i) {
        r.c[i] = idx % ctx.p;
        idx /= ctx.p;
    }
    return r;
}

std::string fq_to_string(const FqCtx& ctx, const Fq& a) {
    if (ctx.k == 1) return std::to_string(a.c[0]);
    std::string s = "g[";
    for (int i = 0; i < ctx.k; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    s += "]";
    return s;
}

} // namespace invsat
