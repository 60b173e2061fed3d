#include "invsat/finite_module.hpp"

#include <stdexcept>

namespace invsat {

long long FiniteModule::size() const {
    long long s = 1;
    for (size_t i = 0; i < coords.size(); ++i) s *= R->fq().q();
    return s;
}

FiniteModule semisimple_module(const Backend& R, const std::vector<int>& counts_per_ideal) {
    if (counts_per_ideal.size() != R.max_ideal_ids().size())
        throw std::invalid_argument("semisimple_module: one count per maximal ideal");
    FiniteModule M;
    M.R = &R;
    for (MaxIdealId m : R.max_ideal_ids())
        for (int i = 0; i < counts_per_ideal[m]; ++i) M.coords.push_back(m);
    return M;
}

ModElt mod_zero(const FiniteModule& M) { return ModElt(M.coords.size()); }

ModElt mod_from_index(const FiniteModule& M, long long idx) {
    const FqCtx& ctx = M.R->fq();
    ModElt x(M.coords.size());
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = fq_from_index(ctx, (int)(idx % ctx.q()));
        idx /= ctx.q();
    }
    return x;
}

long long mod_to_index(const FiniteModule& M, const ModElt& x) {
    const FqCtx& ctx = M.R->fq();
    long long idx = 0;
    for (size_t i = x.size(); i-- > 0;) idx = idx * ctx.q() + fq_to_index(ctx, x[i]);
    return idx;
}

ModElt mod_add(const FiniteModule& M, const ModElt& x, const ModElt& y) {
    const FqCtx& ctx = M.R->fq();
    ModElt z(M.coords.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = fq_add(ctx, x[i], y[i]);
    return z;
}

ModElt mod_scale(const FiniteModule& M, const ModElt& x, const FieldElt& a) {
    const FqCtx& ctx = M.R->fq();
    if (!M.R->in_ring(a)) throw std::invalid_argument("mod_scale: scalar not in R");
    ModElt z(M.coords.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = fq_mul(ctx, x[i], M.R->residue(M.coords[i], a));
    return z;
}

namespace {

using Subset = std::vector<char>; // indexed by element index

Subset all_of(const FiniteModule& M) { return Subset(M.size(), 1); }

Subset only_zero(const FiniteModule& M) {
    Subset s(M.size(), 0);
    s[0] = 1;
    return s;
}

Subset atom_set(const FiniteModule& M, const Atom& a) {
    long long n = M.size();
    switch (a.kind) {
        case Atom::Top:
            return all_of(M);
        case Atom::Bot:
            return only_zero(M);
        case Atom::Divides: {
            // image of scaling by a
            Subset s(n, 0);
            for (long long i = 0; i < n; ++i)
                s[mod_to_index(M, mod_scale(M, mod_from_index(M, i), a.x))] = 1;
            return s;
        }
        case Atom::Ann: {
            Subset s(n, 0);
            for (long long i = 0; i < n; ++i) {
                ModElt x = mod_scale(M, mod_from_index(M, i), a.x);
                if (mod_to_index(M, x) == 0) s[i] = 1;
            }
            return s;
        }
        case Atom::DivProd: {
            // x with x*d in the image of scaling by c
            Subset img(n, 0);
            for (long long i = 0; i < n; ++i)
                img[mod_to_index(M, mod_scale(M, mod_from_index(M, i), a.x))] = 1;
            Subset s(n, 0);
            for (long long i = 0; i < n; ++i)
                if (img[mod_to_index(M, mod_scale(M, mod_from_index(M, i), a.y))]) s[i] = 1;
            return s;
        }
        case Atom::ExistsPair: {
            // x = y*a for some y with y*b = 0
            Subset s(n, 0);
            for (long long y = 0; y < n; ++y) {
                ModElt ye = mod_from_index(M, y);
                if (mod_to_index(M, mod_scale(M, ye, a.y)) != 0) continue;
                s[mod_to_index(M, mod_scale(M, ye, a.x))] = 1;
            }
            return s;
        }
    }
    return only_zero(M);
}

Subset intersect(const Subset& a, const Subset& b) {
    Subset s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] && b[i];
    return s;
}

Subset sumset(const FiniteModule& M, const Subset& a, const Subset& b) {
    long long n = M.size();
    Subset s(n, 0);
    for (long long i = 0; i < n; ++i) {
        if (!a[i]) continue;
        ModElt xi = mod_from_index(M, i);
        for (long long j = 0; j < n; ++j)
            if (b[j]) s[mod_to_index(M, mod_add(M, xi, mod_from_index(M, j)))] = 1;
    }
    return s;
}

Subset formula_set(const FiniteModule& M, const PPFormula& f) {
    Subset acc = only_zero(M);
    for (const auto& conj : f.sum) {
        Subset c = all_of(M);
        for (const Atom& a : conj) c = intersect(c, atom_set(M, a));
        acc = sumset(M, acc, c);
    }
    return acc;
}

long long count(const Subset& s) {
    long long c = 0;
    for (char b : s) c += b;
    return c;
}

} // namespace

long long eval_invariant_finite(const FiniteModule& M, const PPPair& pair) {
    Subset phi = formula_set(M, pair.phi);
    Subset both = intersect(phi, formula_set(M, pair.psi));
    return count(phi) / count(both);
}

} // namespace invsat
