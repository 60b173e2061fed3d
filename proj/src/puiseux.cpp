#include "invsat/puiseux.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace invsat {

GroupAlgElt ga_zero() { return {}; }

GroupAlgElt ga_one(const FqCtx& ctx) { return ga_term(Rat(0), fq_from_int(ctx, 1)); }

GroupAlgElt ga_term(const Rat& e, const Fq& c) {
    GroupAlgElt r;
    if (!fq_is_zero(c)) r.terms[e] = c;
    return r;
}

GroupAlgElt ga_add(const FqCtx& ctx, const GroupAlgElt& a, const GroupAlgElt& b) {
    GroupAlgElt r = a;
    for (const auto& [e, c] : b.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
            r.terms[e] = c;
        } else {
            it->second = fq_add(ctx, it->second, c);
            if (fq_is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

GroupAlgElt ga_neg(const FqCtx& ctx, const GroupAlgElt& a) {
    GroupAlgElt r;
    for (const auto& [e, c] : a.terms) r.terms[e] = fq_neg(ctx, c);
    return r;
}

GroupAlgElt ga_mul(const FqCtx& ctx, const GroupAlgElt& a, const GroupAlgElt& b) {
    GroupAlgElt r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Fq prod = fq_mul(ctx, ca, cb);
            if (fq_is_zero(prod)) continue;
            auto it = r.terms.find(ea + eb);
            if (it == r.terms.end()) {
                r.terms[ea + eb] = prod;
            } else {
                it->second = fq_add(ctx, it->second, prod);
                if (fq_is_zero(it->second)) r.terms.erase(it);
            }
        }
    return r;
}

bool ga_eq(const GroupAlgElt& a, const GroupAlgElt& b) { return a.terms == b.terms; }

namespace {

long long lcm_ll(long long a, long long b) {
    long long g = std::gcd(a, b);
    return a / g * b;
}

// Dense polynomial over F_q in an auxiliary variable u = t^(1/L),
// constant term first. Used only to reduce fractions to lowest terms.
using UPoly = std::vector<Fq>;

void up_trim(UPoly& f) {
    while (!f.empty() && fq_is_zero(f.back())) f.pop_back();
}

UPoly up_rem(const FqCtx& ctx, UPoly f, const UPoly& g) {
    Fq lead_inv = fq_inv(ctx, g.back());
    while (f.size() >= g.size()) {
        Fq factor = fq_mul(ctx, f.back(), lead_inv);
        size_t off = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i)
            f[off + i] = fq_sub(ctx, f[off + i], fq_mul(ctx, factor, g[i]));
        up_trim(f);
        if (f.empty()) break;
    }
    return f;
}

UPoly up_gcd(const FqCtx& ctx, UPoly a, UPoly b) {
    while (!b.empty()) {
        UPoly r = up_rem(ctx, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UPoly up_div_exact(const FqCtx& ctx, UPoly f, const UPoly& g) {
    UPoly q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, Fq{});
    Fq lead_inv = fq_inv(ctx, g.back());
    while (f.size() >= g.size()) {
        Fq factor = fq_mul(ctx, f.back(), lead_inv);
        size_t off = f.size() - g.size();
        q[off] = factor;
        for (size_t i = 0; i < g.size(); ++i)
            f[off + i] = fq_sub(ctx, f[off + i], fq_mul(ctx, factor, g[i]));
        up_trim(f);
    }
    return q;
}

// Split a nonzero group-algebra element into t^shift * P(u) with
// P(0) != 0, where u = t^(1/L).
UPoly to_upoly(const GroupAlgElt& a, const Rat& shift, long long L) {
    UPoly f;
    for (const auto& [e, c] : a.terms) {
        Rat rel = (e - shift) * Rat(L);
        size_t idx = (size_t)rel.numerator(); // rel.denominator() == 1
        if (f.size() <= idx) f.resize(idx + 1, Fq{});
        f[idx] = c;
    }
    return f;
}

GroupAlgElt from_upoly(const UPoly& f, const Rat& shift, long long L) {
    GroupAlgElt r;
    for (size_t i = 0; i < f.size(); ++i)
        if (!fq_is_zero(f[i])) r.terms[shift + Rat((long long)i, L)] = f[i];
    return r;
}

} // namespace

FieldElt fe_make(const FqCtx& ctx, GroupAlgElt num, GroupAlgElt den) {
    if (den.is_zero()) throw std::invalid_argument("FieldElt: zero denominator");
    if (num.is_zero()) return {ga_zero(), ga_one(ctx)};
    // Reduce to lowest terms inside F_q[u], u = t^(1/L): divide out the
    // polynomial gcd and the common monomial, then normalize the
    // denominator (minimal exponent 0, bottom coefficient 1) so equal
    // fractions get identical representations.
    long long L = 1;
    for (const auto& [e, c] : num.terms) L = lcm_ll(L, e.denominator());
    for (const auto& [e, c] : den.terms) L = lcm_ll(L, e.denominator());
    Rat ns = num.min_exp(), ds = den.min_exp();
    UPoly pn = to_upoly(num, ns, L), pd = to_upoly(den, ds, L);
    UPoly g = up_gcd(ctx, pn, pd);
    if (g.size() > 1) {
        pn = up_div_exact(ctx, pn, g);
        pd = up_div_exact(ctx, pd, g);
    }
    Fq inv = fq_inv(ctx, pd[0]);
    for (auto& c : pn) c = fq_mul(ctx, c, inv);
    for (auto& c : pd) c = fq_mul(ctx, c, inv);
    return {from_upoly(pn, ns - ds, L), from_upoly(pd, Rat(0), L)};
}

FieldElt fe_zero(const FqCtx& ctx) { return {ga_zero(), ga_one(ctx)}; }

FieldElt fe_one(const FqCtx& ctx) { return {ga_one(ctx), ga_one(ctx)}; }

FieldElt fe_from_int(const FqCtx& ctx, long long n) {
    return {ga_term(Rat(0), fq_from_int(ctx, n)), ga_one(ctx)};
}

FieldElt fe_monomial(const FqCtx& ctx, const Rat& e) {
    return {ga_term(e, fq_from_int(ctx, 1)), ga_one(ctx)};
}

bool fe_is_zero(const FieldElt& a) { return a.num.is_zero(); }

bool fe_eq(const FqCtx& ctx, const FieldElt& a, const FieldElt& b) {
    return ga_eq(ga_mul(ctx, a.num, b.den), ga_mul(ctx, b.num, a.den));
}

FieldElt fe_add(const FqCtx& ctx, const FieldElt& a, const FieldElt& b) {
    GroupAlgElt n = ga_add(ctx, ga_mul(ctx, a.num, b.den), ga_mul(ctx, b.num, a.den));
    return fe_make(ctx, std::move(n), ga_mul(ctx, a.den, b.den));
}

FieldElt fe_neg(const FqCtx& ctx, const FieldElt& a) {
    return {ga_neg(ctx, a.num), a.den};
}

FieldElt fe_sub(const FqCtx& ctx, const FieldElt& a, const FieldElt& b) {
    return fe_add(ctx, a, fe_neg(ctx, b));
}

FieldElt fe_mul(const FqCtx& ctx, const FieldElt& a, const FieldElt& b) {
    return fe_make(ctx, ga_mul(ctx, a.num, b.num), ga_mul(ctx, a.den, b.den));
}

FieldElt fe_inv(const FqCtx& ctx, const FieldElt& a) {
    if (fe_is_zero(a)) throw std::invalid_argument("fe_inv: zero");
    return fe_make(ctx, a.den, a.num);
}

FieldElt fe_div(const FqCtx& ctx, const FieldElt& a, const FieldElt& b) {
    return fe_mul(ctx, a, fe_inv(ctx, b));
}

std::string ga_to_string(const FqCtx& ctx, const GroupAlgElt& a) {
    if (a.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : a.terms) {
        if (!first) s += "+";
        first = false;
        s += fq_to_string(ctx, c);
        if (e != Rat(0)) {
            s += "*t";
            if (e != Rat(1)) {
                if (e.denominator() == 1) {
                    s += "^" + std::to_string(e.numerator());
                } else {
                    s += "^(" + std::to_string(e.numerator()) + "/" + std::to_string(e.denominator()) + ")";
                }
            }
        }
    }
    return s;
}

std::string fe_to_string(const FqCtx& ctx, const FieldElt& a) {
    if (ga_eq(a.den, ga_one(ctx))) return ga_to_string(ctx, a.num);
    return "(" + ga_to_string(ctx, a.num) + ")/(" + ga_to_string(ctx, a.den) + ")";
}

namespace {

struct Parser {
    const FqCtx& ctx;
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("element syntax error at offset " + std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    long long parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        size_t start = pos;
        long long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        if (pos == start) fail("expected integer");
        return neg ? -v : v;
    }

    Rat parse_exponent() {
        skip_ws();
        if (eat('(')) {
            long long n = parse_int();
            expect('/');
            long long d = parse_int();
            expect(')');
            if (d == 0) fail("zero exponent denominator");
            return Rat(n, d);
        }
        return Rat(parse_int());
    }

    Fq parse_coef() {
        skip_ws();
        if (pos < s.size() && s[pos] == 'g') {
            ++pos;
            expect('[');
            Fq c{};
            int i = 0;
            do {
                if (i >= ctx.k) fail("too many GF coordinates");
                long long v = parse_int();
                c.c[i++] = (int)((v % ctx.p + ctx.p) % ctx.p);
            } while (eat(','));
            expect(']');
            return c;
        }
        return fq_from_int(ctx, parse_int());
    }

    // term ::= COEF ['*' tpow] | tpow
    GroupAlgElt parse_term() {
        skip_ws();
        Fq coef = fq_from_int(ctx, 1);
        bool saw_coef = false;
        if (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == 'g' || s[pos] == '-')) {
            coef = parse_coef();
            saw_coef = true;
        }
        Rat exp(0);
        skip_ws();
        bool want_t = !saw_coef;
        if (saw_coef && eat('*')) want_t = true;
        if (want_t) {
            skip_ws();
            if (pos >= s.size() || s[pos] != 't') fail("expected 't'");
            ++pos;
            exp = eat('^') ? parse_exponent() : Rat(1);
        } else if (!saw_coef) {
            fail("expected term");
        }
        return ga_term(exp, coef);
    }

    GroupAlgElt parse_poly() {
        GroupAlgElt r = parse_term();
        while (true) {
            skip_ws();
            if (eat('+')) {
                r = ga_add(ctx, r, parse_term());
            } else {
                break;
            }
        }
        return r;
    }

    FieldElt parse_elt() {
        skip_ws();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            GroupAlgElt num = parse_poly();
            expect(')');
            expect('/');
            expect('(');
            GroupAlgElt den = parse_poly();
            expect(')');
            if (den.is_zero()) fail("zero denominator");
            return fe_make(ctx, std::move(num), std::move(den));
        }
        return fe_make(ctx, parse_poly(), ga_one(ctx));
    }
};

} // namespace

FieldElt fe_parse(const FqCtx& ctx, const std::string& text) {
    Parser p{ctx, text};
    FieldElt r = p.parse_elt();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

} // namespace invsat
