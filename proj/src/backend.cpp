#include "invsat/backend.hpp"

#include <algorithm>
#include <stdexcept>

namespace invsat {

namespace {

int int_factor(int& n, int d) {
    int k = 0;
    while (n % d == 0) {
        n /= d;
        ++k;
    }
    return k;
}

} // namespace

Backend Backend::from_string(const std::string& ring) {
    auto colon = ring.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("ring spec must be kind:q, got '" + ring + "'");
    std::string kind_s = ring.substr(0, colon);
    int q = 0;
    try {
        q = std::stoi(ring.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad ring order in '" + ring + "'");
    }
    if (q < 2) throw std::invalid_argument("ring order must be >= 2");
    // factor q = p^k
    int p = 0, k = 0, rest = q;
    for (int d = 2; d * d <= rest; ++d) {
        if (rest % d == 0) {
            p = d;
            k = int_factor(rest, d);
            break;
        }
    }
    if (p == 0) {
        p = rest;
        k = 1;
        rest = 1;
    }
    if (rest != 1) throw std::invalid_argument("ring order must be a prime power, got " + std::to_string(q));
    if (k > 4) throw std::invalid_argument("residue degree k <= 4 supported, got k=" + std::to_string(k));
    RingKind kind;
    if (kind_s == "local") {
        kind = RingKind::Local;
    } else if (kind_s == "twovalued") {
        kind = RingKind::TwoValued;
    } else {
        throw std::invalid_argument("unknown ring kind '" + kind_s + "' (want local|twovalued)");
    }
    return Backend(kind, FqCtx::make(p, k));
}

std::string Backend::name() const {
    return (kind_ == RingKind::Local ? "local:" : "twovalued:") + std::to_string(ctx_.q());
}

std::vector<MaxIdealId> Backend::max_ideal_ids() const {
    if (kind_ == RingKind::Local) return {0};
    return {0, 1};
}

std::string Backend::ideal_name(MaxIdealId m) const {
    return m == 0 ? "m0" : "mInf";
}

std::optional<MaxIdealId> Backend::ideal_by_name(const std::string& s) const {
    for (MaxIdealId m : max_ideal_ids())
        if (ideal_name(m) == s) return m;
    return std::nullopt;
}

std::pair<int, int> Backend::residue_size(MaxIdealId) const {
    return {ctx_.p, ctx_.k};
}

Rat Backend::valuation(MaxIdealId m, const FieldElt& f) const {
    if (fe_is_zero(f)) throw std::invalid_argument("valuation of zero");
    if (m == 0) return f.num.min_exp() - f.den.min_exp();
    return f.den.max_exp() - f.num.max_exp();
}

bool Backend::in_ring(const FieldElt& f) const {
    if (fe_is_zero(f)) return true;
    for (MaxIdealId m : max_ideal_ids())
        if (valuation(m, f) < Rat(0)) return false;
    return true;
}

bool Backend::in_ideal(MaxIdealId m, const FieldElt& f) const {
    if (fe_is_zero(f)) return true;
    return in_ring(f) && valuation(m, f) > Rat(0);
}

bool Backend::is_unit(const FieldElt& f) const {
    if (fe_is_zero(f)) return false;
    for (MaxIdealId m : max_ideal_ids())
        if (valuation(m, f) != Rat(0)) return false;
    return true;
}

FieldElt Backend::unit_inverse(const FieldElt& a) const {
    if (!is_unit(a)) throw std::invalid_argument("unit_inverse: not a unit");
    return fe_inv(ctx_, a);
}

bool Backend::divides(const FieldElt& a, const FieldElt& b) const {
    if (fe_is_zero(a)) return fe_is_zero(b);
    if (fe_is_zero(b)) return true;
    for (MaxIdealId m : max_ideal_ids())
        if (valuation(m, a) > valuation(m, b)) return false;
    return true;
}

Fq Backend::residue(MaxIdealId m, const FieldElt& f) const {
    if (fe_is_zero(f)) return Fq{};
    Rat v = valuation(m, f);
    if (v < Rat(0)) throw std::invalid_argument("residue: negative valuation");
    if (v > Rat(0)) return Fq{};
    if (m == 0) {
        const Fq& n = f.num.terms.begin()->second;
        const Fq& d = f.den.terms.begin()->second;
        return fq_mul(ctx_, n, fq_inv(ctx_, d));
    }
    const Fq& n = f.num.terms.rbegin()->second;
    const Fq& d = f.den.terms.rbegin()->second;
    return fq_mul(ctx_, n, fq_inv(ctx_, d));
}

FieldElt Backend::element_of_values(const std::vector<Rat>& vals) const {
    if (vals.size() != max_ideal_ids().size()) throw std::invalid_argument("element_of_values: arity");
    for (const Rat& v : vals)
        if (v < Rat(0)) throw std::invalid_argument("element_of_values: negative value");
    if (kind_ == RingKind::Local) return fe_monomial(ctx_, vals[0]);
    // (t^a/(1+t^a)) * (1/(1+t^b)), zero-exponent factors replaced by 1
    const Rat &a = vals[0], &b = vals[1];
    FieldElt r = one();
    if (a != Rat(0)) {
        GroupAlgElt den = ga_add(ctx_, ga_one(ctx_), ga_term(a, fq_from_int(ctx_, 1)));
        r = fe_mul(ctx_, r, fe_make(ctx_, ga_term(a, fq_from_int(ctx_, 1)), den));
    }
    if (b != Rat(0)) {
        GroupAlgElt den = ga_add(ctx_, ga_one(ctx_), ga_term(b, fq_from_int(ctx_, 1)));
        r = fe_mul(ctx_, r, fe_make(ctx_, ga_one(ctx_), den));
    }
    return r;
}

std::tuple<FieldElt, FieldElt, FieldElt> Backend::tuganbaev(const FieldElt& a, const FieldElt& b) const {
    // want: b*alpha = a*s, a*(alpha-1) = b*r
    if (fe_is_zero(a)) return {zero(), zero(), zero()};
    if (fe_is_zero(b)) return {one(), zero(), zero()};
    if (divides(a, b)) return {one(), zero(), fe_div(ctx_, b, a)};
    if (divides(b, a)) return {zero(), fe_neg(ctx_, fe_div(ctx_, a, b)), zero()};
    // mixed case, TwoValued only: a | b at one ideal, b | a at the other
    Rat d0 = valuation(0, b) - valuation(0, a);  // > 0 iff a | b at m0
    Rat dI = valuation(1, b) - valuation(1, a);
    FieldElt alpha;
    long long N;
    auto ceil_pos = [](const Rat& r) {
        long long n = r.numerator(), d = r.denominator();
        long long c = n / d + (n % d != 0 && n > 0 ? 1 : 0);
        return c < 1 ? 1 : c;
    };
    if (d0 >= Rat(0)) {
        // a|b at m0, b|a at mInf: alpha = 1/(1+t^N)
        N = std::max(ceil_pos(d0), ceil_pos(-dI));
        GroupAlgElt den = ga_add(ctx_, ga_one(ctx_), ga_term(Rat(N), fq_from_int(ctx_, 1)));
        alpha = fe_make(ctx_, ga_one(ctx_), den);
    } else {
        // b|a at m0, a|b at mInf: alpha = t^N/(1+t^N)
        N = std::max(ceil_pos(-d0), ceil_pos(dI));
        GroupAlgElt den = ga_add(ctx_, ga_one(ctx_), ga_term(Rat(N), fq_from_int(ctx_, 1)));
        alpha = fe_make(ctx_, ga_term(Rat(N), fq_from_int(ctx_, 1)), den);
    }
    FieldElt s = fe_div(ctx_, fe_mul(ctx_, b, alpha), a);
    FieldElt r = fe_div(ctx_, fe_mul(ctx_, a, fe_sub(ctx_, alpha, one())), b);
    return {alpha, r, s};
}

std::tuple<FieldElt, FieldElt, FieldElt> Backend::gcd_bezout(const FieldElt& a, const FieldElt& b) const {
    if (fe_is_zero(a) && fe_is_zero(b)) throw std::invalid_argument("gcd_bezout(0,0)");
    if (fe_is_zero(b)) return {a, one(), zero()};
    if (fe_is_zero(a)) return {b, zero(), one()};
    if (divides(a, b)) return {a, one(), zero()};
    if (divides(b, a)) return {b, zero(), one()};
    // incomparable (TwoValued): combine with idempotent-like units e_N,
    // 1-e_N so the minimum valuation survives at both ideals
    Rat d0 = valuation(0, a) - valuation(0, b);
    Rat dI = valuation(1, a) - valuation(1, b);
    auto abs_ceil = [](const Rat& r) {
        Rat ar = r < Rat(0) ? -r : r;
        long long c = ar.numerator() / ar.denominator() + (ar.numerator() % ar.denominator() != 0);
        return c < 1 ? 1 : c;
    };
    long long N = std::max(abs_ceil(d0), abs_ceil(dI)) + 1;
    GroupAlgElt den = ga_add(ctx_, ga_one(ctx_), ga_term(Rat(N), fq_from_int(ctx_, 1)));
    FieldElt eN = fe_make(ctx_, ga_one(ctx_), den);                               // values (0, N)
    FieldElt eN1 = fe_make(ctx_, ga_term(Rat(N), fq_from_int(ctx_, 1)), den);     // 1 - eN, values (N, 0)
    FieldElt u, v;
    if (d0 < Rat(0)) {
        // a smaller at m0, b smaller at mInf
        u = eN;
        v = eN1;
    } else {
        u = eN1;
        v = eN;
    }
    FieldElt g = fe_add(ctx_, fe_mul(ctx_, a, u), fe_mul(ctx_, b, v));
    return {g, u, v};
}

bool Backend::dpr_star(const DPRQuery& q) const {
    if (q.bs.empty() || q.bs.size() != q.ds.size()) throw std::invalid_argument("dpr_star: bad arity");
    // primes are represented as -1 (the zero ideal) or a maximal ideal id
    std::vector<int> primes{-1};
    for (MaxIdealId m : max_ideal_ids()) primes.push_back(m);
    auto in_prime = [&](int pr, const FieldElt& e) {
        if (pr == -1) return fe_is_zero(e);
        return in_ideal(pr, e);
    };
    for (int p1 : primes)
        for (int p2 : primes) {
            // skip comaximal pairs (distinct maximal ideals)
            if (p1 >= 0 && p2 >= 0 && p1 != p2) continue;
            if (in_prime(p1, q.a) || in_prime(p2, q.c)) continue;
            bool ok = false;
            for (size_t j = 0; j < q.bs.size() && !ok; ++j)
                ok = !in_prime(p1, q.bs[j]) || !in_prime(p2, q.ds[j]);
            if (!ok) return false;
        }
    return true;
}

bool Backend::pp_star(const PPQuery& q) const {
    if (q.cs.empty() || q.n < 1) throw std::invalid_argument("pp_star: bad query");
    if (q.p != ctx_.p) return false;
    if (q.n % ctx_.k != 0) return false;
    for (MaxIdealId m : max_ideal_ids()) {
        bool ok = !in_ideal(m, q.d);
        for (const FieldElt& c : q.cs)
            if (!in_ideal(m, c)) ok = false;
        if (ok) return true;
    }
    return false;
}

bool divides_via_dpr(const Backend& R, const FieldElt& a, const FieldElt& b) {
    if (R.is_zero(a) || R.is_zero(b)) throw std::invalid_argument("divides_via_dpr: zero argument");
    auto [alpha, r, s] = R.tuganbaev(a, b);
    (void)s;
    DPRQuery q{R.one(), {alpha}, R.one(), {r}};
    return R.dpr_star(q);
}

} // namespace invsat
