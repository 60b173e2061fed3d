#include "invsat/ziegler.hpp"

#include <algorithm>
#include <stdexcept>

namespace invsat {

bool cut_eq(const Cut& a, const Cut& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != Cut::Bound) return true;
    return a.bound == b.bound && a.open == b.open;
}

bool cut_subset(const Cut& a, const Cut& b) {
    if (a.kind == Cut::Zero || b.kind == Cut::Full) return true;
    if (b.kind == Cut::Zero) return a.kind == Cut::Zero;
    if (a.kind == Cut::Full) return b.kind == Cut::Full;
    if (a.bound != b.bound) return a.bound > b.bound;
    return !b.open || a.open;
}

Cut cut_union(const Cut& a, const Cut& b) { return cut_subset(a, b) ? b : a; }

Cut cut_intersect(const Cut& a, const Cut& b) { return cut_subset(a, b) ? a : b; }

std::string cut_to_string(const Cut& c) {
    switch (c.kind) {
        case Cut::Zero:
            return "zero";
        case Cut::Full:
            return "full";
        case Cut::Bound:
            return (c.open ? ">" : ">=") + rat_to_string(c.bound);
    }
    return "?";
}

std::optional<Cut> cut_parse(const std::string& s) {
    if (s == "zero") return Cut::zero();
    if (s == "full") return Cut::full();
    bool open;
    size_t off;
    if (s.rfind(">=", 0) == 0) {
        open = false;
        off = 2;
    } else if (s.rfind(">", 0) == 0) {
        open = true;
        off = 1;
    } else {
        return std::nullopt;
    }
    std::string num = s.substr(off);
    long long n = 0, d = 1;
    size_t slash = num.find('/');
    try {
        n = std::stoll(slash == std::string::npos ? num : num.substr(0, slash));
        if (slash != std::string::npos) d = std::stoll(num.substr(slash + 1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (d <= 0) return std::nullopt;
    return Cut::at(Rat(n, d), open);
}

Cut cut_mul(const Cut& a, const Cut& b) {
    if (a.kind == Cut::Full || b.kind == Cut::Full) throw std::logic_error("cut_mul: Full is not an ideal");
    if (a.kind == Cut::Zero || b.kind == Cut::Zero) return Cut::zero();
    return Cut::at(a.bound + b.bound, a.open || b.open);
}

Cut cut_colon(const Cut& k, const Rat& vr) {
    if (k.kind != Cut::Bound) return k;
    Rat b = k.bound - vr;
    if (b < Rat(0)) return Cut::unit();
    return Cut::at(b, k.open);
}

Cut cut_sharp(const Cut& i) {
    if (i.kind == Cut::Zero) return Cut::zero();
    if (i.kind == Cut::Full || cut_eq(i, Cut::unit())) throw std::logic_error("cut_sharp: ideal must be proper");
    return Cut::maximal();
}

Cut cut_shift(const Cut& c, const Rat& v) {
    if (c.kind != Cut::Bound) return c;
    return Cut::at(c.bound + v, c.open);
}

Cut cut_colon_mod(const Cut& c, const Rat& v) { return cut_shift(c, -v); }

bool elem_in_cut(const Cut& c, bool is_zero, const Rat& v) {
    if (is_zero) return true;
    switch (c.kind) {
        case Cut::Zero:
            return false;
        case Cut::Full:
            return true;
        case Cut::Bound:
            return c.open ? v > c.bound : v >= c.bound;
    }
    return false;
}

PPPair basic_to_pair(const BasicPair& p) {
    if (p.kind == BasicPair::AnnOverDiv)
        return {PPFormula::atom(Atom::ann(p.b)), PPFormula::atom(Atom::divides(p.c))};
    return {PPFormula::top(), PPFormula::atom(Atom::ann(p.d))};
}

std::string basic_to_string(const Backend& R, const BasicPair& p) {
    return pair_to_string(R, basic_to_pair(p));
}

// The annihilator of the realized sub-quotient top/bottom is the cut colon
// (bottom : top). It agrees with the ideal product I*J except at attained
// boundaries, where the product is open but the colon is closed; the colon is
// what the realization actually annihilates, so it is the value used here.
Cut ann_point(const ZgPoint& p) {
    UniserialDesc d = point_to_uniserial(p);
    if (d.bottom.kind == Cut::Zero) return Cut::zero();
    if (d.top.kind == Cut::Full) return d.bottom.kind == Cut::Full ? Cut::full() : Cut::zero();
    // both bounded: a + w in bottom for every w in top
    Cut r = Cut::at(d.bottom.bound - d.top.bound, !d.top.open && d.bottom.open);
    return r;
}

bool point_opens(const Backend& R, const ZgPoint& p, const BasicPair& pair) {
    MaxIdealId m = p.ideal_id;
    if (pair.kind == BasicPair::TopOverAnn) {
        if (R.is_zero(pair.d)) throw std::invalid_argument("point_opens: TopOverAnn scalar must be nonzero");
        return !elem_in_cut(ann_point(p), false, R.valuation(m, pair.d));
    }
    bool bz = R.is_zero(pair.b), cz = R.is_zero(pair.c);
    Rat vb = bz ? Rat(0) : R.valuation(m, pair.b);
    Rat vc = cz ? Rat(0) : R.valuation(m, pair.c);
    if (!elem_in_cut(cut_sharp(p.J), cz, vc)) return false;
    if (!elem_in_cut(cut_sharp(p.I), bz, vb)) return false;
    return elem_in_cut(cut_mul(p.I, p.J), bz || cz, vb + vc);
}

UniserialDesc point_to_uniserial(const ZgPoint& p) {
    UniserialDesc d;
    d.ideal_id = p.ideal_id;
    d.bottom = p.I;
    switch (p.J.kind) {
        case Cut::Zero:
            d.top = Cut::full();
            break;
        case Cut::Bound:
            d.top = Cut::at(-p.J.bound, !p.J.open);
            break;
        case Cut::Full:
            throw std::logic_error("point_to_uniserial: J must be proper or zero");
    }
    return d;
}

UniserialDesc desc_n_gamma(MaxIdealId m, const Rat& v_gamma) {
    return {m, Cut::unit(), Cut::at(v_gamma, true)};
}

UniserialDesc desc_n_prime(MaxIdealId m, const Rat& v_beta_eta) {
    return {m, Cut::maximal(), Cut::at(v_beta_eta, false)};
}

UniserialDesc desc_residue_field(MaxIdealId m) {
    return {m, Cut::unit(), Cut::maximal()};
}

namespace {

InvariantValue classify(const Cut& phi, const Cut& both) {
    if (cut_eq(phi, both)) return {InvariantValue::One};
    if (phi.kind == Cut::Bound && both.kind == Cut::Bound && phi.bound == both.bound && !phi.open && both.open)
        return {InvariantValue::Q};
    return {InvariantValue::Infinite};
}

// submodule of top/bottom cut out by one atom, as a cut between bottom and top
Cut atom_cut(const Backend& R, const UniserialDesc& M, const Atom& a) {
    MaxIdealId m = M.ideal_id;
    auto val = [&](const FieldElt& e) { return R.valuation(m, e); };
    switch (a.kind) {
        case Atom::Top:
            return M.top;
        case Atom::Bot:
            return M.bottom;
        case Atom::Divides:
            if (R.is_zero(a.x)) return M.bottom;
            return cut_union(cut_shift(M.top, val(a.x)), M.bottom);
        case Atom::Ann:
            if (R.is_zero(a.x)) return M.top;
            return cut_intersect(cut_colon_mod(M.bottom, val(a.x)), M.top);
        case Atom::DivProd: {
            if (R.is_zero(a.y)) return M.top;
            if (R.is_zero(a.x))
                return cut_intersect(cut_colon_mod(M.bottom, val(a.y)), M.top);
            Cut target = cut_union(cut_shift(M.top, val(a.x)), M.bottom);
            return cut_intersect(cut_colon_mod(target, val(a.y)), M.top);
        }
        case Atom::ExistsPair: {
            if (R.is_zero(a.x)) return M.bottom;
            if (R.is_zero(a.y)) return cut_union(cut_shift(M.top, val(a.x)), M.bottom);
            Cut annb = cut_intersect(cut_colon_mod(M.bottom, val(a.y)), M.top);
            return cut_union(cut_shift(annb, val(a.x)), M.bottom);
        }
    }
    return M.bottom;
}

Cut formula_cut(const Backend& R, const UniserialDesc& M, const PPFormula& f) {
    Cut acc = M.bottom;
    for (const auto& conj : f.sum) {
        Cut c = M.top;
        for (const Atom& a : conj) c = cut_intersect(c, atom_cut(R, M, a));
        acc = cut_union(acc, c);
    }
    return acc;
}

} // namespace

InvariantValue uniserial_pair_value(const Backend& R, const UniserialDesc& M, const PPPair& pair) {
    Cut phi = formula_cut(R, M, pair.phi);
    Cut both = cut_intersect(phi, formula_cut(R, M, pair.psi));
    return classify(phi, both);
}

InvariantValue uniserial_invariant(const Backend& R, const UniserialDesc& M, const BasicPair& pair) {
    return uniserial_pair_value(R, M, basic_to_pair(pair));
}

std::optional<ZgPoint> point_search(const Backend& R, MaxIdealId m,
                                    const std::vector<BasicPair>& opens,
                                    const std::vector<BasicPair>& closes) {
    std::vector<Rat> vals;
    auto add_scalar = [&](const FieldElt& e) {
        if (!R.is_zero(e)) vals.push_back(R.valuation(m, e));
    };
    for (const auto* list : {&opens, &closes})
        for (const BasicPair& p : *list) {
            if (p.kind == BasicPair::TopOverAnn) {
                add_scalar(p.d);
            } else {
                add_scalar(p.b);
                add_scalar(p.c);
            }
        }
    std::vector<Rat> cand{Rat(0)};
    cand.insert(cand.end(), vals.begin(), vals.end());
    for (const Rat& a : vals)
        for (const Rat& b : vals) {
            cand.push_back(a + b);
            Rat d = a - b;
            if (d >= Rat(0)) cand.push_back(d);
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Rat> mids;
    for (size_t i = 0; i + 1 < cand.size(); ++i) mids.push_back((cand[i] + cand[i + 1]) / Rat(2));
    cand.insert(cand.end(), mids.begin(), mids.end());
    cand.push_back(cand.empty() ? Rat(1) : *std::max_element(cand.begin(), cand.end()) + Rat(1));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<Cut> ideals{Cut::zero()};
    for (const Rat& v : cand) {
        ideals.push_back(Cut::at(v, true));
        if (v > Rat(0)) ideals.push_back(Cut::at(v, false)); // exclude Unit
    }

    for (const Cut& I : ideals)
        for (const Cut& J : ideals) {
            ZgPoint p{m, I, J};
            bool ok = true;
            for (const BasicPair& q : opens)
                if (!point_opens(R, p, q)) {
                    ok = false;
                    break;
                }
            for (const BasicPair& q : closes) {
                if (!ok) break;
                if (point_opens(R, p, q)) ok = false;
            }
            if (ok) return p;
        }
    return std::nullopt;
}

} // namespace invsat
