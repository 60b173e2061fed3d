#include "invsat/engine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace invsat {

MICondition member_cond(const Backend& R, const FieldElt& x, const FieldElt& y) {
    if (R.is_zero(y)) return R.is_zero(x) ? MICondition::yes() : MICondition::no();
    if (R.is_zero(x)) return MICondition::yes();
    auto [alpha, r, s] = R.tuganbaev(y, x);
    (void)s;
    // x in y*R_M iff alpha not in M or r not in M
    return MICondition::any({MICondition::negate(MICondition::in(alpha)),
                             MICondition::negate(MICondition::in(r))});
}

MICondition strict_member_cond(const Backend& R, const FieldElt& x, const FieldElt& y) {
    if (R.is_zero(x)) return MICondition::yes();
    if (R.is_zero(y)) return MICondition::no();
    // dense value group: x in y*m*R_M iff not (y in x*R_M)
    return MICondition::negate(member_cond(R, y, x));
}

namespace {

FieldElt family_modulus(const Backend& R, const FamilyTag& fam) {
    switch (fam.kind) {
        case FamilyTag::Sgamma:
            return fam.gamma;
        case FamilyTag::Tfam:
            return R.one();
        case FamilyTag::Sprime:
            return R.mul(fam.beta, fam.eta);
    }
    return R.one();
}

MICondition open_cond(const Backend& R, const FamilyTag& fam, const BasicPair& pair) {
    FieldElt mod = family_modulus(R, fam);
    if (fam.kind != FamilyTag::Sprime) {
        // module R_m / gamma*m*R_m
        if (pair.kind == BasicPair::TopOverAnn) return member_cond(R, mod, pair.d);
        FieldElt bc = R.mul(pair.b, pair.c);
        return MICondition::all({MICondition::in(pair.c), MICondition::in(pair.b),
                                 strict_member_cond(R, bc, mod)});
    }
    // module m*R_m / delta*R_m
    if (pair.kind == BasicPair::TopOverAnn) return strict_member_cond(R, mod, pair.d);
    FieldElt bc = R.mul(pair.b, pair.c);
    return MICondition::all({MICondition::in(pair.c), MICondition::in(pair.b),
                             member_cond(R, bc, mod)});
}

MICondition minimal_cond(const Backend& R, const FamilyTag& fam, const BasicPair& pair) {
    FieldElt mod = family_modulus(R, fam);
    if (fam.kind != FamilyTag::Sprime) {
        if (pair.kind == BasicPair::TopOverAnn)
            return MICondition::all({member_cond(R, mod, pair.d), member_cond(R, pair.d, mod)});
        return MICondition::all({MICondition::negate(MICondition::in(mod)), MICondition::in(pair.b),
                                 MICondition::in(pair.c)});
    }
    if (pair.kind == BasicPair::TopOverAnn) return MICondition::no(); // never minimal
    FieldElt bc = R.mul(pair.b, pair.c);
    return MICondition::all({MICondition::in(pair.c), MICondition::in(pair.b),
                             member_cond(R, bc, mod), member_cond(R, mod, bc)});
}

} // namespace

MICondition delta_f_atom(const Backend& R, const FamilyTag& fam, const BasicPair& pair, PairMode mode) {
    switch (mode) {
        case PairMode::Closed:
            return MICondition::negate(open_cond(R, fam, pair));
        case PairMode::Minimal:
            return minimal_cond(R, fam, pair);
        case PairMode::OpenNotMinimal:
            return MICondition::all({open_cond(R, fam, pair),
                                     MICondition::negate(minimal_cond(R, fam, pair))});
    }
    return MICondition::no();
}

namespace {

long long pow_clamped(long long base, long long exp, long long cap) {
    long long v = 1;
    for (long long i = 0; i < exp; ++i) {
        if (v > cap / base) return cap;
        v *= base;
    }
    return v;
}

int smallest_prime_factor(long long h) {
    for (long long d = 2; d * d <= h; ++d)
        if (h % d == 0) return (int)d;
    return (int)h;
}

int max_power_dividing(long long h, int p) {
    int e = 0;
    while (h % p == 0) {
        h /= p;
        ++e;
    }
    return e;
}

int floor_log_base(long long e, int p) {
    int l = 0;
    long long v = p;
    while (v <= e) {
        v *= p;
        ++l;
    }
    return l;
}

int ceil_log_base(long long e, int p) {
    int l = 0;
    long long v = 1;
    while (v < e) {
        v *= p;
        ++l;
    }
    return l;
}

std::string family_key(const Backend& R, const FamilyTag& fam) {
    switch (fam.kind) {
        case FamilyTag::Sgamma:
            return "S(" + R.print(fam.gamma) + ")";
        case FamilyTag::Sprime:
            return "S'(" + R.print(fam.beta) + "," + R.print(fam.eta) + ")";
        case FamilyTag::Tfam:
            return "T(" + R.print(fam.beta) + "," + R.print(fam.eta) + ")";
    }
    return "?";
}

} // namespace

bool verify_witness(const Backend& R, const StarSentence& s, const Witness& w) {
    long long q = R.fq().q();
    auto tally = [&](const PPPair& pair, long long& e, bool& inf) {
        e = 0;
        inf = false;
        for (const WitnessEntry& en : w.entries) {
            InvariantValue v = uniserial_pair_value(R, en.desc, pair);
            if (v.kind == InvariantValue::Q) e += en.mult;
            if (v.kind == InvariantValue::Infinite) inf = true;
        }
    };
    for (const auto& [pair, h] : s.eqs) {
        long long e;
        bool inf;
        tally(pair, e, inf);
        if (inf || pow_clamped(q, e, h + 1) != h) return false;
    }
    for (const auto& pair : s.ones) {
        long long e;
        bool inf;
        tally(pair, e, inf);
        if (inf || e != 0) return false;
    }
    for (const auto& [pair, t] : s.geqs) {
        long long e;
        bool inf;
        tally(pair, e, inf);
        if (!inf && pow_clamped(q, e, t) < t) return false;
    }
    return true;
}

std::string witness_to_string(const Backend& R, const Witness& w) {
    std::string out;
    for (const WitnessEntry& e : w.entries) {
        out += "entry ideal=" + R.ideal_name(e.desc.ideal_id) + " top=" + cut_to_string(e.desc.top) +
               " bottom=" + cut_to_string(e.desc.bottom) + " mult=" + std::to_string(e.mult);
        if (!e.role.empty()) out += " role=" + e.role;
        out += "\n";
    }
    return out;
}

std::optional<Witness> witness_parse(const Backend& R, const std::string& text) {
    Witness w;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue; // blank line
        if (tok != "entry") return std::nullopt;
        WitnessEntry e;
        bool have_ideal = false, have_top = false, have_bottom = false;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) return std::nullopt;
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "ideal") {
                auto id = R.ideal_by_name(val);
                if (!id) return std::nullopt;
                e.desc.ideal_id = *id;
                have_ideal = true;
            } else if (key == "top") {
                auto c = cut_parse(val);
                if (!c) return std::nullopt;
                e.desc.top = *c;
                have_top = true;
            } else if (key == "bottom") {
                auto c = cut_parse(val);
                if (!c) return std::nullopt;
                e.desc.bottom = *c;
                have_bottom = true;
            } else if (key == "mult") {
                try {
                    e.mult = std::stoll(val);
                } catch (const std::exception&) {
                    return std::nullopt;
                }
                if (e.mult < 1) return std::nullopt;
            } else if (key == "role") {
                e.role = val;
            } else {
                return std::nullopt;
            }
        }
        if (!have_ideal || !have_top || !have_bottom) return std::nullopt;
        w.entries.push_back(std::move(e));
    }
    return w;
}

std::optional<std::vector<WitnessEntry>> Engine::prop58(const FamilyTag& fam, int p, int w,
                                                        const std::vector<std::pair<BasicPair, int>>& eqs,
                                                        const std::vector<BasicPair>& ones,
                                                        const std::vector<std::pair<BasicPair, int>>& geqs) {
    std::string key = family_key(R_, fam) + " p=" + std::to_string(p) + " w=" + std::to_string(w);
    for (const auto& [pr, n] : eqs) key += " e" + std::to_string(n) + basic_to_string(R_, pr);
    for (const auto& pr : ones) key += " o" + basic_to_string(R_, pr);
    for (const auto& [pr, l] : geqs) key += " g" + std::to_string(l) + basic_to_string(R_, pr);
    if (auto it = prop58_memo_.find(key); it != prop58_memo_.end()) return it->second;

    auto result = [&]() -> std::optional<std::vector<WitnessEntry>> {
        if (fam.kind == FamilyTag::Sprime && R_.is_zero(R_.mul(fam.beta, fam.eta)))
            return std::nullopt; // torsion-free m*R_m: the first pair is never minimal
        size_t t = eqs.size(), sg = geqs.size();

        // slot profiles: 0 = closed, 1 = minimal, 2 = open-not-minimal
        std::vector<std::vector<int>> profiles;
        std::vector<int> cur(t + sg, 0);
        std::function<void(size_t)> gen = [&](size_t i) {
            if (i == t + sg) {
                profiles.push_back(cur);
                return;
            }
            int hi = i < t ? 1 : 2;
            for (int v = 0; v <= hi; ++v) {
                cur[i] = v;
                gen(i + 1);
            }
        };
        gen(0);

        MICondition side = fam.kind == FamilyTag::Sgamma
                               ? MICondition::yes()
                               : MICondition::all({MICondition::in(fam.beta), MICondition::in(fam.eta)});

        std::vector<MICondition> conds;
        std::vector<size_t> usable;
        for (size_t fi = 0; fi < profiles.size(); ++fi) {
            std::vector<MICondition> parts{side};
            for (size_t i = 0; i < t; ++i)
                parts.push_back(delta_f_atom(R_, fam, eqs[i].first,
                                             profiles[fi][i] == 0 ? PairMode::Closed : PairMode::Minimal));
            for (size_t k = 0; k < sg; ++k) {
                PairMode m = profiles[fi][t + k] == 0   ? PairMode::Closed
                             : profiles[fi][t + k] == 1 ? PairMode::Minimal
                                                        : PairMode::OpenNotMinimal;
                parts.push_back(delta_f_atom(R_, fam, geqs[k].first, m));
            }
            for (const BasicPair& pr : ones) parts.push_back(delta_f_atom(R_, fam, pr, PairMode::Closed));
            conds.push_back(MICondition::all(std::move(parts)));
            bool sat = false;
            for (MaxIdealId m : R_.max_ideal_ids())
                if (mi_holds(R_, m, conds.back())) sat = true;
            if (sat) usable.push_back(fi);
        }

        // chosen: (profile index, positive weight), weights summing to w
        std::vector<std::pair<size_t, int>> chosen;
        std::function<std::optional<std::vector<WitnessEntry>>(size_t, int)> rec =
            [&](size_t from, int rem) -> std::optional<std::vector<WitnessEntry>> {
            if (rem == 0) {
                for (size_t i = 0; i < t; ++i) {
                    int sum = 0;
                    for (const auto& [fi, d] : chosen)
                        if (profiles[fi][i] == 1) sum += d;
                    if (sum != eqs[i].second) return std::nullopt;
                }
                for (size_t k = 0; k < sg; ++k) {
                    int sum = 0;
                    bool open_inf = false;
                    for (const auto& [fi, d] : chosen) {
                        if (profiles[fi][t + k] == 1) sum += d;
                        if (profiles[fi][t + k] == 2) open_inf = true;
                    }
                    if (sum < geqs[k].second && !open_inf) return std::nullopt;
                }
                std::vector<WitnessEntry> out;
                for (const auto& [fi, d] : chosen) {
                    if (!pp0(R_, p, d, conds[fi])) return std::nullopt;
                    auto mat = pp0_materialize(R_, p, d, conds[fi]);
                    if (!mat) return std::nullopt;
                    for (const auto& [m, copies] : *mat) {
                        WitnessEntry e;
                        switch (fam.kind) {
                            case FamilyTag::Sgamma:
                                e.desc = desc_n_gamma(m, R_.valuation(m, fam.gamma));
                                break;
                            case FamilyTag::Sprime:
                                e.desc = desc_n_prime(m, R_.valuation(m, fam.beta) + R_.valuation(m, fam.eta));
                                break;
                            case FamilyTag::Tfam:
                                e.desc = desc_residue_field(m);
                                break;
                        }
                        e.mult = copies;
                        e.role = family_key(R_, fam);
                        out.push_back(std::move(e));
                    }
                }
                return out;
            }
            for (size_t u = from; u < usable.size(); ++u)
                for (int d = 1; d <= rem; ++d) {
                    chosen.emplace_back(usable[u], d);
                    if (auto r = rec(u + 1, rem - d)) return r;
                    chosen.pop_back();
                }
            return std::nullopt;
        };
        return rec(0, w);
    }();

    prop58_memo_[key] = result;
    return result;
}

std::optional<Witness> Engine::decide_exponent_one(const std::vector<BasicPair>& ones,
                                                   const std::vector<std::pair<BasicPair, long long>>& geqs) {
    Witness w;
    long long q = R_.fq().q();
    for (const auto& [pair, threshold] : geqs) {
        bool found = false;
        for (MaxIdealId m : R_.max_ideal_ids()) {
            auto pt = point_search(R_, m, {pair}, ones);
            if (!pt) continue;
            UniserialDesc d = point_to_uniserial(*pt);
            InvariantValue v = uniserial_pair_value(R_, d, basic_to_pair(pair));
            if (v.kind == InvariantValue::One) continue;
            bool bad = false;
            for (const BasicPair& o : ones)
                if (uniserial_pair_value(R_, d, basic_to_pair(o)).kind != InvariantValue::One) bad = true;
            if (bad) continue;
            long long mult = 1;
            if (v.kind == InvariantValue::Q) {
                mult = 0;
                long long have = 1;
                while (have < threshold) {
                    have *= q;
                    ++mult;
                }
            }
            w.entries.push_back({d, std::max(mult, 1LL), "case1"});
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    return w;
}

std::pair<bool, Witness> Engine::decide_basic(const BasicStar& s, int depth) {
    if (depth > budget_.max_depth) throw std::runtime_error("engine: recursion depth cap exceeded");
    std::string key = basic_star_to_string(R_, s);
    if (auto it = basic_memo_.find(key); it != basic_memo_.end()) {
        trace_.push_back("depth=" + std::to_string(depth) + " exponent=" +
                         std::to_string(basic_exponent(s)) + " memo=" + (it->second.first ? "sat" : "unsat"));
        return it->second;
    }
    auto r = decide_basic_uncached(s, depth);
    basic_memo_[key] = r;
    return r;
}

std::pair<bool, Witness> Engine::decide_basic_uncached(const BasicStar& s, int depth) {
    long long expo = basic_exponent(s);
    if (s.eqs.empty()) {
        trace_.push_back("depth=" + std::to_string(depth) + " exponent=1 case=1 geqs=" +
                         std::to_string(s.geqs.size()));
        auto w = decide_exponent_one(s.ones, s.geqs);
        trace_.push_back("depth=" + std::to_string(depth) + " verdict=" + (w ? "sat" : "unsat"));
        if (w) return {true, *w};
        return {false, {}};
    }
    long long H1 = s.eqs[0].second;
    int p = smallest_prime_factor(H1);
    int h1 = max_power_dividing(H1, p);
    bool sub21 = s.eqs[0].first.kind == BasicPair::AnnOverDiv;
    trace_.push_back("depth=" + std::to_string(depth) + " exponent=" + std::to_string(expo) +
                     " case=" + (sub21 ? "2.1" : "2.2") + " p=" + std::to_string(p) +
                     " h1=" + std::to_string(h1));
    auto r = case_two(s, depth, p, h1);
    trace_.push_back("depth=" + std::to_string(depth) + " verdict=" + (r.first ? "sat" : "unsat"));
    return r;
}

std::pair<bool, Witness> Engine::case_two(const BasicStar& s, int depth, int p, int h1) {
    const BasicPair& pair1 = s.eqs[0].first;
    bool sub21 = pair1.kind == BasicPair::AnnOverDiv;

    FamilyTag famF, famG;
    if (sub21) {
        famF.kind = FamilyTag::Sprime;
        famF.beta = pair1.c;
        famF.eta = pair1.b;
        famG.kind = FamilyTag::Tfam;
        famG.beta = pair1.c;
        famG.eta = pair1.b;
    } else {
        famF.kind = FamilyTag::Sgamma;
        famF.gamma = pair1.d;
    }

    struct EqSlot {
        BasicPair pair;
        long long h;
        int emax;
    };
    struct GeqSlot {
        BasicPair pair;
        long long e;
        int lmax;
    };
    std::vector<EqSlot> eqt;
    for (size_t i = 1; i < s.eqs.size(); ++i)
        eqt.push_back({s.eqs[i].first, s.eqs[i].second, max_power_dividing(s.eqs[i].second, p)});
    std::vector<GeqSlot> gqt;
    for (const auto& [pr, e] : s.geqs) gqt.push_back({pr, e, floor_log_base(e, p)});

    const int INF = -1;
    std::vector<int> fe(eqt.size()), ge(eqt.size()), fg(gqt.size()), gg(gqt.size());

    auto build_family_query =
        [&](int w, const std::vector<int>& ev, const std::vector<int>& gv, const FamilyTag& fam)
        -> std::optional<std::vector<WitnessEntry>> {
        if (w == 0) return std::vector<WitnessEntry>{}; // the zero module
        std::vector<std::pair<BasicPair, int>> eqs2;
        std::vector<BasicPair> ones2 = s.ones;
        std::vector<std::pair<BasicPair, int>> geqs2;
        for (size_t i = 0; i < eqt.size(); ++i) {
            if (ev[i] >= 1) {
                eqs2.emplace_back(eqt[i].pair, ev[i]);
            } else {
                ones2.push_back(eqt[i].pair);
            }
        }
        for (size_t k = 0; k < gqt.size(); ++k) {
            if (gv[k] == INF) {
                geqs2.emplace_back(gqt[k].pair, ceil_log_base(gqt[k].e, p));
            } else if (gv[k] >= 1) {
                eqs2.emplace_back(gqt[k].pair, gv[k]);
            } else {
                ones2.push_back(gqt[k].pair);
            }
        }
        return prop58(fam, p, w, eqs2, ones2, geqs2);
    };

    auto try_candidate = [&](int f1, int g1) -> std::optional<Witness> {
        auto wf = build_family_query(f1, fe, fg, famF);
        if (!wf) return std::nullopt;
        std::vector<WitnessEntry> wg;
        if (sub21) {
            auto r = build_family_query(g1, ge, gg, famG);
            if (!r) return std::nullopt;
            wg = std::move(*r);
        }
        // the residue sentence
        BasicStar rest;
        long long h1r = s.eqs[0].second;
        for (int i = 0; i < h1; ++i) h1r /= p;
        if (h1r >= 2) {
            rest.eqs.emplace_back(pair1, h1r);
        } else {
            rest.ones.push_back(pair1);
        }
        for (size_t i = 0; i < eqt.size(); ++i) {
            long long hr = eqt[i].h;
            for (int j = 0; j < fe[i] + ge[i]; ++j) hr /= p;
            if (hr >= 2) {
                rest.eqs.emplace_back(eqt[i].pair, hr);
            } else {
                rest.ones.push_back(eqt[i].pair);
            }
        }
        for (const auto& o : s.ones) rest.ones.push_back(o);
        for (size_t k = 0; k < gqt.size(); ++k) {
            if (fg[k] == INF || gg[k] == INF) continue; // an infinite part already covers it
            long long div = 1;
            for (int j = 0; j < fg[k] + gg[k]; ++j) div *= p;
            long long er = (gqt[k].e + div - 1) / div;
            if (er >= 2) rest.geqs.emplace_back(gqt[k].pair, er);
        }
        auto [ok, wrest] = decide_basic(rest, depth + 1);
        if (!ok) return std::nullopt;
        Witness out;
        for (auto& e : *wf) out.entries.push_back(std::move(e));
        for (auto& e : wg) out.entries.push_back(std::move(e));
        for (auto& e : wrest.entries) out.entries.push_back(e);
        return out;
    };

    // enumerate the split of h1 and the per-slot shares
    std::optional<Witness> found;
    std::function<bool(size_t, int, int)> walk_geq = [&](size_t k, int f1, int g1) -> bool {
        if (k == gqt.size()) {
            if (auto w = try_candidate(f1, g1)) {
                found = std::move(*w);
                return true;
            }
            return false;
        }
        std::vector<int> fopts, gopts;
        if (f1 == 0) {
            fopts = {0};
        } else {
            for (int v = 0; v <= gqt[k].lmax; ++v) fopts.push_back(v);
            fopts.push_back(INF);
        }
        if (!sub21 || g1 == 0) {
            gopts = {0};
        } else {
            for (int v = 0; v <= gqt[k].lmax; ++v) gopts.push_back(v);
            gopts.push_back(INF);
        }
        for (int fv : fopts)
            for (int gv : gopts) {
                fg[k] = fv;
                gg[k] = gv;
                if (walk_geq(k + 1, f1, g1)) return true;
            }
        return false;
    };
    std::function<bool(size_t, int, int)> walk_eq = [&](size_t i, int f1, int g1) -> bool {
        if (i == eqt.size()) return walk_geq(0, f1, g1);
        int fmax = f1 == 0 ? 0 : eqt[i].emax;
        for (int fv = 0; fv <= fmax; ++fv) {
            int gmax = (!sub21 || g1 == 0) ? 0 : eqt[i].emax - fv;
            for (int gv = 0; gv <= gmax; ++gv) {
                fe[i] = fv;
                ge[i] = gv;
                if (walk_eq(i + 1, f1, g1)) return true;
            }
        }
        return false;
    };

    if (sub21) {
        for (int f1 = 0; f1 <= h1; ++f1)
            if (walk_eq(0, f1, h1 - f1)) return {true, std::move(*found)};
    } else {
        std::fill(ge.begin(), ge.end(), 0);
        std::fill(gg.begin(), gg.end(), 0);
        if (walk_eq(0, h1, 0)) return {true, std::move(*found)};
    }
    return {false, {}};
}

DecideResult Engine::decide_star(const StarSentence& s) {
    trace_.clear();
    auto simp = simplify_star(R_, s);
    if (!simp) {
        trace_.push_back("constant-contradiction");
        return {false, {}, trace_};
    }
    Witness found;
    bool sat = reduce_for_each(R_, *simp, budget_.reduce, [&](const std::vector<BasicLeaf>& branch) {
        Witness acc;
        for (const BasicLeaf& leaf : branch) {
            auto [ok, w] = decide_basic(leaf.star, 0);
            if (!ok) return false;
            for (const auto& e : w.entries) acc.entries.push_back(e);
        }
        if (!verify_witness(R_, s, acc))
            throw std::runtime_error("internal error: assembled witness failed verification");
        found = std::move(acc);
        return true;
    });
    return {sat, found, trace_};
}

DecideResult Engine::decide(const BoolSentence& s) {
    std::vector<std::string> all_trace;
    for (const StarSentence& star : to_star_dnf(R_, s)) {
        DecideResult r = decide_star(star);
        all_trace.insert(all_trace.end(), r.trace.begin(), r.trace.end());
        if (r.sat) {
            r.trace = std::move(all_trace);
            return r;
        }
    }
    return {false, {}, std::move(all_trace)};
}

} // namespace invsat
