#include "invsat/pipeline.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace invsat {

long long basic_exponent(const BasicStar& s) {
    long long e = 1;
    for (const auto& [p, h] : s.eqs) e *= h;
    return e;
}

StarSentence basic_to_star(const BasicStar& s) {
    StarSentence r;
    for (const auto& [p, h] : s.eqs) r.eqs.emplace_back(basic_to_pair(p), h);
    for (const auto& p : s.ones) r.ones.push_back(basic_to_pair(p));
    for (const auto& [p, e] : s.geqs) r.geqs.emplace_back(basic_to_pair(p), e);
    return r;
}

std::string basic_star_to_string(const Backend& R, const BasicStar& s) {
    return star_to_string(R, basic_to_star(s));
}

namespace {

const Atom* single_atom(const PPFormula& f) {
    if (f.sum.size() == 1 && f.sum[0].size() == 1) return &f.sum[0][0];
    return nullptr;
}

} // namespace

std::optional<BasicPair> pair_to_basic(const Backend& R, const PPPair& p) {
    const Atom* phi = single_atom(p.phi);
    const Atom* psi = single_atom(p.psi);
    if (!phi || !psi) return std::nullopt;
    // numerator: x=x or xb=0
    FieldElt b;
    if (phi->kind == Atom::Top) {
        b = R.zero();
    } else if (phi->kind == Atom::Ann) {
        b = phi->x;
    } else {
        return std::nullopt;
    }
    switch (psi->kind) {
        case Atom::Divides:
            return BasicPair::ann_over_div(b, psi->x);
        case Atom::Bot:
            return BasicPair::ann_over_div(b, R.zero());
        case Atom::Ann:
            if (phi->kind == Atom::Top) return BasicPair::top_over_ann(psi->x);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

std::optional<BasicStar> star_to_basic(const Backend& R, const StarSentence& s) {
    BasicStar r;
    for (const auto& [p, h] : s.eqs) {
        auto b = pair_to_basic(R, p);
        if (!b) return std::nullopt;
        r.eqs.emplace_back(*b, h);
    }
    for (const auto& p : s.ones) {
        auto b = pair_to_basic(R, p);
        if (!b) return std::nullopt;
        r.ones.push_back(*b);
    }
    for (const auto& [p, e] : s.geqs) {
        auto b = pair_to_basic(R, p);
        if (!b) return std::nullopt;
        r.geqs.emplace_back(*b, e);
    }
    return r;
}

std::vector<std::vector<int>> quasi_orders(int n) {
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    std::vector<int> labels(n, 0);
    // all surjections onto initial segments {0..k-1}; block 0 greatest, so
    // relabelings are distinct orders and none may be canonicalized away
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            int top = *std::max_element(labels.begin(), labels.end());
            std::vector<char> hit(top + 1, 0);
            for (int b : labels) hit[b] = 1;
            for (char h : hit)
                if (!h) return;
            out.push_back(labels);
            return;
        }
        for (int b = 0; b < n; ++b) {
            labels[i] = b;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<long long>> eq_distributions(long long h, int slots) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur(slots, 1);
    std::function<void(int, long long)> rec = [&](int j, long long rem) {
        if (j == slots) {
            if (rem == 1) out.push_back(cur);
            return;
        }
        for (long long d = 1; d <= rem; ++d) {
            if (rem % d) continue;
            cur[j] = d;
            rec(j + 1, rem / d);
        }
    };
    rec(0, h);
    return out;
}

std::vector<std::vector<long long>> geq_distributions(long long e, int slots) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur(slots, 1);
    std::function<void(int, long long)> rec = [&](int j, long long prod) {
        if (j == slots) {
            if (prod < e) return;
            // componentwise minimal only: any decrement must fall below e
            for (int i = 0; i < slots; ++i)
                if (cur[i] > 1 && (prod / cur[i]) * (cur[i] - 1) >= e) return;
            out.push_back(cur);
            return;
        }
        if (prod >= e) {
            cur[j] = 1;
            rec(j + 1, prod);
            return;
        }
        for (long long v = 1; v <= e; ++v) {
            cur[j] = v;
            rec(j + 1, prod * v);
        }
    };
    rec(0, 1);
    return out;
}

namespace {

int floor_log2(long long h) {
    int k = 0;
    while (h > 1) {
        h /= 2;
        ++k;
    }
    return k;
}

int ceil_log2(long long e) {
    int k = 0;
    long long v = 1;
    while (v < e) {
        v *= 2;
        ++k;
    }
    return k;
}

struct Leaf {
    StarSentence star;
    std::string note;
    int iters = 0;
};

// one way to specialize the current sentence for one direct summand
struct LeafTemplate {
    std::function<PPPair(const PPPair&)> map_pair;
    std::vector<PPPair> extra_ones;
    std::vector<std::pair<PPPair, long long>> extra_geqs;
    std::string tag;
};

struct Ctx {
    const Backend& R;
    const ReduceBudget& budget;
    const std::function<bool(const std::vector<BasicLeaf>&)>& cb;
    long long branches = 0;
};

bool process(Ctx& ctx, std::vector<Leaf> pending, std::vector<BasicLeaf> done);

// Branch over nonempty subsets T of the templates plus distributions of the
// Eq values (factorizations) and Geq thresholds (minimal capped products)
// across the members of T. A member whose shares are all 1 is redundant
// (already covered by the smaller subset), so such combinations are skipped;
// this caps |T| by sum(floor log2 H_i) + sum(ceil log2 E_k).
bool branch_over(Ctx& ctx, const Leaf& leaf, const std::vector<Leaf>& rest,
                 const std::vector<BasicLeaf>& done, const std::vector<LeafTemplate>& templates) {
    const StarSentence& s = leaf.star;
    int bound = 0;
    for (const auto& [p, h] : s.eqs) bound += floor_log2(h);
    for (const auto& [p, e] : s.geqs) bound += ceil_log2(e);
    int maxm = std::min<int>(bound, (int)templates.size());

    std::vector<int> subset;
    for (int m = 1; m <= maxm; ++m) {
        subset.assign(m, 0);
        std::function<bool(int, int)> pick = [&](int slot, int from) -> bool {
            if (slot == m) {
                // distributions over the chosen subset
                std::vector<std::vector<std::vector<long long>>> choices;
                for (const auto& [p, h] : s.eqs) choices.push_back(eq_distributions(h, m));
                for (const auto& [p, e] : s.geqs) choices.push_back(geq_distributions(e, m));
                std::vector<const std::vector<long long>*> pickd(choices.size());
                std::function<bool(size_t)> walk = [&](size_t ci) -> bool {
                    if (ci == choices.size()) {
                        size_t t = s.eqs.size();
                        for (int j = 0; j < m; ++j) {
                            bool trivial = true;
                            for (size_t i = 0; i < choices.size() && trivial; ++i)
                                if ((*pickd[i])[j] != 1) trivial = false;
                            if (trivial) return false; // redundant member
                        }
                        std::vector<Leaf> next = rest;
                        for (int j = 0; j < m; ++j) {
                            const LeafTemplate& tp = templates[subset[j]];
                            StarSentence ls;
                            for (size_t i = 0; i < s.eqs.size(); ++i) {
                                PPPair np = tp.map_pair(s.eqs[i].first);
                                long long v = (*pickd[i])[j];
                                if (v >= 2) {
                                    ls.eqs.emplace_back(std::move(np), v);
                                } else {
                                    ls.ones.push_back(std::move(np));
                                }
                            }
                            for (const auto& p : s.ones) ls.ones.push_back(tp.map_pair(p));
                            for (size_t k = 0; k < s.geqs.size(); ++k) {
                                long long v = (*pickd[t + k])[j];
                                if (v >= 2) ls.geqs.emplace_back(tp.map_pair(s.geqs[k].first), v);
                            }
                            for (const auto& p : tp.extra_ones) ls.ones.push_back(p);
                            for (const auto& ge : tp.extra_geqs) ls.geqs.push_back(ge);
                            next.push_back({std::move(ls), leaf.note + " " + tp.tag, leaf.iters});
                        }
                        return process(ctx, std::move(next), done);
                    }
                    for (const auto& d : choices[ci]) {
                        pickd[ci] = &d;
                        if (walk(ci + 1)) return true;
                    }
                    return false;
                };
                return walk(0);
            }
            for (int i = from; i < (int)templates.size(); ++i) {
                subset[slot] = i;
                if (pick(slot + 1, i + 1)) return true;
            }
            return false;
        };
        if (pick(0, 0)) return true;
    }
    return false;
}

// Templates for the comparison-set phases: one per total quasi-order on
// sigma, replacing each formula by its greatest summand (sum phase) or each
// conjunction by its least atom (conjunction phase), plus the ordering
// side conditions between chain neighbours.
std::vector<LeafTemplate> partition_templates(const Backend& R, const std::vector<PPFormula>& sigma,
                                              bool sum_phase, const ReduceBudget& budget) {
    int n = (int)sigma.size();
    if (n > budget.max_sigma)
        throw std::runtime_error("reduce: comparison set of size " + std::to_string(n) +
                                 " exceeds --max-sigma " + std::to_string(budget.max_sigma));
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[formula_to_string(R, sigma[i])] = i;

    std::vector<LeafTemplate> out;
    for (const auto& labels : quasi_orders(n)) {
        LeafTemplate tp;
        int blocks = *std::max_element(labels.begin(), labels.end()) + 1;
        // ordering side conditions along a chain through the blocks
        std::vector<std::vector<int>> by_block(blocks);
        for (int i = 0; i < n; ++i) by_block[labels[i]].push_back(i);
        for (int b = 0; b < blocks; ++b)
            for (size_t i = 0; i + 1 < by_block[b].size(); ++i) {
                const PPFormula &x = sigma[by_block[b][i]], &y = sigma[by_block[b][i + 1]];
                tp.extra_ones.push_back({x, y});
                tp.extra_ones.push_back({y, x});
            }
        for (int b = 0; b + 1 < blocks; ++b) {
            const PPFormula &hi = sigma[by_block[b][0]], &lo = sigma[by_block[b + 1][0]];
            tp.extra_geqs.push_back({{hi, lo}, 2});
            tp.extra_ones.push_back({lo, hi});
        }
        tp.tag = "order";
        for (int l : labels) tp.tag += std::to_string(l);
        tp.map_pair = [&R, labels, index, sum_phase, sigma_copy = sigma](const PPPair& p) {
            auto map_formula = [&](const PPFormula& f) -> PPFormula {
                if (sum_phase) {
                    // keep the greatest summand (smallest block label)
                    int best = -1, best_label = 1 << 30;
                    for (size_t i = 0; i < f.sum.size(); ++i) {
                        PPFormula one{{f.sum[i]}};
                        int idx = index.at(formula_to_string(R, one));
                        if (labels[idx] < best_label) {
                            best_label = labels[idx];
                            best = (int)idx;
                        }
                    }
                    return sigma_copy[best];
                }
                // keep the least atom (largest block label)
                int best = -1, best_label = -1;
                for (const Atom& a : f.sum[0]) {
                    PPFormula one = PPFormula::atom(a);
                    int idx = index.at(formula_to_string(R, one));
                    if (labels[idx] > best_label) {
                        best_label = labels[idx];
                        best = idx;
                    }
                }
                return sigma_copy[best];
            };
            return PPPair{map_formula(p.phi), map_formula(p.psi)};
        };
        out.push_back(std::move(tp));
    }
    return out;
}

// Sign-splitting phase for the existential atoms: one template per sign
// assignment on the Tuganbaev elements, rewriting each atom accordingly and
// recording the sign as an extra forced-1 pair.
std::vector<LeafTemplate> sign_templates(const Backend& R, const StarSentence& s) {
    struct Wit {
        FieldElt alpha;
        FieldElt aux; // r for exists-pair, s for div-prod
        bool from_exists;
    };
    std::map<std::string, Wit> wits; // keyed by printed alpha
    auto visit = [&](const PPPair& p) {
        for (const PPFormula* f : {&p.phi, &p.psi})
            for (const auto& conj : f->sum)
                for (const Atom& a : conj) {
                    if (a.kind == Atom::ExistsPair) {
                        auto [alpha, r, sw] = R.tuganbaev(a.y, a.x);
                        (void)sw;
                        wits.emplace(R.print(alpha), Wit{alpha, r, true});
                    } else if (a.kind == Atom::DivProd) {
                        auto [alpha, r, sw] = R.tuganbaev(a.y, a.x);
                        (void)r;
                        wits.emplace(R.print(alpha), Wit{alpha, sw, false});
                    }
                }
    };
    for (const auto& [p, h] : s.eqs) visit(p);
    for (const auto& p : s.ones) visit(p);
    for (const auto& [p, e] : s.geqs) visit(p);

    std::vector<std::string> keys;
    for (const auto& [k, w] : wits) keys.push_back(k);

    std::vector<LeafTemplate> out;
    for (size_t mask = 0; mask < (size_t(1) << keys.size()); ++mask) {
        std::map<std::string, bool> plus; // sign +1 per alpha
        for (size_t i = 0; i < keys.size(); ++i) plus[keys[i]] = (mask >> i) & 1;
        LeafTemplate tp;
        tp.tag = "signs";
        for (size_t i = 0; i < keys.size(); ++i) tp.tag += plus[keys[i]] ? "+" : "-";
        for (const auto& [k, w] : wits) {
            bool pos = plus[k];
            if (w.from_exists) {
                // x alpha = 0 / x = 0  or  x (alpha-1) = 0 / x = 0
                FieldElt e = pos ? w.alpha : R.sub(w.alpha, R.one());
                tp.extra_ones.push_back({PPFormula::atom(Atom::ann(e)), PPFormula::bot()});
            } else {
                // x=x / beta | x  or  x=x / (beta-1) | x
                FieldElt e = pos ? w.alpha : R.sub(w.alpha, R.one());
                tp.extra_ones.push_back({PPFormula::top(), PPFormula::atom(Atom::divides(e))});
            }
        }
        tp.map_pair = [&R, plus](const PPPair& p) {
            auto map_formula = [&](const PPFormula& f) -> PPFormula {
                const Atom& a = f.sum[0][0];
                if (a.kind == Atom::ExistsPair) {
                    auto [alpha, r, sw] = R.tuganbaev(a.y, a.x);
                    (void)sw;
                    if (plus.at(R.print(alpha))) return PPFormula::bot();
                    return PPFormula{{{Atom::divides(a.x), Atom::ann(r)}}};
                }
                if (a.kind == Atom::DivProd) {
                    auto [alpha, r, sw] = R.tuganbaev(a.y, a.x);
                    (void)r;
                    if (plus.at(R.print(alpha))) return PPFormula{{{Atom::divides(sw)}, {Atom::ann(a.y)}}};
                    return PPFormula::top();
                }
                return f;
            };
            return PPPair{map_formula(p.phi), map_formula(p.psi)};
        };
        out.push_back(std::move(tp));
    }
    return out;
}

} // namespace

PPPair rewrite_pair_shape(const Backend& R, const PPPair& p) {
    const Atom& phi = p.phi.sum[0][0];
    const Atom& psi = p.psi.sum[0][0];
    if (phi.kind == Atom::Ann && psi.kind == Atom::Ann)
        return {PPFormula::atom(Atom::exists_pair(psi.x, phi.x)), PPFormula::bot()};
    if (phi.kind == Atom::Divides && psi.kind == Atom::Divides)
        return {PPFormula::top(), PPFormula::atom(Atom::divprod(psi.x, phi.x))};
    if (phi.kind == Atom::Divides && psi.kind == Atom::Ann)
        return {PPFormula::top(), PPFormula::atom(Atom::ann(R.mul(phi.x, psi.x)))};
    if (phi.kind == Atom::Divides && psi.kind == Atom::Bot)
        return {PPFormula::top(), PPFormula::atom(Atom::ann(phi.x))};
    return p; // already basic
}

namespace {

bool transform_leaf(Ctx& ctx, const Leaf& leaf, const std::vector<Leaf>& rest,
                    const std::vector<BasicLeaf>& done) {
    const StarSentence& s = leaf.star;
    if (s.eqs.empty() && s.geqs.empty())
        return process(ctx, rest, done); // forced-1 pairs alone: the zero module

    auto each_pair = [&](const std::function<void(const PPPair&)>& fn) {
        for (const auto& [p, h] : s.eqs) fn(p);
        for (const auto& p : s.ones) fn(p);
        for (const auto& [p, e] : s.geqs) fn(p);
    };

    bool multi_sum = false, multi_conj = false, has_exist = false;
    each_pair([&](const PPPair& p) {
        for (const PPFormula* f : {&p.phi, &p.psi}) {
            if (f->sum.size() > 1) multi_sum = true;
            for (const auto& conj : f->sum) {
                if (conj.size() > 1) multi_conj = true;
                for (const Atom& a : conj)
                    if (a.kind == Atom::ExistsPair || a.kind == Atom::DivProd) has_exist = true;
            }
        }
    });

    if (multi_sum || multi_conj) {
        std::vector<PPFormula> sigma;
        std::map<std::string, int> seen;
        each_pair([&](const PPPair& p) {
            for (const PPFormula* f : {&p.phi, &p.psi}) {
                if (multi_sum) {
                    for (const auto& conj : f->sum) {
                        PPFormula one{{conj}};
                        if (seen.emplace(formula_to_string(ctx.R, one), (int)sigma.size()).second)
                            sigma.push_back(std::move(one));
                    }
                } else {
                    for (const Atom& a : f->sum[0]) {
                        PPFormula one = PPFormula::atom(a);
                        if (seen.emplace(formula_to_string(ctx.R, one), (int)sigma.size()).second)
                            sigma.push_back(std::move(one));
                    }
                }
            }
        });
        auto templates = partition_templates(ctx.R, sigma, multi_sum, ctx.budget);
        return branch_over(ctx, leaf, rest, done, templates);
    }

    if (has_exist) {
        auto templates = sign_templates(ctx.R, s);
        return branch_over(ctx, leaf, rest, done, templates);
    }

    // all pairs are single atoms of plain shapes: rewrite to basic form
    StarSentence r;
    for (const auto& [p, h] : s.eqs) r.eqs.emplace_back(rewrite_pair_shape(ctx.R, p), h);
    for (const auto& p : s.ones) r.ones.push_back(rewrite_pair_shape(ctx.R, p));
    for (const auto& [p, e] : s.geqs) r.geqs.emplace_back(rewrite_pair_shape(ctx.R, p), e);
    std::vector<Leaf> next = rest;
    next.push_back({std::move(r), leaf.note + " shapes", leaf.iters});
    return process(ctx, std::move(next), done);
}

bool process(Ctx& ctx, std::vector<Leaf> pending, std::vector<BasicLeaf> done) {
    while (!pending.empty()) {
        Leaf leaf = std::move(pending.back());
        pending.pop_back();
        if (++leaf.iters > ctx.budget.max_iters)
            throw std::runtime_error("reduce: rewriting iteration cap exceeded");
        auto simp = simplify_star(ctx.R, leaf.star);
        if (!simp) return false; // contradictory leaf kills the branch
        if (auto b = star_to_basic(ctx.R, *simp)) {
            done.push_back({std::move(*b), leaf.note});
            continue;
        }
        return transform_leaf(ctx, Leaf{std::move(*simp), leaf.note, leaf.iters}, pending, done);
    }
    if (++ctx.branches > ctx.budget.max_branches)
        throw std::runtime_error("reduce: branch budget exceeded");
    return ctx.cb(done);
}

} // namespace

bool reduce_for_each(const Backend& R, const StarSentence& s, const ReduceBudget& budget,
                     const std::function<bool(const std::vector<BasicLeaf>&)>& cb) {
    Ctx ctx{R, budget, cb};
    return process(ctx, {Leaf{s, "", 0}}, {});
}

LeafDNF reduce_to_basic(const Backend& R, const StarSentence& s, const ReduceBudget& budget) {
    LeafDNF out;
    reduce_for_each(R, s, budget, [&](const std::vector<BasicLeaf>& branch) {
        out.branches.push_back(branch);
        return false;
    });
    return out;
}

} // namespace invsat
