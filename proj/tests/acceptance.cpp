// Acceptance gate: one pass/fail line per criterion. Time limits and search
// bounds are pinned here; a FAIL line carries the first counterexample found.
#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "invsat/engine.hpp"
#include "invsat/finite_module.hpp"
#include "support/gen.hpp"
#include "support/model_search.hpp"

using namespace invsat;
using namespace invsat::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt_secs(double s) {
    std::ostringstream ss;
    ss.precision(2);
    ss << std::fixed << s << "s";
    return ss.str();
}

const std::vector<std::string> kAllRings = {"local:3", "local:5", "local:4", "twovalued:3",
                                            "twovalued:5"};

// An element with the given valuation at every maximal ideal.
FieldElt const_val_elt(const Backend& R, const Rat& v) {
    return R.element_of_values(std::vector<Rat>(R.max_ideal_ids().size(), v));
}

MICondition random_cond(const Backend& R, std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> d(0, depth > 0 ? 5 : 2);
    switch (d(rng)) {
    case 0: return MICondition::yes();
    case 1: return MICondition::no();
    case 2: return MICondition::in(random_ring_elt(R, rng));
    case 3: return MICondition::negate(random_cond(R, rng, depth - 1));
    case 4:
        return MICondition::all({random_cond(R, rng, depth - 1), random_cond(R, rng, depth - 1)});
    default:
        return MICondition::any({random_cond(R, rng, depth - 1), random_cond(R, rng, depth - 1)});
    }
}

// ---------------------------------------------------------------- criterion 1

Outcome criterion1() {
    const double limit = 30.0;
    auto t0 = Clock::now();
    std::mt19937 rng(9001);
    for (const auto& name : kAllRings) {
        Backend R = Backend::from_string(name);
        for (int i = 0; i < 500; ++i) {
            FieldElt a = random_ring_elt(R, rng), b = random_ring_elt(R, rng);
            auto [alpha, r, s] = R.tuganbaev(a, b);
            bool ok = R.in_ring(alpha) && R.in_ring(r) && R.in_ring(s) &&
                      R.eq(R.mul(b, alpha), R.mul(a, s)) &&
                      R.eq(R.mul(a, R.sub(alpha, R.one())), R.mul(b, r));
            if (!ok)
                return {false, "identity broken on " + name + " for a=" + R.print(a) +
                                   ", b=" + R.print(b)};
        }
    }
    double dt = seconds_since(t0);
    if (dt >= limit) return {false, "identities hold but runtime " + fmt_secs(dt) + " >= 30s"};
    return {true, "500 pairs x 5 rings, both identities exact, " + fmt_secs(dt)};
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion2() {
    std::mt19937 rng(9002);
    for (const auto& name : kAllRings) {
        Backend R = Backend::from_string(name);
        for (int i = 0; i < 500; ++i) {
            FieldElt a = random_nonzero_ring_elt(R, rng), b = random_nonzero_ring_elt(R, rng);
            if (divides_via_dpr(R, a, b) != R.divides(a, b))
                return {false, "disagreement on " + name + " for a=" + R.print(a) +
                                   ", b=" + R.print(b)};
        }
    }
    return {true, "divisibility through the DPR oracle matches valuations, 500 pairs x 5 rings"};
}

// ---------------------------------------------------------------- criterion 3

Outcome criterion3() {
    Backend R = Backend::from_string("local:5");
    std::vector<FieldElt> elts;
    for (const Rat& v : value_grid()) elts.push_back(const_val_elt(R, v));

    std::vector<PPPair> pairs;
    for (const auto& a : elts)
        for (const auto& b : elts) {
            pairs.push_back({PPFormula::atom(Atom::ann(a)), PPFormula::atom(Atom::ann(b))});
            pairs.push_back({PPFormula::atom(Atom::divides(a)), PPFormula::atom(Atom::divides(b))});
            pairs.push_back({PPFormula::atom(Atom::divides(a)), PPFormula::atom(Atom::ann(b))});
        }
    for (const auto& a : elts) pairs.push_back({PPFormula::atom(Atom::divides(a)), PPFormula::bot()});

    long long checked = 0;
    for (int copies = 1; copies <= 4; ++copies) { // |M| = 5^copies <= 5^4
        FiniteModule M = semisimple_module(R, {copies});
        for (const auto& p : pairs) {
            PPPair q = rewrite_pair_shape(R, p);
            if (eval_invariant_finite(M, p) != eval_invariant_finite(M, q))
                return {false, "rewrite changed the invariant of " + pair_to_string(R, p) +
                                   " on (R/m)^" + std::to_string(copies)};
            ++checked;
        }
    }
    return {true, "all four rewrite shapes invariant-equal on semisimple modules, " +
                      std::to_string(checked) + " checks"};
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion4() {
    long long checked = 0;
    for (const char* name : {"local:5", "twovalued:3"}) {
        Backend R = Backend::from_string(name);
        std::vector<FieldElt> elts;
        for (const Rat& v : value_grid()) elts.push_back(const_val_elt(R, v));
        std::vector<FieldElt> with_zero = elts;
        with_zero.push_back(R.zero());

        std::vector<BasicPair> pairs;
        for (const auto& b : with_zero)
            for (const auto& c : with_zero) pairs.push_back(BasicPair::ann_over_div(b, c));
        for (const auto& d : elts) pairs.push_back(BasicPair::top_over_ann(d));

        for (MaxIdealId m : R.max_ideal_ids()) {
            std::vector<std::pair<FamilyTag, UniserialDesc>> fams;
            for (const auto& g : elts) {
                FamilyTag sg;
                sg.kind = FamilyTag::Sgamma;
                sg.gamma = g;
                fams.push_back({sg, desc_n_gamma(m, R.valuation(m, g))});
                for (const auto& e : elts) {
                    if (!R.in_ideal(m, g) || !R.in_ideal(m, e)) continue;
                    FamilyTag sp;
                    sp.kind = FamilyTag::Sprime;
                    sp.beta = g;
                    sp.eta = e;
                    fams.push_back({sp, desc_n_prime(m, R.valuation(m, g) + R.valuation(m, e))});
                }
            }
            FamilyTag tf;
            tf.kind = FamilyTag::Tfam;
            tf.beta = tf.eta = R.one();
            fams.push_back({tf, desc_residue_field(m)});

            for (const auto& [fam, desc] : fams)
                for (const auto& pr : pairs) {
                    InvariantValue v = uniserial_invariant(R, desc, pr);
                    bool closed = mi_holds(R, m, delta_f_atom(R, fam, pr, PairMode::Closed));
                    bool minimal = mi_holds(R, m, delta_f_atom(R, fam, pr, PairMode::Minimal));
                    bool open_nm = mi_holds(R, m, delta_f_atom(R, fam, pr, PairMode::OpenNotMinimal));
                    bool ok = closed == (v.kind == InvariantValue::One) &&
                              minimal == (v.kind == InvariantValue::Q) &&
                              open_nm == (v.kind == InvariantValue::Infinite);
                    if (!ok)
                        return {false, std::string("classification mismatch on ") + name +
                                           " for " + basic_to_string(R, pr)};
                    ++checked;
                }
        }
    }
    return {true, "One/Q/Infinite classification matches the membership conditions, " +
                      std::to_string(checked) + " checks"};
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion5() {
    std::mt19937 rng(9005);
    for (const char* name : {"local:5", "local:4", "twovalued:3", "twovalued:5"}) {
        Backend R = Backend::from_string(name);
        std::vector<MICondition> conds;
        for (int i = 0; i < 50; ++i) conds.push_back(random_cond(R, rng, 2));
        for (int p : {2, 3, 5})
            for (int n = 1; n <= 6; ++n)
                for (size_t ci = 0; ci < conds.size(); ++ci)
                    if (pp0(R, p, n, conds[ci]) != pp0_direct(R, p, n, conds[ci]))
                        return {false, std::string("pp0 mismatch on ") + name + " at p=" +
                                           std::to_string(p) + ", n=" + std::to_string(n) +
                                           ", condition #" + std::to_string(ci)};
    }
    return {true, "composition enumeration equals direct evaluation, p in {2,3,5}, n <= 6, "
                  "50 conditions x 4 rings"};
}

// ---------------------------------------------------------------- criterion 6

struct FamilyInstance {
    FamilyTag tag;
    std::string label;
};

InvariantValue family_value(const Backend& R, const FamilyTag& fam, MaxIdealId m,
                            const BasicPair& pr) {
    UniserialDesc d;
    switch (fam.kind) {
    case FamilyTag::Sgamma: d = desc_n_gamma(m, R.valuation(m, fam.gamma)); break;
    case FamilyTag::Sprime:
        d = desc_n_prime(m, R.valuation(m, fam.beta) + R.valuation(m, fam.eta));
        break;
    case FamilyTag::Tfam: d = desc_residue_field(m); break;
    }
    return uniserial_invariant(R, d, pr);
}

bool family_usable_at(const Backend& R, const FamilyTag& fam, MaxIdealId m) {
    if (fam.kind == FamilyTag::Sgamma) return true;
    return R.in_ideal(m, fam.beta) && R.in_ideal(m, fam.eta);
}

// Exhaustive search over direct sums (+) N(m)^{c_m} with sum c_m = w (every
// residue degree is 1 on the two-valued rings).
bool brute_family(const Backend& R, const FamilyTag& fam, int w,
                  const std::vector<std::pair<BasicPair, int>>& eqs,
                  const std::vector<BasicPair>& ones,
                  const std::vector<std::pair<BasicPair, int>>& geqs) {
    auto ids = R.max_ideal_ids();
    std::vector<int> counts(ids.size(), 0);
    std::function<bool(size_t, int)> rec = [&](size_t i, int rem) {
        if (i == ids.size()) {
            if (rem != 0) return false;
            auto value_ok = [&](const BasicPair& pr, bool exact, long long target) {
                long long q_count = 0;
                bool inf = false;
                for (size_t j = 0; j < ids.size(); ++j) {
                    if (counts[j] == 0) continue;
                    InvariantValue v = family_value(R, fam, ids[j], pr);
                    if (v.kind == InvariantValue::Q) q_count += counts[j];
                    if (v.kind == InvariantValue::Infinite) inf = true;
                }
                if (exact) return !inf && q_count == target;
                return inf || q_count >= target;
            };
            for (const auto& [pr, n] : eqs)
                if (!value_ok(pr, true, n)) return false;
            for (const auto& pr : ones)
                if (!value_ok(pr, true, 0)) return false;
            for (const auto& [pr, l] : geqs)
                if (!value_ok(pr, false, l)) return false;
            return true;
        }
        int hi = family_usable_at(R, fam, ids[i]) ? rem : 0;
        for (counts[i] = 0; counts[i] <= hi; ++counts[i])
            if (rec(i + 1, rem - counts[i])) return true;
        counts[i] = 0;
        return false;
    };
    bool found = rec(0, w);
    std::fill(counts.begin(), counts.end(), 0);
    return found;
}

bool witness_matches_family_query(const Backend& R, const std::vector<WitnessEntry>& entries,
                                  int w, const std::vector<std::pair<BasicPair, int>>& eqs,
                                  const std::vector<BasicPair>& ones,
                                  const std::vector<std::pair<BasicPair, int>>& geqs) {
    long long degree = 0;
    for (const auto& e : entries) degree += e.mult * R.residue_size(e.desc.ideal_id).second;
    if (degree != w) return false;
    auto value_ok = [&](const BasicPair& pr, bool exact, long long target) {
        long long q_count = 0;
        bool inf = false;
        for (const auto& e : entries) {
            InvariantValue v = uniserial_invariant(R, e.desc, pr);
            if (v.kind == InvariantValue::Q) q_count += e.mult;
            if (v.kind == InvariantValue::Infinite) inf = true;
        }
        if (exact) return !inf && q_count == target;
        return inf || q_count >= target;
    };
    for (const auto& [pr, n] : eqs)
        if (!value_ok(pr, true, n)) return false;
    for (const auto& pr : ones)
        if (!value_ok(pr, true, 0)) return false;
    for (const auto& [pr, l] : geqs)
        if (!value_ok(pr, false, l)) return false;
    return true;
}

Outcome criterion6() {
    const double limit = 300.0;
    auto t0 = Clock::now();
    long long checked = 0;
    for (const char* name : {"twovalued:3", "twovalued:5"}) {
        Backend R = Backend::from_string(name);
        int p = R.residue_size(R.max_ideal_ids()[0]).first;
        auto e = [&](const Rat& v0, const Rat& vi) {
            return R.element_of_values({v0, vi});
        };
        std::vector<FieldElt> sweep; // one-coordinate sweeps across the full grid
        for (const Rat& v : value_grid()) sweep.push_back(e(v, Rat(0)));
        for (const Rat& v : value_grid())
            if (v != Rat(0)) {
                sweep.push_back(e(Rat(0), v));
                sweep.push_back(e(v, v));
            }
        std::vector<FieldElt> small{e(Rat(0), Rat(0)), e(Rat(1), Rat(0)), e(Rat(0), Rat(1)),
                                    e(Rat(1), Rat(1)), e(Rat(1, 2), Rat(3, 2))};

        std::vector<FamilyInstance> fams;
        for (const auto& g : sweep) {
            FamilyTag t;
            t.kind = FamilyTag::Sgamma;
            t.gamma = g;
            fams.push_back({t, "S(" + R.print(g) + ")"});
        }
        for (const auto& b : small)
            for (const auto& h : small) {
                FamilyTag t;
                t.kind = FamilyTag::Sprime;
                t.beta = b;
                t.eta = h;
                fams.push_back({t, "S'"});
            }
        for (const auto& b : {e(Rat(1), Rat(1)), e(Rat(1), Rat(0))}) {
            FamilyTag t;
            t.kind = FamilyTag::Tfam;
            t.beta = t.eta = b;
            fams.push_back({t, "T"});
        }

        std::vector<BasicPair> pairs;
        for (const auto& d : sweep) pairs.push_back(BasicPair::top_over_ann(d));
        for (const auto& b : small)
            for (const auto& c : small) pairs.push_back(BasicPair::ann_over_div(b, c));
        for (const auto& b : small) pairs.push_back(BasicPair::ann_over_div(b, R.zero()));

        Engine eng(R);
        auto check = [&](const FamilyInstance& fi, int w,
                         const std::vector<std::pair<BasicPair, int>>& eqs,
                         const std::vector<BasicPair>& ones,
                         const std::vector<std::pair<BasicPair, int>>& geqs)
            -> std::optional<std::string> {
            auto got = eng.prop58(fi.tag, p, w, eqs, ones, geqs);
            bool expect = brute_family(R, fi.tag, w, eqs, ones, geqs);
            if (got.has_value() != expect)
                return std::string(name) + " " + fi.label + " w=" + std::to_string(w) +
                       ": prop58=" + (got ? "yes" : "no") + " brute=" + (expect ? "yes" : "no");
            if (got && !witness_matches_family_query(R, *got, w, eqs, ones, geqs))
                return std::string(name) + " " + fi.label + " w=" + std::to_string(w) +
                       ": prop58 witness fails its own constraints";
            ++checked;
            return std::nullopt;
        };

        for (const auto& fi : fams)
            for (const auto& pr : pairs) {
                for (int w = 1; w <= 4; ++w)
                    for (int n = 0; n <= w; ++n)
                        if (auto err = check(fi, w, {{pr, n}}, {}, {})) return {false, *err};
                for (int w : {1, 2})
                    if (auto err = check(fi, w, {}, {pr}, {})) return {false, *err};
                for (auto [l, w] : {std::pair{1, 1}, {2, 2}, {3, 2}})
                    if (auto err = check(fi, w, {}, {}, {{pr, l}})) return {false, *err};
            }
    }
    double dt = seconds_since(t0);
    if (dt >= limit)
        return {false, "agreement holds but runtime " + fmt_secs(dt) + " >= 5min"};
    return {true, "prop58 equals exhaustive direct-sum enumeration, " + std::to_string(checked) +
                      " queries, " + fmt_secs(dt)};
}

// ------------------------------------------------- criteria 7 and 9 (shared)

struct DecideRecord {
    std::string ring, sentence;
    double secs = 0;
    std::vector<std::string> trace;
};

std::vector<DecideRecord> g_corpus_records;

FieldElt grid_scalar(const Backend& R, std::mt19937& rng) {
    auto grid = value_grid();
    std::uniform_int_distribution<size_t> pick(0, grid.size() - 1);
    std::vector<Rat> vals;
    for (size_t m = 0; m < R.max_ideal_ids().size(); ++m) vals.push_back(grid[pick(rng)]);
    return R.element_of_values(vals);
}

BasicPair random_basic_pair(const Backend& R, std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
    case 0: return BasicPair::top_over_ann(grid_scalar(R, rng));
    case 1: return BasicPair::ann_over_div(grid_scalar(R, rng), R.zero());
    default: return BasicPair::ann_over_div(grid_scalar(R, rng), grid_scalar(R, rng));
    }
}

Outcome criterion7() {
    const double limit = 600.0;
    auto t0 = Clock::now();
    std::mt19937 rng(9007);
    std::uniform_int_distribution<int> nconj(1, 3), val(2, 25), which(0, 2);
    g_corpus_records.clear();
    int sat_count = 0, unsat_count = 0;
    for (const auto& name : kAllRings) {
        Backend R = Backend::from_string(name);
        for (int i = 0; i < 200; ++i) {
            BasicStar bs;
            int n = nconj(rng);
            for (int c = 0; c < n; ++c) {
                BasicPair pr = random_basic_pair(R, rng);
                switch (which(rng)) {
                case 0: bs.eqs.push_back({pr, val(rng)}); break;
                case 1: bs.ones.push_back(pr); break;
                default: bs.geqs.push_back({pr, val(rng)}); break;
                }
            }
            StarSentence star = basic_to_star(bs);
            Engine eng(R);
            auto s0 = Clock::now();
            DecideResult r = eng.decide_star(star);
            DecideRecord rec{name, basic_star_to_string(R, bs), seconds_since(s0), r.trace};
            g_corpus_records.push_back(rec);
            if (r.sat) {
                ++sat_count;
                if (!verify_witness(R, star, r.witness))
                    return {false, "SAT witness rejected on " + name + " for " + rec.sentence};
            } else {
                ++unsat_count;
                if (auto model = bounded_model_search(R, star))
                    return {false, "UNSAT verdict refuted by bounded search on " + name +
                                       " for " + rec.sentence};
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= limit)
        return {false, "verdicts sound but runtime " + fmt_secs(dt) + " >= 10min"};
    return {true, "200 sentences x 5 rings: " + std::to_string(sat_count) +
                      " SAT verified, " + std::to_string(unsat_count) +
                      " UNSAT unrefuted (<= 4 summands, mult <= 25), " + fmt_secs(dt)};
}

// ---------------------------------------------------------------- criterion 8

// Scalars come from a small per-sentence pool so that atoms repeat across
// formulas; otherwise the comparison set of the reduction grows past any
// workable cap (the template count is the ordered Bell number of its size).
Atom random_atom(const std::vector<FieldElt>& pool, std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    switch (kind(rng)) {
    case 0: return Atom::top();
    case 1: return Atom::bot();
    case 2: return Atom::divides(pool[pick(rng)]);
    case 3: return Atom::ann(pool[pick(rng)]);
    case 4: return Atom::divprod(pool[pick(rng)], pool[pick(rng)]);
    default: return Atom::exists_pair(pool[pick(rng)], pool[pick(rng)]);
    }
}

PPFormula random_formula(const std::vector<FieldElt>& pool, std::mt19937& rng) {
    std::uniform_int_distribution<int> count(1, 2);
    PPFormula f;
    int summands = count(rng);
    for (int s = 0; s < summands; ++s) {
        std::vector<Atom> conj;
        int atoms = count(rng);
        for (int a = 0; a < atoms; ++a) conj.push_back(random_atom(pool, rng));
        f.sum.push_back(std::move(conj));
    }
    return f;
}

// A sentence whose reduction exceeds the comparison-set or branch budget is
// reported by the solver as an explicit error, never a verdict; such draws
// are counted and skipped here, and 50 decided sentences are still
// required. (An unbounded comparison set is out of
// reach by construction: the reduction enumerates one template per total
// quasi-order of the set, an ordered-Bell-number blowup.)
Outcome criterion8() {
    const double limit = 600.0;
    auto t0 = Clock::now();
    std::mt19937 rng(9008);
    std::uniform_int_distribution<int> nconj(1, 2), val(2, 25), which(0, 2);
    int sat_count = 0, unsat_count = 0, budget_outs = 0;
    for (const char* name : {"local:5", "twovalued:3"}) {
        Backend R = Backend::from_string(name);
        int decided = 0, attempts = 0;
        while (decided < 25) {
            if (++attempts > 500)
                return {false, std::string("only ") + std::to_string(decided) +
                                   " of 25 sentences decided within budget on " + name};
            std::vector<FieldElt> pool{grid_scalar(R, rng), grid_scalar(R, rng)};
            StarSentence star;
            int n = nconj(rng);
            for (int c = 0; c < n; ++c) {
                PPPair pr{random_formula(pool, rng), random_formula(pool, rng)};
                switch (which(rng)) {
                case 0: star.eqs.push_back({pr, val(rng)}); break;
                case 1: star.ones.push_back(pr); break;
                default: star.geqs.push_back({pr, val(rng)}); break;
                }
            }
            EngineBudget budget;
            budget.reduce.max_sigma = 6;
            budget.reduce.max_branches = 20000; // keep pathological draws fast to reject
            Engine eng(R, budget);
            DecideResult r;
            try {
                r = eng.decide_star(star);
            } catch (const std::runtime_error&) {
                ++budget_outs; // reduction budget exhausted: an error, not a verdict
                continue;
            }
            ++decided;
            if (r.sat) {
                ++sat_count;
                if (!verify_witness(R, star, r.witness))
                    return {false, std::string("SAT witness rejected on ") + name + " for " +
                                       star_to_string(R, star)};
            } else {
                ++unsat_count;
                if (auto model = bounded_model_search(R, star))
                    return {false, std::string("UNSAT verdict refuted by bounded search on ") +
                                       name + " for " + star_to_string(R, star)};
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= limit)
        return {false, "verdicts sound but runtime " + fmt_secs(dt) + " >= 10min"};
    return {true, "50 general sentences decided: " + std::to_string(sat_count) +
                      " SAT verified, " + std::to_string(unsat_count) +
                      " UNSAT unrefuted, " + std::to_string(budget_outs) +
                      " draws exceeded the reduction budget and were skipped, " + fmt_secs(dt)};
}

// ---------------------------------------------------------------- criterion 9

std::optional<std::pair<int, long long>> parse_trace_exponent(const std::string& line) {
    int depth;
    long long exp;
    if (std::sscanf(line.c_str(), "depth=%d exponent=%lld", &depth, &exp) == 2)
        return std::pair{depth, exp};
    return std::nullopt;
}

Outcome criterion9() {
    if (g_corpus_records.empty()) return {false, "no corpus traces recorded (criterion 7 did not run)"};
    const double per_sentence = 10.0;
    long long edges = 0;
    for (const auto& rec : g_corpus_records) {
        if (rec.secs >= per_sentence)
            return {false, "decide took " + fmt_secs(rec.secs) + " on " + rec.ring + " for " +
                               rec.sentence};
        std::map<int, long long> last_exp;
        for (const auto& line : rec.trace) {
            auto pe = parse_trace_exponent(line);
            if (!pe) continue;
            auto [depth, exp] = *pe;
            if (depth > 0) {
                auto it = last_exp.find(depth - 1);
                if (it == last_exp.end() || exp >= it->second)
                    return {false, "exponent not strictly decreasing at depth " +
                                       std::to_string(depth) + " for " + rec.sentence};
                ++edges;
            }
            last_exp[depth] = exp;
        }
    }
    return {true, std::to_string(g_corpus_records.size()) + " traces, " + std::to_string(edges) +
                      " recursion edges strictly decreasing, every decide < 10s"};
}

// --------------------------------------------------------------- criterion 10

Outcome criterion10() {
    struct RingSpec {
        const char* name;
        int p, k;
    };
    long long checked = 0;
    for (RingSpec rs : {RingSpec{"twovalued:2", 2, 1}, {"twovalued:3", 3, 1},
                        {"twovalued:4", 2, 2}, {"twovalued:9", 3, 2}}) {
        Backend R = Backend::from_string(rs.name);
        auto e = [&](const Rat& v0, const Rat& vi) {
            return R.element_of_values({v0, vi});
        };
        std::vector<FieldElt> elts{R.zero(), e(Rat(0), Rat(0)), e(Rat(1), Rat(0)),
                                   e(Rat(0), Rat(1)), e(Rat(1), Rat(1))};
        std::vector<std::vector<FieldElt>> cs_lists;
        for (const auto& c : elts) cs_lists.push_back({c});
        for (const auto& c1 : elts)
            for (const auto& c2 : elts) cs_lists.push_back({c1, c2});

        for (int pp : {2, 3})
            for (int n = 1; n <= 6; ++n)
                for (const auto& cs : cs_lists)
                    for (const auto& d : elts) {
                        bool qualifying = false;
                        for (MaxIdealId m : R.max_ideal_ids()) {
                            bool ok = !R.in_ideal(m, d) && !R.is_zero(d);
                            for (const auto& c : cs)
                                ok = ok && (R.is_zero(c) || R.in_ideal(m, c));
                            qualifying = qualifying || ok;
                        }
                        bool expect = pp == rs.p && n % rs.k == 0 && qualifying;
                        if (R.pp_star({pp, n, cs, d}) != expect)
                            return {false, std::string("pp mismatch on ") + rs.name + " at p'=" +
                                               std::to_string(pp) + ", n=" + std::to_string(n) +
                                               ", d=" + R.print(d)};
                        ++checked;
                    }
    }
    return {true, "pp agrees with the characteristic/degree/qualifying-ideal law, " +
                      std::to_string(checked) + " queries over 4 two-valued rings"};
}

} // namespace

int main() {
    using Criterion = Outcome (*)();
    std::vector<std::pair<const char*, Criterion>> table = {
        {"Tuganbaev witness identities on random pairs", criterion1},
        {"DPR-based divisibility equals valuation divisibility", criterion2},
        {"shape rewrites preserve finite invariants", criterion3},
        {"uniserial invariant classification matches membership conditions", criterion4},
        {"pp0 composition enumeration equals direct evaluation", criterion5},
        {"family search equals exhaustive direct-sum enumeration", criterion6},
        {"basic-sentence verdicts are sound and search-stable", criterion7},
        {"general-sentence verdicts are sound and search-stable", criterion8},
        {"recursion traces decrease strictly and decide stays fast", criterion9},
        {"pp oracle law on two-valued rings", criterion10},
    };
    int failures = 0;
    for (size_t i = 0; i < table.size(); ++i) {
        Outcome o;
        try {
            o = table[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " ("
                  << table[i].first << "): " << o.detail << "\n";
        std::cout.flush();
        if (!o.pass) ++failures;
    }
    return failures;
}
