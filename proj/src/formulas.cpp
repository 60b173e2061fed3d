#include "invsat/formulas.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace invsat {

namespace {

std::string atom_key(const Backend& R, const Atom& a) {
    std::string s = std::to_string((int)a.kind);
    switch (a.kind) {
        case Atom::Divides:
        case Atom::Ann:
            s += "(" + R.print(a.x) + ")";
            break;
        case Atom::DivProd:
        case Atom::ExistsPair:
            s += "(" + R.print(a.x) + "," + R.print(a.y) + ")";
            break;
        default:
            break;
    }
    return s;
}

} // namespace

Atom normalize_atom(const Backend& R, Atom a) {
    switch (a.kind) {
        case Atom::Top:
        case Atom::Bot:
            return a;
        case Atom::Divides:
            if (R.is_unit(a.x)) return Atom::top();
            if (R.is_zero(a.x)) return Atom::bot();
            return a;
        case Atom::Ann:
            if (R.is_zero(a.x)) return Atom::top();
            if (R.is_unit(a.x)) return Atom::bot();
            return a;
        case Atom::DivProd:
            // c | xd
            if (R.is_zero(a.y)) return Atom::top();
            if (R.is_unit(a.x)) return Atom::top();
            if (R.is_zero(a.x)) return normalize_atom(R, Atom::ann(a.y));
            if (R.is_unit(a.y)) return normalize_atom(R, Atom::divides(R.mul(a.x, R.unit_inverse(a.y))));
            if (R.divides(a.x, a.y)) return Atom::top();
            return a;
        case Atom::ExistsPair:
            // exists y (ya=x and yb=0)
            if (R.is_zero(a.x)) return Atom::bot();
            if (R.is_unit(a.y)) return Atom::bot();
            if (R.is_zero(a.y)) return normalize_atom(R, Atom::divides(a.x));
            if (R.is_unit(a.x)) return normalize_atom(R, Atom::ann(R.mul(R.unit_inverse(a.x), a.y)));
            return a;
    }
    return a;
}

PPFormula normalize_formula(const Backend& R, PPFormula f) {
    std::vector<std::vector<Atom>> sum;
    for (auto& conj : f.sum) {
        std::vector<Atom> atoms;
        bool dead = false;
        for (auto& at : conj) {
            Atom n = normalize_atom(R, at);
            if (n.kind == Atom::Top) continue;
            if (n.kind == Atom::Bot) {
                dead = true;
                break;
            }
            atoms.push_back(std::move(n));
        }
        if (dead) continue; // Bot conjunct contributes only 0 to the sum
        if (atoms.empty()) {
            // conjunction of Tops: the whole formula is Top
            return PPFormula::top();
        }
        std::sort(atoms.begin(), atoms.end(), [&](const Atom& a, const Atom& b) {
            return atom_key(R, a) < atom_key(R, b);
        });
        atoms.erase(std::unique(atoms.begin(), atoms.end(),
                                [&](const Atom& a, const Atom& b) { return atom_key(R, a) == atom_key(R, b); }),
                    atoms.end());
        sum.push_back(std::move(atoms));
    }
    if (sum.empty()) return PPFormula::bot();
    auto conj_key = [&](const std::vector<Atom>& c) {
        std::string s;
        for (const auto& a : c) s += atom_key(R, a) + "&";
        return s;
    };
    std::sort(sum.begin(), sum.end(),
              [&](const auto& a, const auto& b) { return conj_key(a) < conj_key(b); });
    sum.erase(std::unique(sum.begin(), sum.end(),
                          [&](const auto& a, const auto& b) { return conj_key(a) == conj_key(b); }),
              sum.end());
    return {std::move(sum)};
}

std::string atom_to_string(const Backend& R, const Atom& a) {
    switch (a.kind) {
        case Atom::Top:
            return "x=x";
        case Atom::Bot:
            return "x=0";
        case Atom::Divides:
            return "div(" + R.print(a.x) + ")";
        case Atom::Ann:
            return "ann(" + R.print(a.x) + ")";
        case Atom::DivProd:
            return "divprod(" + R.print(a.x) + "," + R.print(a.y) + ")";
        case Atom::ExistsPair:
            return "exists(" + R.print(a.x) + "," + R.print(a.y) + ")";
    }
    return "?";
}

std::string formula_to_string(const Backend& R, const PPFormula& f) {
    std::string s;
    for (size_t i = 0; i < f.sum.size(); ++i) {
        if (i) s += " + ";
        for (size_t j = 0; j < f.sum[i].size(); ++j) {
            if (j) s += " & ";
            s += atom_to_string(R, f.sum[i][j]);
        }
    }
    return s;
}

std::string pair_to_string(const Backend& R, const PPPair& p) {
    return "[" + formula_to_string(R, p.phi) + " / " + formula_to_string(R, p.psi) + "]";
}

bool formula_is_top(const PPFormula& f) {
    return f.sum.size() == 1 && f.sum[0].size() == 1 && f.sum[0][0].kind == Atom::Top;
}

bool formula_is_bot(const PPFormula& f) {
    return f.sum.size() == 1 && f.sum[0].size() == 1 && f.sum[0][0].kind == Atom::Bot;
}

bool pair_trivially_one(const Backend& R, const PPPair& p) {
    PPFormula phi = normalize_formula(R, p.phi);
    PPFormula psi = normalize_formula(R, p.psi);
    if (formula_is_top(psi) || formula_is_bot(phi)) return true;
    return formula_to_string(R, phi) == formula_to_string(R, psi);
}

long long exponent(const StarSentence& s) {
    long long e = 1;
    for (const auto& [p, h] : s.eqs) {
        if (e > (1LL << 40) / (h > 0 ? h : 1)) throw std::overflow_error("exponent too large");
        e *= h;
    }
    return e;
}

std::optional<StarSentence> simplify_star(const Backend& R, StarSentence s) {
    StarSentence r;
    for (auto& [p, h] : s.eqs) {
        PPPair np{normalize_formula(R, p.phi), normalize_formula(R, p.psi)};
        bool one = pair_trivially_one(R, np);
        if (h <= 1) {
            if (!one) r.ones.push_back(std::move(np));
            continue;
        }
        if (one) return std::nullopt;
        r.eqs.emplace_back(std::move(np), h);
    }
    for (auto& p : s.ones) {
        PPPair np{normalize_formula(R, p.phi), normalize_formula(R, p.psi)};
        if (!pair_trivially_one(R, np)) r.ones.push_back(std::move(np));
    }
    for (auto& [p, e] : s.geqs) {
        if (e <= 1) continue;
        PPPair np{normalize_formula(R, p.phi), normalize_formula(R, p.psi)};
        if (pair_trivially_one(R, np)) return std::nullopt;
        r.geqs.emplace_back(std::move(np), e);
    }
    return r;
}

std::string star_to_string(const Backend& R, const StarSentence& s) {
    std::string out;
    bool first = true;
    auto app = [&](const std::string& x) {
        if (!first) out += " & ";
        first = false;
        out += x;
    };
    for (const auto& [p, h] : s.eqs) app(pair_to_string(R, p) + " = " + std::to_string(h));
    for (const auto& p : s.ones) app(pair_to_string(R, p) + " = 1");
    for (const auto& [p, e] : s.geqs) app(pair_to_string(R, p) + " >= " + std::to_string(e));
    if (first) out = "<empty>";
    return out;
}

namespace {

// negation normal form with Not pushed to nothing: complement intervals
BoolSentence nnf(const BoolSentence& s, bool negate) {
    switch (s.kind) {
        case BoolSentence::Not:
            return nnf(s.children[0], !negate);
        case BoolSentence::And:
        case BoolSentence::Or: {
            BoolSentence r;
            bool is_and = (s.kind == BoolSentence::And) != negate;
            r.kind = is_and ? BoolSentence::And : BoolSentence::Or;
            for (const auto& c : s.children) r.children.push_back(nnf(c, negate));
            return r;
        }
        case BoolSentence::Leaf: {
            if (!negate) return s;
            // complement of [lo, hi] within [1, inf]
            BoolSentence r;
            r.kind = BoolSentence::Or;
            long long lo = std::max(s.lo, 1LL);
            if (lo >= 2) {
                BoolSentence low;
                low.pair = s.pair;
                low.lo = 1;
                low.hi = lo - 1;
                r.children.push_back(std::move(low));
            }
            if (s.hi >= 0) {
                BoolSentence high;
                high.pair = s.pair;
                high.lo = s.hi + 1;
                high.hi = -1;
                r.children.push_back(std::move(high));
            }
            if (r.children.empty()) {
                // complement of [1, inf] is empty: an unsatisfiable leaf
                BoolSentence f;
                f.pair = s.pair;
                f.lo = 2;
                f.hi = 1;
                return f;
            }
            if (r.children.size() == 1) return r.children[0];
            return r;
        }
    }
    return s;
}

void dnf_conjunctions(const BoolSentence& s, std::vector<std::vector<BoolSentence>>& out) {
    switch (s.kind) {
        case BoolSentence::Leaf:
            out.push_back({s});
            return;
        case BoolSentence::Or:
            for (const auto& c : s.children) dnf_conjunctions(c, out);
            return;
        case BoolSentence::And: {
            std::vector<std::vector<BoolSentence>> acc{{}};
            for (const auto& c : s.children) {
                std::vector<std::vector<BoolSentence>> part;
                dnf_conjunctions(c, part);
                std::vector<std::vector<BoolSentence>> next;
                for (const auto& a : acc)
                    for (const auto& p : part) {
                        auto merged = a;
                        merged.insert(merged.end(), p.begin(), p.end());
                        next.push_back(std::move(merged));
                    }
                acc = std::move(next);
                if (acc.size() > 100000) throw std::runtime_error("sentence too large: DNF budget exceeded");
            }
            out.insert(out.end(), acc.begin(), acc.end());
            return;
        }
        case BoolSentence::Not:
            throw std::logic_error("dnf: Not not eliminated");
    }
}

} // namespace

std::vector<StarSentence> to_star_dnf(const Backend& R, const BoolSentence& s) {
    BoolSentence n = nnf(s, false);
    std::vector<std::vector<BoolSentence>> conjs;
    dnf_conjunctions(n, conjs);
    std::vector<StarSentence> result;
    for (const auto& conj : conjs) {
        // expand each finite interval to its exact values
        std::vector<StarSentence> acc{StarSentence{}};
        bool dead = false;
        for (const auto& leaf : conj) {
            long long lo = std::max(leaf.lo, 1LL);
            if (leaf.hi < 0) {
                if (lo <= 1) continue; // no constraint
                for (auto& st : acc) st.geqs.emplace_back(leaf.pair, lo);
                continue;
            }
            if (leaf.hi < lo) {
                dead = true;
                break;
            }
            std::vector<StarSentence> next;
            for (const auto& st : acc)
                for (long long v = lo; v <= leaf.hi; ++v) {
                    StarSentence copy = st;
                    if (v == 1) {
                        copy.ones.push_back(leaf.pair);
                    } else {
                        copy.eqs.emplace_back(leaf.pair, v);
                    }
                    next.push_back(std::move(copy));
                }
            acc = std::move(next);
            if (acc.size() > 100000) throw std::runtime_error("sentence too large: interval expansion budget exceeded");
        }
        if (!dead) result.insert(result.end(), acc.begin(), acc.end());
    }
    return result;
}

namespace {

struct SentenceParser {
    const std::string& s;
    const Backend& R;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("sentence syntax error at offset " + std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool eat_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            pos += w.size();
            return true;
        }
        return false;
    }

    long long parse_int() {
        skip_ws();
        size_t start = pos;
        long long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        if (pos == start) fail("expected integer");
        return v;
    }

    // reads a balanced chunk up to a top-level ',' or ')' (exclusive)
    std::string parse_elt_chunk() {
        skip_ws();
        size_t start = pos;
        int paren = 0, bracket = 0;
        while (pos < s.size()) {
            char c = s[pos];
            if (c == '(') ++paren;
            if (c == ')') {
                if (paren == 0) break;
                --paren;
            }
            if (c == '[') ++bracket;
            if (c == ']') {
                if (bracket == 0) break;
                --bracket;
            }
            if (c == ',' && paren == 0 && bracket == 0) break;
            ++pos;
        }
        if (pos == start) fail("expected element");
        return s.substr(start, pos - start);
    }

    FieldElt parse_elt_arg() {
        size_t at = pos;
        FieldElt e;
        try {
            e = R.parse(parse_elt_chunk());
        } catch (const std::invalid_argument& err) {
            pos = at;
            fail(err.what());
        }
        if (!R.in_ring(e)) {
            pos = at;
            fail("element is not in the ring");
        }
        return e;
    }

    Atom parse_atom() {
        skip_ws();
        if (eat_word("x=x")) return Atom::top();
        if (eat_word("x=0")) return Atom::bot();
        if (eat_word("div(")) {
            Atom a = Atom::divides(parse_elt_arg());
            expect(')');
            return a;
        }
        if (eat_word("ann(")) {
            Atom a = Atom::ann(parse_elt_arg());
            expect(')');
            return a;
        }
        if (eat_word("divprod(")) {
            FieldElt c = parse_elt_arg();
            expect(',');
            FieldElt d = parse_elt_arg();
            expect(')');
            return Atom::divprod(std::move(c), std::move(d));
        }
        if (eat_word("exists(")) {
            FieldElt a = parse_elt_arg();
            expect(',');
            FieldElt b = parse_elt_arg();
            expect(')');
            return Atom::exists_pair(std::move(a), std::move(b));
        }
        fail("expected atom (x=x, x=0, div, ann, divprod, exists)");
    }

    PPFormula parse_pp() {
        PPFormula f;
        std::vector<Atom> conj{parse_atom()};
        while (true) {
            if (eat('&')) {
                conj.push_back(parse_atom());
            } else if (eat('+')) {
                f.sum.push_back(std::move(conj));
                conj = {parse_atom()};
            } else {
                break;
            }
        }
        f.sum.push_back(std::move(conj));
        return f;
    }

    BoolSentence parse_clause() {
        bool negate = eat('!');
        expect('[');
        PPPair pair;
        pair.phi = parse_pp();
        expect('/');
        pair.psi = parse_pp();
        expect(']');
        BoolSentence leaf;
        leaf.pair = std::move(pair);
        skip_ws();
        if (eat_word(">=")) {
            leaf.lo = parse_int();
            leaf.hi = -1;
        } else if (eat('=')) {
            leaf.lo = leaf.hi = parse_int();
        } else if (eat_word("in")) {
            expect('[');
            leaf.lo = parse_int();
            expect(',');
            skip_ws();
            if (eat_word("inf")) {
                leaf.hi = -1;
            } else {
                leaf.hi = parse_int();
            }
            expect(']');
        } else {
            fail("expected relation (=, >=, in)");
        }
        if (!negate) return leaf;
        BoolSentence n;
        n.kind = BoolSentence::Not;
        n.children.push_back(std::move(leaf));
        return n;
    }

    BoolSentence parse_and() {
        BoolSentence first = parse_clause();
        if (!peek('&')) return first;
        BoolSentence r;
        r.kind = BoolSentence::And;
        r.children.push_back(std::move(first));
        while (eat('&')) r.children.push_back(parse_clause());
        return r;
    }

    BoolSentence parse_or() {
        BoolSentence first = parse_and();
        if (!peek('|')) return first;
        BoolSentence r;
        r.kind = BoolSentence::Or;
        r.children.push_back(std::move(first));
        while (eat('|')) r.children.push_back(parse_and());
        return r;
    }
};

} // namespace

BoolSentence parse_sentence(const std::string& text, const Backend& R) {
    SentenceParser p{text, R};
    p.skip_ws();
    if (p.pos == text.size()) p.fail("empty sentence");
    BoolSentence r = p.parse_or();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

} // namespace invsat
