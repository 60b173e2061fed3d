#include "invsat/domain.hpp"

#include <functional>
#include <stdexcept>

namespace invsat {

bool mi_holds(const Backend& R, MaxIdealId m, const MICondition& D) {
    switch (D.kind) {
        case MICondition::True:
            return true;
        case MICondition::False:
            return false;
        case MICondition::In:
            return R.in_ideal(m, D.elem);
        case MICondition::And:
            for (const auto& c : D.children)
                if (!mi_holds(R, m, c)) return false;
            return true;
        case MICondition::Or:
            for (const auto& c : D.children)
                if (mi_holds(R, m, c)) return true;
            return false;
        case MICondition::Not:
            return !mi_holds(R, m, D.children[0]);
    }
    return false;
}

namespace {

struct Literal {
    FieldElt elem;
    bool positive;
};

void dnf_rec(const Backend& R, const MICondition& D, bool neg, std::vector<std::vector<Literal>>& out) {
    switch (D.kind) {
        case MICondition::True:
        case MICondition::False: {
            bool truthy = (D.kind == MICondition::True) != neg;
            if (truthy) out.push_back({}); // empty conjunction
            return;
        }
        case MICondition::In:
            out.push_back({{D.elem, !neg}});
            return;
        case MICondition::Not:
            dnf_rec(R, D.children[0], !neg, out);
            return;
        case MICondition::And:
        case MICondition::Or: {
            bool conj = (D.kind == MICondition::And) != neg;
            if (!conj) {
                for (const auto& c : D.children) dnf_rec(R, c, neg, out);
                return;
            }
            std::vector<std::vector<Literal>> acc{{}};
            for (const auto& c : D.children) {
                std::vector<std::vector<Literal>> part;
                dnf_rec(R, c, neg, part);
                std::vector<std::vector<Literal>> next;
                for (const auto& a : acc)
                    for (const auto& p : part) {
                        auto merged = a;
                        merged.insert(merged.end(), p.begin(), p.end());
                        next.push_back(std::move(merged));
                    }
                acc = std::move(next);
                if (acc.size() > 100000) throw std::runtime_error("mi_dnf: condition too large");
            }
            out.insert(out.end(), acc.begin(), acc.end());
            return;
        }
    }
}

} // namespace

std::vector<DNFClause> mi_dnf(const Backend& R, const MICondition& D) {
    std::vector<std::vector<Literal>> raw;
    dnf_rec(R, D, false, raw);
    std::vector<DNFClause> clauses;
    for (const auto& lits : raw) {
        DNFClause cl;
        cl.out = R.one();
        bool dead = false;
        for (const Literal& l : lits) {
            if (l.positive) {
                if (R.is_unit(l.elem)) {
                    dead = true; // no maximal ideal contains a unit
                    break;
                }
                cl.ins.push_back(l.elem);
            } else {
                cl.out = R.mul(cl.out, l.elem); // /\ b_i not in M  <=>  prod b_i not in M
            }
        }
        if (dead || R.is_zero(cl.out)) continue; // 0 lies in every maximal ideal
        if (cl.ins.empty()) cl.ins.push_back(R.zero());
        clauses.push_back(std::move(cl));
    }
    return clauses;
}

namespace {

bool compositions(int n, size_t m, size_t i, std::vector<int>& delta, const std::function<bool(const std::vector<int>&)>& try_one) {
    if (i + 1 == m) {
        delta[i] = n;
        return try_one(delta);
    }
    for (int d = 0; d <= n; ++d) {
        delta[i] = d;
        if (compositions(n - d, m, i + 1, delta, try_one)) return true;
    }
    return false;
}

} // namespace

bool pp0(const Backend& R, int p, int n, const MICondition& D) {
    if (n < 1) throw std::invalid_argument("pp0: n >= 1 required");
    std::vector<DNFClause> clauses = mi_dnf(R, D);
    if (clauses.empty()) return false;
    std::vector<int> delta(clauses.size());
    return compositions(n, clauses.size(), 0, delta, [&](const std::vector<int>& d) {
        for (size_t i = 0; i < clauses.size(); ++i) {
            if (d[i] == 0) continue;
            if (!R.pp_star({p, d[i], clauses[i].ins, clauses[i].out})) return false;
        }
        return true;
    });
}

bool pp0_direct(const Backend& R, int p, int n, const MICondition& D) {
    if (n < 1) throw std::invalid_argument("pp0_direct: n >= 1 required");
    // degrees of qualifying ideals, then subset-sum with repetition
    std::vector<int> degrees;
    for (MaxIdealId m : R.max_ideal_ids()) {
        auto [rp, rk] = R.residue_size(m);
        if (rp == p && mi_holds(R, m, D)) degrees.push_back(rk);
    }
    if (degrees.empty()) return false;
    std::vector<char> reach(n + 1, 0);
    reach[0] = 1;
    for (int v = 1; v <= n; ++v)
        for (int k : degrees)
            if (k <= v && reach[v - k]) reach[v] = 1;
    return reach[n];
}

std::optional<std::vector<std::pair<MaxIdealId, int>>> pp0_materialize(const Backend& R, int p, int n,
                                                                      const MICondition& D) {
    for (MaxIdealId m : R.max_ideal_ids()) {
        auto [rp, rk] = R.residue_size(m);
        if (rp != p || n % rk != 0 || !mi_holds(R, m, D)) continue;
        return std::vector<std::pair<MaxIdealId, int>>{{m, n / rk}};
    }
    return std::nullopt;
}

} // namespace invsat
