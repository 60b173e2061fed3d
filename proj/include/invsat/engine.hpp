#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invsat/domain.hpp"
#include "invsat/pipeline.hpp"

namespace invsat {

// The three uniserial witness families over a maximal ideal m:
//   Sgamma: R_m / gamma*m*R_m        (gamma != 0)
//   Sprime: m*R_m / beta*eta*R_m     (beta*eta != 0)
//   Tfam:   R_m / m*R_m
struct FamilyTag {
    enum Kind { Sgamma, Sprime, Tfam } kind = Sgamma;
    FieldElt gamma;     // Sgamma
    FieldElt beta, eta; // Sprime / Tfam
};

enum class PairMode { Closed, Minimal, OpenNotMinimal };

// x in y*R_M / x in y*m*R_M as conditions on the maximal-ideal variable M,
// expressed through Tuganbaev witnesses.
MICondition member_cond(const Backend& R, const FieldElt& x, const FieldElt& y);
MICondition strict_member_cond(const Backend& R, const FieldElt& x, const FieldElt& y);

// The openness/minimality condition of `pair` on the family member at M.
MICondition delta_f_atom(const Backend& R, const FamilyTag& fam, const BasicPair& pair, PairMode mode);

struct WitnessEntry {
    UniserialDesc desc;
    long long mult = 1;
    std::string role;
};

struct Witness {
    std::vector<WitnessEntry> entries;
};

// Recomputes every invariant of s on the direct sum described by w.
bool verify_witness(const Backend& R, const StarSentence& s, const Witness& w);

std::string witness_to_string(const Backend& R, const Witness& w);
std::optional<Witness> witness_parse(const Backend& R, const std::string& text);

struct EngineBudget {
    ReduceBudget reduce;
    int max_depth = 64;
};

struct DecideResult {
    bool sat = false;
    Witness witness;
    std::vector<std::string> trace;
};

class Engine {
public:
    Engine(const Backend& R, EngineBudget budget = {}) : R_(R), budget_(budget) {}

    DecideResult decide(const BoolSentence& s);
    DecideResult decide_star(const StarSentence& s);

    // Finds a finite direct sum drawn from the family with the first pair's
    // invariant p^w, the listed pairs at p^{n_i}, forced-1 pairs closed, and
    // lower-bound pairs at >= p^{l_k} (or infinite).
    std::optional<std::vector<WitnessEntry>> prop58(const FamilyTag& fam, int p, int w,
                                                    const std::vector<std::pair<BasicPair, int>>& eqs,
                                                    const std::vector<BasicPair>& ones,
                                                    const std::vector<std::pair<BasicPair, int>>& geqs);

    std::pair<bool, Witness> decide_basic(const BasicStar& s, int depth);

    std::optional<Witness> decide_exponent_one(const std::vector<BasicPair>& ones,
                                               const std::vector<std::pair<BasicPair, long long>>& geqs);

    const std::vector<std::string>& trace() const { return trace_; }

private:
    const Backend& R_;
    EngineBudget budget_;
    std::vector<std::string> trace_;
    std::map<std::string, std::pair<bool, Witness>> basic_memo_;
    std::map<std::string, std::optional<std::vector<WitnessEntry>>> prop58_memo_;

    std::pair<bool, Witness> decide_basic_uncached(const BasicStar& s, int depth);
    std::pair<bool, Witness> case_two(const BasicStar& s, int depth, int p, int h1);
};

} // namespace invsat
