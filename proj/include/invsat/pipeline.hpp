#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "invsat/ziegler.hpp"

namespace invsat {

// A star sentence all of whose pairs are basic.
struct BasicStar {
    std::vector<std::pair<BasicPair, long long>> eqs;  // value >= 2
    std::vector<BasicPair> ones;
    std::vector<std::pair<BasicPair, long long>> geqs; // threshold >= 2
};

long long basic_exponent(const BasicStar& s);
std::string basic_star_to_string(const Backend& R, const BasicStar& s);
StarSentence basic_to_star(const BasicStar& s);

// Recognizes the basic shapes in a normalized single-atom pair.
std::optional<BasicPair> pair_to_basic(const Backend& R, const PPPair& p);

// Invariant-preserving rewrites of single-atom pairs into the basic shapes:
//   [ann(b)/ann(d)] -> [exists(d,b)/x=0], [div(a)/div(c)] -> [x=x/divprod(c,a)],
//   [div(a)/ann(d)] -> [x=x/ann(a*d)],   [div(a)/x=0]    -> [x=x/ann(a)].
PPPair rewrite_pair_shape(const Backend& R, const PPPair& p);
std::optional<BasicStar> star_to_basic(const Backend& R, const StarSentence& s);

struct BasicLeaf {
    BasicStar star;
    std::string note; // provenance of the reduction steps that produced it
};

struct ReduceBudget {
    int max_sigma = 4;            // largest comparison set handled
    long long max_branches = 200000;
    int max_iters = 64;           // rewriting rounds per leaf
};

// All total quasi-orders on {0..n-1}: each order is a block label per
// element, labels forming an initial segment with block 0 greatest.
std::vector<std::vector<int>> quasi_orders(int n);

// Factor assignments over `slots` leaves with product exactly h.
std::vector<std::vector<long long>> eq_distributions(long long h, int slots);
// Componentwise-minimal assignments g with 1 <= g_j <= e and prod g_j >= e.
std::vector<std::vector<long long>> geq_distributions(long long e, int slots);

// Reduction contract: s is satisfiable iff some emitted branch consists
// entirely of satisfiable leaves (the model being the direct sum of one
// model per leaf). Calls cb for each branch until it returns true; the
// return value reports whether cb stopped the enumeration.
bool reduce_for_each(const Backend& R, const StarSentence& s, const ReduceBudget& budget,
                     const std::function<bool(const std::vector<BasicLeaf>&)>& cb);

struct LeafDNF {
    std::vector<std::vector<BasicLeaf>> branches;
};

LeafDNF reduce_to_basic(const Backend& R, const StarSentence& s, const ReduceBudget& budget);

} // namespace invsat
