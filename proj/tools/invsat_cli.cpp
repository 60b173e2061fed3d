#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invsat/engine.hpp"

using namespace invsat;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string load_sentence(const std::string& inline_text, const std::string& file) {
    if (!file.empty()) return read_file(file);
    return inline_text;
}

FieldElt parse_ring_elt(const Backend& R, const std::string& text) {
    FieldElt e = R.parse(text);
    if (!R.in_ring(e)) throw std::invalid_argument("'" + text + "' is not in the ring");
    return e;
}

// cond ::= term ('|' term)* ; term ::= factor ('&' factor)*
// factor ::= '!' factor | '(' cond ')' | 'in(' elt ')' | 'true' | 'false'
struct CondParser {
    const std::string& s;
    const Backend& R;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("condition syntax error at offset " + std::to_string(pos) + ": " + what);
    }
    void ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(const std::string& w) {
        ws();
        if (s.compare(pos, w.size(), w) == 0) {
            pos += w.size();
            return true;
        }
        return false;
    }
    MICondition factor() {
        if (eat("!")) return MICondition::negate(factor());
        if (eat("(")) {
            MICondition c = cond();
            if (!eat(")")) fail("expected ')'");
            return c;
        }
        if (eat("true")) return MICondition::yes();
        if (eat("false")) return MICondition::no();
        if (eat("in(")) {
            size_t start = pos;
            int depth = 1;
            while (pos < s.size() && depth) {
                if (s[pos] == '(') ++depth;
                if (s[pos] == ')') --depth;
                if (depth) ++pos;
            }
            if (depth) fail("unbalanced 'in('");
            MICondition c = MICondition::in(parse_ring_elt(R, s.substr(start, pos - start)));
            ++pos; // ')'
            return c;
        }
        fail("expected factor");
    }
    MICondition term() {
        std::vector<MICondition> cs{factor()};
        while (eat("&")) cs.push_back(factor());
        return cs.size() == 1 ? cs[0] : MICondition::all(std::move(cs));
    }
    MICondition cond() {
        std::vector<MICondition> cs{term()};
        while (eat("|")) cs.push_back(term());
        return cs.size() == 1 ? cs[0] : MICondition::any(std::move(cs));
    }
    MICondition parse() {
        MICondition c = cond();
        ws();
        if (pos != s.size()) fail("trailing input");
        return c;
    }
};

PPPair parse_pair(const Backend& R, const std::string& text) {
    BoolSentence s = parse_sentence(text + " = 1", R);
    if (s.kind != BoolSentence::Leaf) throw std::invalid_argument("expected a single [phi / psi] pair");
    return s.pair;
}

int run(int argc, char** argv) {
    CLI::App app{"decision procedure for invariants sentences over the bundled rings"};
    app.require_subcommand(1);

    std::string ring = "local:5";
    int max_sigma = 4;
    long long max_branches = 200000;
    int max_depth = 64;
    bool trace = false;
    std::string format = "text";
    app.add_option("--ring", ring, "backend ring: local:q | twovalued:q");
    app.add_option("--max-sigma", max_sigma, "largest comparison set in the reduction");
    app.add_option("--max-branches", max_branches, "branch budget for the reduction");
    app.add_option("--max-depth", max_depth, "recursion depth budget");
    app.add_flag("--trace", trace, "print the recursion trace");
    app.add_option("--format", format, "text | structured")->check(CLI::IsMember({"text", "structured"}));

    std::string sentence_arg, sentence_file, witness_out, witness_file;
    std::vector<std::string> oracle_args;
    std::string eval_ideal, eval_top, eval_bottom, eval_pair;

    auto* cmd_decide = app.add_subcommand("decide", "decide satisfiability of a sentence");
    cmd_decide->add_option("sentence", sentence_arg, "sentence text");
    cmd_decide->add_option("--file", sentence_file, "read the sentence from a file");
    cmd_decide->add_option("--witness-out", witness_out, "write the witness to a file on SAT");

    auto* cmd_reduce = app.add_subcommand("reduce", "print the branch/leaf reduction of a sentence");
    cmd_reduce->add_option("sentence", sentence_arg, "sentence text");
    cmd_reduce->add_option("--file", sentence_file, "read the sentence from a file");

    auto* cmd_oracle = app.add_subcommand("oracle", "query dpr | pp | pp0 | tuganbaev | gcd");
    cmd_oracle->add_option("query", oracle_args, "query name followed by its arguments")->expected(-1);

    auto* cmd_verify = app.add_subcommand("verify", "check a witness against a sentence");
    cmd_verify->add_option("sentence", sentence_arg, "sentence text");
    cmd_verify->add_option("--file", sentence_file, "read the sentence from a file");
    cmd_verify->add_option("witness", witness_file, "witness file")->required();

    auto* cmd_eval = app.add_subcommand("eval", "invariant of a pair on a uniserial sub-quotient");
    cmd_eval->add_option("ideal", eval_ideal, "maximal ideal name (m0 | mInf)")->required();
    cmd_eval->add_option("top", eval_top, "top cut: zero | full | >=r | >r")->required();
    cmd_eval->add_option("bottom", eval_bottom, "bottom cut")->required();
    cmd_eval->add_option("pair", eval_pair, "pair text: [pp / pp]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Backend R = Backend::from_string(ring);
    EngineBudget budget;
    budget.reduce.max_sigma = max_sigma;
    budget.reduce.max_branches = max_branches;
    budget.max_depth = max_depth;

    if (cmd_decide->parsed()) {
        std::string text = load_sentence(sentence_arg, sentence_file);
        BoolSentence s = parse_sentence(text, R);
        Engine eng(R, budget);
        DecideResult r = eng.decide(s);
        if (trace)
            for (const auto& line : r.trace) std::cout << "trace " << line << "\n";
        if (format == "structured") {
            std::cout << "verdict=" << (r.sat ? "sat" : "unsat") << "\n";
        } else {
            std::cout << (r.sat ? "SAT" : "UNSAT") << "\n";
        }
        if (r.sat) {
            std::cout << witness_to_string(R, r.witness);
            if (!witness_out.empty()) {
                std::ofstream out(witness_out);
                out << witness_to_string(R, r.witness);
            }
        }
        return r.sat ? 0 : 1;
    }

    if (cmd_reduce->parsed()) {
        std::string text = load_sentence(sentence_arg, sentence_file);
        BoolSentence s = parse_sentence(text, R);
        int star_idx = 0;
        for (const StarSentence& star : to_star_dnf(R, s)) {
            auto simp = simplify_star(R, star);
            std::cout << "star " << star_idx++ << ": "
                      << star_to_string(R, star) << "\n";
            if (!simp) {
                std::cout << "  contradiction\n";
                continue;
            }
            LeafDNF dnf = reduce_to_basic(R, *simp, budget.reduce);
            for (size_t b = 0; b < dnf.branches.size(); ++b)
                for (size_t l = 0; l < dnf.branches[b].size(); ++l)
                    std::cout << "  branch " << b << " leaf " << l << ": "
                              << basic_star_to_string(R, dnf.branches[b][l].star) << "\n";
            if (dnf.branches.empty()) std::cout << "  no branches\n";
        }
        return 0;
    }

    if (cmd_oracle->parsed()) {
        if (oracle_args.empty()) throw std::invalid_argument("oracle: missing query name");
        const std::string& kind = oracle_args[0];
        std::vector<std::string> args(oracle_args.begin() + 1, oracle_args.end());
        if (kind == "dpr") {
            if (args.size() < 4 || args.size() % 2) throw std::invalid_argument("dpr: want a b1..bl c d1..dl");
            size_t l = (args.size() - 2) / 2;
            DPRQuery q;
            q.a = parse_ring_elt(R, args[0]);
            for (size_t j = 0; j < l; ++j) q.bs.push_back(parse_ring_elt(R, args[1 + j]));
            q.c = parse_ring_elt(R, args[1 + l]);
            for (size_t j = 0; j < l; ++j) q.ds.push_back(parse_ring_elt(R, args[2 + l + j]));
            std::cout << (R.dpr_star(q) ? "true" : "false") << "\n";
            return 0;
        }
        if (kind == "pp") {
            if (args.size() < 4) throw std::invalid_argument("pp: want p n c1..cl d");
            PPQuery q;
            q.p = std::stoi(args[0]);
            q.n = std::stoi(args[1]);
            for (size_t j = 2; j + 1 < args.size(); ++j) q.cs.push_back(parse_ring_elt(R, args[j]));
            q.d = parse_ring_elt(R, args.back());
            std::cout << (R.pp_star(q) ? "true" : "false") << "\n";
            return 0;
        }
        if (kind == "pp0") {
            if (args.size() != 3) throw std::invalid_argument("pp0: want p n condition");
            CondParser cp{args[2], R};
            MICondition D = cp.parse();
            std::cout << (pp0(R, std::stoi(args[0]), std::stoi(args[1]), D) ? "true" : "false") << "\n";
            return 0;
        }
        if (kind == "tuganbaev") {
            if (args.size() != 2) throw std::invalid_argument("tuganbaev: want a b");
            FieldElt a = parse_ring_elt(R, args[0]), b = parse_ring_elt(R, args[1]);
            auto [alpha, r, s] = R.tuganbaev(a, b);
            std::cout << "alpha=" << R.print(alpha) << "\n"
                      << "r=" << R.print(r) << "\n"
                      << "s=" << R.print(s) << "\n";
            bool id1 = R.eq(R.mul(b, alpha), R.mul(a, s));
            bool id2 = R.eq(R.mul(a, R.sub(alpha, R.one())), R.mul(b, r));
            std::cout << "check b*alpha=a*s: " << (id1 ? "ok" : "FAIL") << "\n"
                      << "check a*(alpha-1)=b*r: " << (id2 ? "ok" : "FAIL") << "\n";
            return id1 && id2 ? 0 : 2;
        }
        if (kind == "gcd") {
            if (args.size() != 2) throw std::invalid_argument("gcd: want a b");
            FieldElt a = parse_ring_elt(R, args[0]), b = parse_ring_elt(R, args[1]);
            auto [g, u, v] = R.gcd_bezout(a, b);
            std::cout << "g=" << R.print(g) << "\n"
                      << "u=" << R.print(u) << "\n"
                      << "v=" << R.print(v) << "\n";
            bool id = R.eq(g, R.add(R.mul(a, u), R.mul(b, v)));
            bool divs = R.divides(g, a) && R.divides(g, b);
            std::cout << "check g=a*u+b*v: " << (id ? "ok" : "FAIL") << "\n"
                      << "check g|a and g|b: " << (divs ? "ok" : "FAIL") << "\n";
            return id && divs ? 0 : 2;
        }
        throw std::invalid_argument("unknown oracle query '" + kind + "'");
    }

    if (cmd_verify->parsed()) {
        std::string text = load_sentence(sentence_arg, sentence_file);
        BoolSentence s = parse_sentence(text, R);
        auto w = witness_parse(R, read_file(witness_file));
        if (!w) throw std::invalid_argument("malformed witness file");
        for (const StarSentence& star : to_star_dnf(R, s))
            if (verify_witness(R, star, *w)) {
                std::cout << "pass\n";
                return 0;
            }
        std::cout << "fail\n";
        return 1;
    }

    if (cmd_eval->parsed()) {
        auto id = R.ideal_by_name(eval_ideal);
        if (!id) throw std::invalid_argument("unknown ideal '" + eval_ideal + "'");
        auto top = cut_parse(eval_top), bottom = cut_parse(eval_bottom);
        if (!top || !bottom) throw std::invalid_argument("bad cut syntax");
        UniserialDesc d{*id, *top, *bottom};
        PPPair pair = parse_pair(R, eval_pair);
        InvariantValue v = uniserial_pair_value(R, d, pair);
        switch (v.kind) {
            case InvariantValue::One:
                std::cout << "1\n";
                break;
            case InvariantValue::Q:
                std::cout << "q=" << R.fq().q() << "\n";
                break;
            case InvariantValue::Infinite:
                std::cout << "infinite\n";
                break;
        }
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
