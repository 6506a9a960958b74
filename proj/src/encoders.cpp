#include "xpl/encoders.hpp"

#include "xpl/errors.hpp"
#include "xpl/formula_ops.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace xpl {

// ---------------------------------------------------------------- MDPs

std::size_t Mdp::add_state(std::string name, std::set<Proposition> props) {
    states.push_back(std::move(name));
    labels.push_back(std::move(props));
    actions.emplace_back();
    return states.size() - 1;
}

void Mdp::add_action(std::size_t state, std::string name, std::vector<std::pair<std::size_t, Rational>> dist) {
    if (state >= states.size()) throw InvalidModel("add_action: unknown state index " + std::to_string(state));
    actions[state].push_back({std::move(name), std::move(dist)});
}

namespace {

// Merges repeated targets and checks that the result is a distribution.
std::map<std::size_t, Rational> checked_distribution(const std::vector<std::pair<std::size_t, Rational>>& dist,
                                                     std::size_t num_states, const std::string& where) {
    std::map<std::size_t, Rational> merged;
    Rational total;
    for (const auto& [to, p] : dist) {
        if (to >= num_states) throw InvalidModel(where + ": target index " + std::to_string(to) + " out of range");
        if (p <= Rational(0) || p > Rational(1))
            throw InvalidDistribution(where + ": probability " + p.to_string() + " outside (0, 1]");
        merged[to] += p;
        total += p;
    }
    if (total != Rational(1)) throw InvalidDistribution(where + ": probabilities sum to " + total.to_string());
    return merged;
}

}  // namespace

Plts mdp_to_plts(const Mdp& m) {
    if (m.labels.size() != m.states.size() || m.actions.size() != m.states.size())
        throw InvalidModel("mdp: states, labels and actions differ in length");
    Plts out;
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        if (out.find_state(m.states[s])) throw InvalidModel("mdp: duplicate state " + m.states[s]);
        out.add_state(m.states[s], m.labels[s]);
    }
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        StateId from{static_cast<std::uint32_t>(s)};
        if (m.actions[s].empty()) {
            out.add_transition(from, kMdpAction, 0, from, Rational(1));
            continue;
        }
        for (std::size_t c = 0; c < m.actions[s].size(); ++c) {
            const auto& act = m.actions[s][c];
            auto dist = checked_distribution(act.distribution, m.num_states(), m.states[s] + "/" + act.name);
            for (const auto& [to, p] : dist)
                out.add_transition(from, kMdpAction, static_cast<ChoiceIndex>(c),
                                   StateId{static_cast<std::uint32_t>(to)}, p);
        }
    }
    return out;
}

// ---------------------------------------------------------------- shared lexer

namespace {

struct Token {
    enum class Kind { Ident, Symbol, End };
    Kind kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '/') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                                       text[i] == '.' || text[i] == '/'))
                ++i;
            out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), start + 1});
            continue;
        }
        if (ch == '>' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Token::Kind::Symbol, ">=", start + 1});
            i += 2;
            continue;
        }
        if (std::string_view("()[]{}!&>").find(ch) == std::string_view::npos)
            throw ParseError(std::string("unexpected character '") + ch + "'", 1, start + 1);
        out.push_back({Token::Kind::Symbol, std::string(1, ch), start + 1});
        ++i;
    }
    out.push_back({Token::Kind::End, "", text.size() + 1});
    return out;
}

class TokenStream {
public:
    explicit TokenStream(std::string_view text) : toks_(lex(text)) {}

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at(const char* text) const { return peek().text == text && peek().kind != Token::Kind::End; }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    void expect(const char* text) {
        if (!at(text)) fail(std::string("expected '") + text + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(msg + (t.kind == Token::Kind::End ? " at end of input" : " near '" + t.text + "'"), 1,
                         t.column);
    }

    // Pr{>p} or Pr{>=p}; the "Pr" token has been consumed.
    std::pair<Comparison, Rational> threshold() {
        expect("{");
        Comparison cmp;
        if (at(">=")) {
            cmp = Comparison::GreaterEq;
        } else if (at(">")) {
            cmp = Comparison::Greater;
        } else {
            fail("expected '>' or '>='");
        }
        next();
        if (peek().kind != Token::Kind::Ident) fail("expected a probability");
        Token num = next();
        Rational p;
        try {
            p = Rational::parse(num.text);
        } catch (const std::exception&) {
            throw ParseError("bad probability '" + num.text + "'", 1, num.column);
        }
        if (p < Rational(0) || p > Rational(1))
            throw ParseError("probability " + num.text + " outside [0, 1]", 1, num.column);
        expect("}");
        return {cmp, p};
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool is_identifier(const Token& t) {
    return t.kind == Token::Kind::Ident && (std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_');
}

const char* cmp_text(Comparison c) { return c == Comparison::GreaterEq ? ">=" : ">"; }

// Fresh fixed-point variable names X1, X2, ... avoiding proposition names.
class FreshVars {
public:
    explicit FreshVars(std::set<std::string> taken) : taken_(std::move(taken)) {}
    std::string next() {
        for (;;) {
            std::string v = "X" + std::to_string(++n_);
            if (!taken_.count(v)) return v;
        }
    }

private:
    std::set<std::string> taken_;
    std::size_t n_ = 0;
};

bool contains_prob(const Formula& f) {
    if (f.kind() == FormulaKind::Prob) return true;
    for (const auto& c : f.children())
        if (contains_prob(c)) return true;
    return false;
}

}  // namespace

// ---------------------------------------------------------------- PCTL*

bool PctlFormula::is_state() const {
    switch (kind) {
        case Kind::Prop:
        case Kind::Prob: return true;
        case Kind::Not: return args[0]->is_state();
        case Kind::And: return args[0]->is_state() && args[1]->is_state();
        case Kind::Next:
        case Kind::Until: return false;
    }
    return false;
}

namespace {

PctlPtr make_pctl(PctlFormula::Kind k, std::vector<PctlPtr> args, std::string name = {},
                  Comparison cmp = Comparison::Greater, Rational p = {}) {
    for (const auto& a : args)
        if (!a) throw std::invalid_argument("pctl: null operand");
    auto f = std::make_shared<PctlFormula>();
    f->kind = k;
    f->args = std::move(args);
    f->name = std::move(name);
    f->comparison = cmp;
    f->threshold = std::move(p);
    return f;
}

}  // namespace

PctlPtr pctl_prop(std::string name) { return make_pctl(PctlFormula::Kind::Prop, {}, std::move(name)); }
PctlPtr pctl_not(PctlPtr f) { return make_pctl(PctlFormula::Kind::Not, {std::move(f)}); }
PctlPtr pctl_and(PctlPtr a, PctlPtr b) { return make_pctl(PctlFormula::Kind::And, {std::move(a), std::move(b)}); }
PctlPtr pctl_next(PctlPtr f) { return make_pctl(PctlFormula::Kind::Next, {std::move(f)}); }
PctlPtr pctl_until(PctlPtr a, PctlPtr b) { return make_pctl(PctlFormula::Kind::Until, {std::move(a), std::move(b)}); }

PctlPtr pctl_prob(Comparison cmp, Rational p, PctlPtr path) {
    if (cmp != Comparison::Greater && cmp != Comparison::GreaterEq)
        throw IllFormedFormula("pctl: probability bounds are > or >=");
    if (p < Rational(0) || p > Rational(1)) throw IllFormedFormula("pctl: threshold outside [0, 1]");
    return make_pctl(PctlFormula::Kind::Prob, {std::move(path)}, {}, cmp, std::move(p));
}

namespace {

class PctlParser {
public:
    explicit PctlParser(std::string_view text) : ts_(text) {}

    PctlPtr parse() {
        PctlPtr f = conjunction();
        if (!ts_.at_end()) ts_.fail("unexpected token");
        return f;
    }

private:
    TokenStream ts_;

    PctlPtr conjunction() {
        PctlPtr f = until();
        while (ts_.at("&")) {
            ts_.next();
            f = pctl_and(f, until());
        }
        return f;
    }

    PctlPtr until() {
        PctlPtr f = unary();
        if (ts_.at("U")) {
            ts_.next();
            return pctl_until(f, until());
        }
        return f;
    }

    PctlPtr unary() {
        if (ts_.at("!")) {
            ts_.next();
            return pctl_not(unary());
        }
        if (ts_.at("X")) {
            ts_.next();
            return pctl_next(unary());
        }
        if (ts_.at("Pr")) {
            ts_.next();
            auto [cmp, p] = ts_.threshold();
            return pctl_prob(cmp, p, unary());
        }
        if (ts_.at("(")) {
            ts_.next();
            PctlPtr f = conjunction();
            ts_.expect(")");
            return f;
        }
        if (!is_identifier(ts_.peek()) || ts_.at("U")) ts_.fail("expected a formula");
        return pctl_prop(ts_.next().text);
    }
};

}  // namespace

PctlPtr parse_pctl(std::string_view text) { return PctlParser(text).parse(); }

std::string to_string(const PctlFormula& f) {
    using K = PctlFormula::Kind;
    switch (f.kind) {
        case K::Prop: return f.name;
        case K::Not: return "!" + to_string(*f.args[0]);
        case K::And: return "(" + to_string(*f.args[0]) + " & " + to_string(*f.args[1]) + ")";
        case K::Prob:
            return std::string("Pr{") + cmp_text(f.comparison) + " " + f.threshold.to_string() + "}(" +
                   to_string(*f.args[0]) + ")";
        case K::Next: return "X " + to_string(*f.args[0]);
        case K::Until: return "(" + to_string(*f.args[0]) + " U " + to_string(*f.args[1]) + ")";
    }
    return {};
}

namespace {

void pctl_props(const PctlFormula& f, std::set<std::string>& out) {
    if (f.kind == PctlFormula::Kind::Prop) out.insert(f.name);
    for (const auto& a : f.args) pctl_props(*a, out);
}

class PctlEncoder {
public:
    explicit PctlEncoder(std::set<std::string> props) : fresh_(std::move(props)) {}
    std::vector<std::string> warnings;

    Formula encode(const PctlFormula& f, std::size_t prob_depth) {
        using K = PctlFormula::Kind;
        switch (f.kind) {
            case K::Prop: return prop(f.name);
            case K::Not: {
                Formula inner = encode(*f.args[0], prob_depth);
                if (prob_depth > 0 && contains_prob(inner))
                    warnings.push_back("negated probabilistic operator inside " + to_string(f) +
                                       " is encoded by threshold complement under maximizing schedulers");
                return neg(inner);
            }
            case K::And: return conj({encode(*f.args[0], prob_depth), encode(*f.args[1], prob_depth)});
            case K::Prob: return prob(f.comparison, f.threshold, encode(*f.args[0], prob_depth + 1));
            case K::Next: return diamond(kMdpAction, encode(*f.args[0], prob_depth));
            case K::Until: {
                Formula lhs = encode(*f.args[0], prob_depth);
                Formula rhs = encode(*f.args[1], prob_depth);
                std::string x = fresh_.next();
                return mu(x, disj({rhs, conj({lhs, diamond(kMdpAction, var(x))})}));
            }
        }
        throw std::logic_error("pctl_to_xpl: unknown kind");
    }

private:
    FreshVars fresh_;
};

}  // namespace

Encoding pctl_to_xpl(const PctlFormula& f) {
    std::set<std::string> props;
    pctl_props(f, props);
    PctlEncoder enc(props);
    Formula out = enc.encode(f, 0);
    return {out, enc.warnings};
}

// ---------------------------------------------------------------- RMDPs

std::string rmdp_state_name(const std::string& comp, const RmdpVertex& v) {
    return v.box.empty() ? comp + "." + v.node : comp + "." + v.box + "." + v.node;
}

namespace {

std::string describe(const std::string& comp, const RmdpVertex& v) {
    return v.box.empty() ? comp + ":" + v.node : comp + ":(" + v.box + ", " + v.node + ")";
}

enum class VertexRole { Node, Entry, Exit, CallPort, ReturnPort };

}  // namespace

Plts rmdp_to_plts(const Rmdp& r) {
    std::map<std::string, const RmdpComponent*> by_name;
    for (const auto& c : r.components)
        if (!by_name.emplace(c.name, &c).second) throw InvalidModel("rmdp: duplicate component " + c.name);

    Plts out;
    // Vertex roles and PLTS states, component by component.
    std::vector<std::map<RmdpVertex, VertexRole>> roles(r.components.size());
    for (std::size_t ci = 0; ci < r.components.size(); ++ci) {
        const auto& c = r.components[ci];
        auto& role = roles[ci];
        for (const auto& n : c.nodes)
            if (!role.emplace(RmdpVertex{{}, n}, VertexRole::Node).second)
                throw InvalidModel("rmdp: duplicate node " + c.name + ":" + n);
        for (const auto& n : c.entries) {
            auto it = role.find({{}, n});
            if (it == role.end()) throw InvalidModel("rmdp: entry " + c.name + ":" + n + " is not a node");
            it->second = VertexRole::Entry;
        }
        for (const auto& n : c.exits) {
            auto it = role.find({{}, n});
            if (it == role.end()) throw InvalidModel("rmdp: exit " + c.name + ":" + n + " is not a node");
            if (it->second == VertexRole::Entry)
                throw InvalidModel("rmdp: node " + c.name + ":" + n + " is both entry and exit");
            it->second = VertexRole::Exit;
        }
        std::set<std::string> box_names;
        for (const auto& [b, callee] : c.boxes) {
            if (!box_names.insert(b).second) throw InvalidModel("rmdp: duplicate box " + c.name + ":" + b);
            auto it = by_name.find(callee);
            if (it == by_name.end()) throw InvalidModel("rmdp: box " + c.name + ":" + b + " calls unknown " + callee);
            for (const auto& en : it->second->entries) role.emplace(RmdpVertex{b, en}, VertexRole::CallPort);
            for (const auto& ex : it->second->exits) role.emplace(RmdpVertex{b, ex}, VertexRole::ReturnPort);
        }
        for (const auto& [v, rl] : role) {
            std::string name = rmdp_state_name(c.name, v);
            if (out.find_state(name)) throw InvalidModel("rmdp: state name clash " + name);
            out.add_state(name);
        }
    }

    for (std::size_t ci = 0; ci < r.components.size(); ++ci) {
        const auto& c = r.components[ci];
        const auto& role = roles[ci];
        auto role_of = [&](const RmdpVertex& v) {
            auto it = role.find(v);
            if (it != role.end()) return it->second;
            if (!v.box.empty()) {
                bool known_box = std::any_of(c.boxes.begin(), c.boxes.end(),
                                             [&](const auto& b) { return b.first == v.box; });
                if (known_box)
                    throw InconsistentExitIndexing("rmdp: " + describe(c.name, v) +
                                                   " matches no entry or exit of the called component");
            }
            throw InvalidModel("rmdp: unknown vertex " + describe(c.name, v));
        };
        auto player_of = [&](const RmdpVertex& v) {
            auto it = c.player.find(v);
            return it == c.player.end() ? 0 : it->second;
        };
        for (const auto& [v, pl] : c.player) {
            VertexRole rl = role_of(v);
            if (pl < 0 || pl > 2) throw InvalidModel("rmdp: player of " + describe(c.name, v) + " must be 0, 1 or 2");
            if (pl != 0 && (rl == VertexRole::CallPort || rl == VertexRole::Exit))
                throw InvalidModel("rmdp: " + describe(c.name, v) + " is a call port or exit and must be player 0");
        }

        // Outgoing edges grouped by source, in input order.
        std::map<RmdpVertex, std::vector<const RmdpEdge*>> out_edges;
        for (const auto& e : c.edges) {
            VertexRole from = role_of(e.from), to = role_of(e.to);
            if (from == VertexRole::CallPort || from == VertexRole::Exit)
                throw InvalidModel("rmdp: " + describe(c.name, e.from) + " is a call port or exit and has no edges");
            if (to == VertexRole::Entry || to == VertexRole::ReturnPort)
                throw InvalidModel("rmdp: edge target " + describe(c.name, e.to) + " is an entry or return port");
            out_edges[e.from].push_back(&e);
        }
        for (const auto& [from, edges] : out_edges) {
            StateId s = out.state(rmdp_state_name(c.name, from));
            if (player_of(from) == 0) {
                std::map<RmdpVertex, Rational> dist;
                Rational total;
                for (const RmdpEdge* e : edges) {
                    if (e->prob <= Rational(0) || e->prob > Rational(1))
                        throw InvalidDistribution("rmdp: probability " + e->prob.to_string() + " on edge from " +
                                                  describe(c.name, from) + " outside (0, 1]");
                    dist[e->to] += e->prob;
                    total += e->prob;
                }
                if (total != Rational(1))
                    throw InvalidDistribution("rmdp: edges from " + describe(c.name, from) + " sum to " +
                                              total.to_string());
                for (const auto& [to, p] : dist) out.add_transition(s, "p", 0, out.state(rmdp_state_name(c.name, to)), p);
            } else {
                std::set<RmdpVertex> seen;
                ChoiceIndex choice = 0;
                for (const RmdpEdge* e : edges) {
                    if (!seen.insert(e->to).second) continue;
                    out.add_transition(s, "n", choice++, out.state(rmdp_state_name(c.name, e->to)), Rational(1));
                }
            }
        }

        for (const auto& [b, callee_name] : c.boxes) {
            const RmdpComponent& callee = *by_name.at(callee_name);
            for (const auto& en : callee.entries) {
                StateId port = out.state(rmdp_state_name(c.name, {b, en}));
                out.add_transition(port, "c", 0, out.state(rmdp_state_name(callee.name, {{}, en})), Rational(1));
                for (std::size_t i = 0; i < callee.exits.size(); ++i)
                    out.add_transition(port, "r" + std::to_string(i + 1), 0,
                                       out.state(rmdp_state_name(c.name, {b, callee.exits[i]})), Rational(1));
            }
        }
        for (std::size_t i = 0; i < c.exits.size(); ++i) {
            StateId ex = out.state(rmdp_state_name(c.name, {{}, c.exits[i]}));
            out.add_transition(ex, "e" + std::to_string(i + 1), 0, ex, Rational(1));
        }
    }
    return out;
}

Formula termination_system(std::size_t num_exits, std::size_t target_exit) {
    if (num_exits == 0 || target_exit == 0 || target_exit > num_exits)
        throw std::invalid_argument("termination_system: need 1 <= target_exit <= num_exits");
    auto t = [](std::size_t j) { return "T" + std::to_string(j); };
    std::vector<SimEquation> eqs;
    for (std::size_t j = 1; j <= num_exits; ++j) {
        std::vector<Formula> alts = {diamond("e" + std::to_string(j), tt()), diamond("p", var(t(j))),
                                     diamond("n", var(t(j)))};
        for (std::size_t k = 1; k <= num_exits; ++k)
            alts.push_back(conj({diamond("c", var(t(k))), diamond("r" + std::to_string(k), var(t(j)))}));
        eqs.push_back({FixSign::Least, t(j), disj(std::move(alts))});
    }
    return simfix(std::move(eqs), t(target_exit));
}

TerminationFormula termination_formula(std::size_t num_exits, std::size_t target_exit) {
    if (num_exits == 0 || target_exit == 0 || target_exit > num_exits)
        throw std::invalid_argument("termination_formula: need 1 <= target_exit <= num_exits");
    if (num_exits == 1) {
        Formula x = var("X");
        return {mu("X", disj({diamond("e1", tt()), diamond("p", x), diamond("n", x),
                              conj({diamond("c", x), diamond("r1", x)})})),
                true};
    }
    return {normalize_simfix(termination_system(num_exits, target_exit)), false};
}

// ---------------------------------------------------------------- branching processes

std::string child_action(std::size_t i) { return "child_" + std::to_string(i); }

std::size_t max_children(const BranchingProcess& bp) {
    std::size_t k = 0;
    for (const auto& t : bp.types)
        for (const auto& mode : t.modes)
            for (const auto& rule : mode) k = std::max(k, rule.children.size());
    return k;
}

Plts bp_to_plts(const BranchingProcess& bp) {
    Plts out;
    for (const auto& t : bp.types) {
        if (out.find_state(t.name)) throw InvalidModel("bp: duplicate type " + t.name);
        if (t.modes.empty()) throw InvalidModel("bp: type " + t.name + " has no rules");
        out.add_state(t.name, t.props);
    }
    for (const auto& t : bp.types) {
        StateId ts = out.state(t.name);
        for (std::size_t m = 0; m < t.modes.size(); ++m) {
            const auto& rules = t.modes[m];
            if (rules.empty()) throw InvalidModel("bp: type " + t.name + " mode " + std::to_string(m) + " is empty");
            Rational total;
            for (std::size_t r = 0; r < rules.size(); ++r) {
                const auto& rule = rules[r];
                if (rule.prob <= Rational(0) || rule.prob > Rational(1))
                    throw InvalidDistribution("bp: rule probability " + rule.prob.to_string() + " of " + t.name +
                                              " outside (0, 1]");
                total += rule.prob;
                std::string rname = t.name + ":" + std::to_string(m) + "." + std::to_string(r);
                if (out.find_state(rname)) throw InvalidModel("bp: state name clash " + rname);
                StateId rs = out.add_state(rname);
                out.add_transition(ts, "step", static_cast<ChoiceIndex>(m), rs, rule.prob);
                if (rule.children.empty()) out.add_transition(rs, "death", 0, rs, Rational(1));
                for (std::size_t i = 0; i < rule.children.size(); ++i) {
                    auto child = out.find_state(rule.children[i]);
                    if (!child) throw InvalidModel("bp: unknown child type " + rule.children[i]);
                    out.add_transition(rs, child_action(i + 1), 0, *child, Rational(1));
                }
            }
            if (total != Rational(1))
                throw InvalidDistribution("bp: rules of " + t.name + " mode " + std::to_string(m) + " sum to " +
                                          total.to_string());
        }
    }
    return out;
}

Formula extinction_formula(std::size_t max_children) {
    Formula x = var("X");
    std::vector<Formula> alts = {diamond("death", tt()), diamond("step", x)};
    if (max_children > 0) {
        std::vector<Formula> all = {diamond(child_action(1), x)};
        for (std::size_t i = 2; i <= max_children; ++i) all.push_back(box(child_action(i), x));
        alts.push_back(conj(std::move(all)));
    }
    return mu("X", disj(std::move(alts)));
}

// ---------------------------------------------------------------- PTTL

bool PttlFormula::is_state() const {
    switch (kind) {
        case Kind::Prop:
        case Kind::Not:
        case Kind::And:
        case Kind::Prob: return true;
        default: return false;
    }
}

namespace {

PttlPtr make_pttl(PttlFormula::Kind k, std::vector<PttlPtr> args, std::string name = {},
                  Comparison cmp = Comparison::Greater, Rational p = {}) {
    for (const auto& a : args)
        if (!a) throw std::invalid_argument("pttl: null operand");
    auto f = std::make_shared<PttlFormula>();
    f->kind = k;
    f->args = std::move(args);
    f->name = std::move(name);
    f->comparison = cmp;
    f->threshold = std::move(p);
    return f;
}

void require_state(const PttlPtr& f, const char* where) {
    if (!f || !f->is_state()) throw IllFormedFormula(std::string("pttl: ") + where + " expects a state formula");
}

}  // namespace

PttlPtr pttl_prop(std::string name) { return make_pttl(PttlFormula::Kind::Prop, {}, std::move(name)); }

PttlPtr pttl_not(PttlPtr f) {
    require_state(f, "!");
    return make_pttl(PttlFormula::Kind::Not, {std::move(f)});
}

PttlPtr pttl_and(PttlPtr a, PttlPtr b) {
    require_state(a, "&");
    require_state(b, "&");
    return make_pttl(PttlFormula::Kind::And, {std::move(a), std::move(b)});
}

PttlPtr pttl_prob(Comparison cmp, Rational p, PttlPtr path) {
    if (cmp != Comparison::Greater && cmp != Comparison::GreaterEq)
        throw IllFormedFormula("pttl: probability bounds are > or >=");
    if (p < Rational(0) || p > Rational(1)) throw IllFormedFormula("pttl: threshold outside [0, 1]");
    if (!path || path->is_state()) throw IllFormedFormula("pttl: Pr expects a path formula");
    return make_pttl(PttlFormula::Kind::Prob, {std::move(path)}, {}, cmp, std::move(p));
}

PttlPtr pttl_path(PttlFormula::Kind kind, PttlPtr a, PttlPtr b) {
    using K = PttlFormula::Kind;
    require_state(a, "path operator");
    if (kind == K::AX || kind == K::EX) {
        if (b) throw IllFormedFormula("pttl: AX and EX take one operand");
        return make_pttl(kind, {std::move(a)});
    }
    if (kind == K::AU || kind == K::EU || kind == K::AR || kind == K::ER) {
        require_state(b, "path operator");
        return make_pttl(kind, {std::move(a), std::move(b)});
    }
    throw std::invalid_argument("pttl_path: not a path operator");
}

namespace {

class PttlParser {
public:
    explicit PttlParser(std::string_view text) : ts_(text) {}

    PttlPtr parse() {
        PttlPtr f = at_path() ? path() : conjunction();
        if (!ts_.at_end()) ts_.fail("unexpected token");
        return f;
    }

private:
    TokenStream ts_;

    bool at_path() const {
        return ts_.at("AX") || ts_.at("EX") || ((ts_.at("A") || ts_.at("E")) && ts_.peek(1).text == "[");
    }

    PttlPtr conjunction() {
        PttlPtr f = unary();
        while (ts_.at("&")) {
            ts_.next();
            f = pttl_and(f, unary());
        }
        return f;
    }

    PttlPtr unary() {
        if (ts_.at("!")) {
            ts_.next();
            return pttl_not(unary());
        }
        if (ts_.at("Pr")) {
            ts_.next();
            auto [cmp, p] = ts_.threshold();
            bool paren = ts_.at("(");
            if (paren) ts_.next();
            if (!at_path()) ts_.fail("expected a path formula");
            PttlPtr body = path();
            if (paren) ts_.expect(")");
            return pttl_prob(cmp, p, body);
        }
        if (ts_.at("(")) {
            ts_.next();
            PttlPtr f = conjunction();
            ts_.expect(")");
            return f;
        }
        if (at_path()) ts_.fail("path formula where a state formula is expected");
        if (!is_identifier(ts_.peek())) ts_.fail("expected a formula");
        return pttl_prop(ts_.next().text);
    }

    PttlPtr path() {
        using K = PttlFormula::Kind;
        if (ts_.at("AX") || ts_.at("EX")) {
            K k = ts_.next().text == "AX" ? K::AX : K::EX;
            return pttl_path(k, unary());
        }
        bool universal = ts_.next().text == "A";
        ts_.expect("[");
        PttlPtr lhs = conjunction();
        bool until;
        if (ts_.at("U")) {
            until = true;
        } else if (ts_.at("R")) {
            until = false;
        } else {
            ts_.fail("expected 'U' or 'R'");
        }
        ts_.next();
        PttlPtr rhs = conjunction();
        ts_.expect("]");
        K k = until ? (universal ? K::AU : K::EU) : (universal ? K::AR : K::ER);
        return pttl_path(k, lhs, rhs);
    }
};

}  // namespace

PttlPtr parse_pttl(std::string_view text) { return PttlParser(text).parse(); }

std::string to_string(const PttlFormula& f) {
    using K = PttlFormula::Kind;
    auto a = [&](std::size_t i) { return to_string(*f.args[i]); };
    switch (f.kind) {
        case K::Prop: return f.name;
        case K::Not: return "!" + a(0);
        case K::And: return "(" + a(0) + " & " + a(1) + ")";
        case K::Prob:
            return std::string("Pr{") + cmp_text(f.comparison) + " " + f.threshold.to_string() + "}(" + a(0) + ")";
        case K::AX: return "AX " + a(0);
        case K::EX: return "EX " + a(0);
        case K::AU: return "A[" + a(0) + " U " + a(1) + "]";
        case K::EU: return "E[" + a(0) + " U " + a(1) + "]";
        case K::AR: return "A[" + a(0) + " R " + a(1) + "]";
        case K::ER: return "E[" + a(0) + " R " + a(1) + "]";
    }
    return {};
}

namespace {

void pttl_props(const PttlFormula& f, std::set<std::string>& out) {
    if (f.kind == PttlFormula::Kind::Prop) out.insert(f.name);
    for (const auto& a : f.args) pttl_props(*a, out);
}

class PttlEncoder {
public:
    explicit PttlEncoder(std::set<std::string> props) : fresh_(std::move(props)) {}
    std::vector<std::string> warnings;

    Formula encode(const PttlFormula& f, std::size_t prob_depth) {
        using K = PttlFormula::Kind;
        auto sub = [&](std::size_t i) { return encode(*f.args[i], prob_depth); };
        switch (f.kind) {
            case K::Prop: return prop(f.name);
            case K::Not: {
                Formula inner = sub(0);
                if (prob_depth > 0 && contains_prob(inner))
                    warnings.push_back("negated probabilistic operator inside " + to_string(f) +
                                       " is encoded by threshold complement under maximizing schedulers");
                return neg(inner);
            }
            case K::And: return conj({sub(0), sub(1)});
            case K::Prob: return prob(f.comparison, f.threshold, encode(*f.args[0], prob_depth + 1));
            case K::AX: return box(kAnyAction, sub(0));
            case K::EX: return diamond(kAnyAction, sub(0));
            case K::AU:
            case K::EU: {
                std::string x = fresh_.next();
                Formula step = f.kind == K::AU ? box(kAnyAction, var(x)) : diamond(kAnyAction, var(x));
                return mu(x, disj({sub(1), conj({sub(0), step})}));
            }
            case K::AR:
            case K::ER: {
                std::string x = fresh_.next();
                Formula step = f.kind == K::AR ? box(kAnyAction, var(x)) : diamond(kAnyAction, var(x));
                return nu(x, conj({sub(1), disj({sub(0), step})}));
            }
        }
        throw std::logic_error("pttl_to_xpl: unknown kind");
    }

private:
    FreshVars fresh_;
};

}  // namespace

Encoding pttl_to_xpl(const PttlFormula& f) {
    std::set<std::string> props;
    pttl_props(f, props);
    PttlEncoder enc(props);
    Formula out = enc.encode(f, 0);
    return {out, enc.warnings};
}

Formula expand_any_action(const Formula& f, const std::set<ActionLabel>& alphabet) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
        case FormulaKind::Var: return f;
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> cs;
            for (const auto& c : f.children()) cs.push_back(expand_any_action(c, alphabet));
            return rebuild_junction(f.kind(), std::move(cs));
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box: {
            Formula body = expand_any_action(f.body(), alphabet);
            if (f.name() != kAnyAction) return with_body(f, body);
            std::vector<Formula> parts;
            for (const auto& a : alphabet) {
                if (a == kAnyAction) continue;
                parts.push_back(f.kind() == FormulaKind::Diamond ? diamond(a, body) : box(a, body));
            }
            return f.kind() == FormulaKind::Diamond ? disj(std::move(parts)) : conj(std::move(parts));
        }
        case FormulaKind::Mu:
        case FormulaKind::Nu:
        case FormulaKind::Prob: return with_body(f, expand_any_action(f.body(), alphabet));
        case FormulaKind::SimFix: {
            std::vector<SimEquation> eqs;
            for (std::size_t i = 0; i < f.children().size(); ++i)
                eqs.push_back({f.sim_signs()[i], f.sim_vars()[i], expand_any_action(f.children()[i], alphabet)});
            return simfix(std::move(eqs), f.name());
        }
    }
    throw std::logic_error("expand_any_action: unknown formula kind");
}

}  // namespace xpl
