#include "xpl/formula_ops.hpp"
#include "xpl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace xpl {

// ---------------------------------------------------------------- parsing

namespace {

const std::set<std::string> kKeywords = {"tt", "ff", "mu", "nu", "fix", "Pr"};

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : s_(text) {}

    Formula parse() {
        Formula f = parse_or();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<std::string> bound_;

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    std::string identifier() {
        skip_ws();
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected an identifier");
        std::size_t b = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    std::string action() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (ident_char(s_[pos_]) || s_[pos_] == '-')) ++pos_;
        if (b == pos_) fail("expected an action label");
        return std::string(s_.substr(b, pos_ - b));
    }

    bool is_bound(const std::string& name) const {
        return std::find(bound_.begin(), bound_.end(), name) != bound_.end();
    }

    Formula parse_or() {
        std::vector<Formula> parts{parse_and()};
        while (accept("|")) parts.push_back(parse_and());
        return parts.size() == 1 ? parts.front() : disj(std::move(parts));
    }

    Formula parse_and() {
        std::vector<Formula> parts{parse_unary()};
        while (accept("&")) parts.push_back(parse_unary());
        return parts.size() == 1 ? parts.front() : conj(std::move(parts));
    }

    Formula parenthesized() {
        expect("(");
        Formula f = parse_or();
        expect(")");
        return f;
    }

    Comparison comparison() {
        if (accept(">=")) return Comparison::GreaterEq;
        if (accept("<=")) return Comparison::LessEq;
        if (accept(">")) return Comparison::Greater;
        if (accept("<")) return Comparison::Less;
        fail("expected one of >, >=, <, <=");
    }

    Rational rational() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                    s_[pos_] == '/'))
            ++pos_;
        if (b == pos_) fail("expected a rational number");
        try {
            return Rational::parse(s_.substr(b, pos_ - b));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    Formula binder(FixSign sign) {
        std::string v = identifier();
        if (kKeywords.count(v)) fail("'" + v + "' cannot be used as a variable");
        expect(".");
        bound_.push_back(v);
        Formula body = parenthesized();
        bound_.pop_back();
        return fix(sign, v, body);
    }

    Formula block(std::optional<FixSign> uniform) {
        expect("{");
        // Equation names are only known after the whole block is read, so the
        // bodies are parsed first and their block variables rebound afterwards.
        std::vector<SimEquation> eqs;
        do {
            FixSign sign;
            if (uniform) {
                sign = *uniform;
            } else if (accept("mu")) {
                sign = FixSign::Least;
            } else if (accept("nu")) {
                sign = FixSign::Greatest;
            } else {
                fail("expected 'mu' or 'nu' inside a fix block");
            }
            std::string v = identifier();
            if (kKeywords.count(v)) fail("'" + v + "' cannot be used as a variable");
            expect("=");
            Formula body = parse_or();
            eqs.push_back({sign, v, body});
        } while (accept(";") || accept(","));
        expect("}");
        accept(".");
        std::string principal = identifier();
        std::set<std::string> names;
        for (const auto& e : eqs) names.insert(e.var);
        for (auto& e : eqs) e.body = props_to_vars(e.body, names);
        try {
            return simfix(std::move(eqs), principal);
        } catch (const IllFormedFormula& e) {
            fail(e.what());
        }
    }

    Formula props_to_vars(const Formula& f, const std::set<std::string>& names) {
        switch (f.kind()) {
            case FormulaKind::Prop:
                return names.count(f.name()) ? var(f.name()) : f;
            case FormulaKind::NegProp:
                if (names.count(f.name())) fail("variable " + f.name() + " cannot be negated");
                return f;
            case FormulaKind::And:
            case FormulaKind::Or: {
                std::vector<Formula> cs;
                for (const auto& c : f.children()) cs.push_back(props_to_vars(c, names));
                return rebuild_junction(f.kind(), std::move(cs));
            }
            case FormulaKind::Mu:
            case FormulaKind::Nu: {
                if (!names.count(f.name())) return with_body(f, props_to_vars(f.body(), names));
                auto inner = names;
                inner.erase(f.name());
                return with_body(f, props_to_vars(f.body(), inner));
            }
            case FormulaKind::Diamond:
            case FormulaKind::Box:
            case FormulaKind::Prob:
                return with_body(f, props_to_vars(f.body(), names));
            case FormulaKind::SimFix: {
                auto inner = names;
                for (const auto& v : f.sim_vars()) inner.erase(v);
                std::vector<SimEquation> eqs;
                for (std::size_t i = 0; i < f.children().size(); ++i)
                    eqs.push_back({f.sim_signs()[i], f.sim_vars()[i], props_to_vars(f.children()[i], inner)});
                return simfix(std::move(eqs), f.name());
            }
            default:
                return f;
        }
    }

    Formula parse_unary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of formula");
        char c = s_[pos_];
        if (c == '(') return parenthesized();
        if (c == '!') {
            ++pos_;
            std::string p = identifier();
            if (kKeywords.count(p)) {
                if (p == "tt") return ff();
                if (p == "ff") return tt();
                fail("only propositions can be negated");
            }
            if (is_bound(p)) fail("variable " + p + " cannot be negated");
            return neg_prop(p);
        }
        if (c == '<') {
            ++pos_;
            std::string a = action();
            expect(">");
            return diamond(a, parse_unary());
        }
        if (c == '[') {
            ++pos_;
            std::string a = action();
            expect("]");
            return box(a, parse_unary());
        }
        std::string id = identifier();
        if (id == "tt") return tt();
        if (id == "ff") return ff();
        if (id == "mu" || id == "nu") {
            FixSign sign = id == "mu" ? FixSign::Least : FixSign::Greatest;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '{') return block(sign);
            return binder(sign);
        }
        if (id == "fix") return block(std::nullopt);
        if (id == "Pr") {
            expect("{");
            Comparison cmp = comparison();
            Rational p = rational();
            expect("}");
            Formula body = parenthesized();
            try {
                return prob(cmp, p, body);
            } catch (const IllFormedFormula& e) {
                fail(e.what());
            }
        }
        return is_bound(id) ? var(id) : prop(id);
    }
};

}  // namespace

Formula parse_formula(std::string_view text) {
    return normalize_simfix(rename_apart(FormulaParser(text).parse()));
}

// ---------------------------------------------------------------- negation

Formula neg(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::True: return ff();
        case FormulaKind::False: return tt();
        case FormulaKind::Prop: return neg_prop(f.name());
        case FormulaKind::NegProp: return prop(f.name());
        case FormulaKind::Var: return f;
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> cs;
            for (const auto& c : f.children()) cs.push_back(neg(c));
            return f.kind() == FormulaKind::And ? disj(std::move(cs)) : conj(std::move(cs));
        }
        case FormulaKind::Diamond: return box(f.name(), neg(f.body()));
        case FormulaKind::Box: return diamond(f.name(), neg(f.body()));
        case FormulaKind::Mu: return nu(f.name(), neg(f.body()));
        case FormulaKind::Nu: return mu(f.name(), neg(f.body()));
        case FormulaKind::Prob: {
            Comparison d{};
            switch (f.comparison()) {
                case Comparison::Greater: d = Comparison::LessEq; break;
                case Comparison::GreaterEq: d = Comparison::Less; break;
                case Comparison::Less: d = Comparison::GreaterEq; break;
                case Comparison::LessEq: d = Comparison::Greater; break;
            }
            return prob(d, f.threshold(), f.body());
        }
        case FormulaKind::SimFix: {
            std::vector<SimEquation> eqs;
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                FixSign s = f.sim_signs()[i] == FixSign::Least ? FixSign::Greatest : FixSign::Least;
                eqs.push_back({s, f.sim_vars()[i], neg(f.children()[i])});
            }
            return simfix(std::move(eqs), f.name());
        }
    }
    throw std::logic_error("neg: unknown formula kind");
}

// ---------------------------------------------------------------- substitution

Formula substitute(const Formula& f, const std::string& v, const Formula& g) {
    if (!f.has_free(v)) return f;
    switch (f.kind()) {
        case FormulaKind::Var:
            return g;
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> cs;
            cs.reserve(f.children().size());
            for (const auto& c : f.children()) cs.push_back(substitute(c, v, g));
            return rebuild_junction(f.kind(), std::move(cs));
        }
        case FormulaKind::Mu:
        case FormulaKind::Nu:
            if (g.has_free(f.name()))
                throw std::logic_error("substitution of " + v + " would capture " + f.name());
            return with_body(f, substitute(f.body(), v, g));
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::Prob:
            return with_body(f, substitute(f.body(), v, g));
        case FormulaKind::SimFix: {
            for (const auto& w : f.sim_vars())
                if (g.has_free(w)) throw std::logic_error("substitution of " + v + " would capture " + w);
            std::vector<SimEquation> eqs;
            for (std::size_t i = 0; i < f.children().size(); ++i)
                eqs.push_back({f.sim_signs()[i], f.sim_vars()[i], substitute(f.children()[i], v, g)});
            return simfix(std::move(eqs), f.name());
        }
        default:
            return f;
    }
}

Formula unfold(const Formula& binder) {
    if (!binder.is_binder()) throw std::logic_error("unfold on a non-binder: " + binder.to_string());
    return substitute(binder.body(), binder.name(), binder);
}

// ---------------------------------------------------------------- renaming

namespace {

class Renamer {
public:
    explicit Renamer(const Formula& f) {
        for (const auto& p : propositions(f)) used_.insert(p);
        for (const auto& v : f.free_vars()) used_.insert(v);
    }

    Formula go(const Formula& f, const std::map<std::string, std::string>& env) {
        switch (f.kind()) {
            case FormulaKind::Var: {
                auto it = env.find(f.name());
                return it == env.end() ? f : var(it->second);
            }
            case FormulaKind::And:
            case FormulaKind::Or: {
                std::vector<Formula> cs;
                for (const auto& c : f.children()) cs.push_back(go(c, env));
                return rebuild_junction(f.kind(), std::move(cs));
            }
            case FormulaKind::Diamond:
            case FormulaKind::Box:
            case FormulaKind::Prob:
                return with_body(f, go(f.body(), env));
            case FormulaKind::Mu:
            case FormulaKind::Nu: {
                std::string fresh = fresh_name(f.name());
                auto inner = env;
                inner[f.name()] = fresh;
                return fix(f.kind() == FormulaKind::Mu ? FixSign::Least : FixSign::Greatest, fresh,
                           go(f.body(), inner));
            }
            case FormulaKind::SimFix: {
                auto inner = env;
                std::vector<std::string> names;
                for (const auto& v : f.sim_vars()) {
                    names.push_back(fresh_name(v));
                    inner[v] = names.back();
                }
                std::vector<SimEquation> eqs;
                for (std::size_t i = 0; i < names.size(); ++i)
                    eqs.push_back({f.sim_signs()[i], names[i], go(f.children()[i], inner)});
                return simfix(std::move(eqs), inner.at(f.name()));
            }
            default:
                return f;
        }
    }

private:
    std::set<std::string> used_;

    std::string fresh_name(const std::string& base) {
        std::string name = base;
        for (int i = 2; used_.count(name); ++i) name = base + "_" + std::to_string(i);
        used_.insert(name);
        return name;
    }
};

}  // namespace

Formula rename_apart(const Formula& f) { return Renamer(f).go(f, {}); }

// ---------------------------------------------------------------- simultaneous blocks

namespace {

class BlockEliminator {
public:
    BlockEliminator(FixSign sign, std::vector<std::string> vars, std::vector<Formula> bodies)
        : sign_(sign), vars_(std::move(vars)), bodies_(std::move(bodies)) {}

    // Solution for variable t when the variables in `open` are still to be
    // bound locally; the remaining block variables are bound further out.
    Formula solve(std::uint64_t open, std::size_t t) {
        auto key = std::make_pair(open, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::uint64_t rest = open & ~(std::uint64_t{1} << t);
        Formula body = bodies_[t];
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (rest & (std::uint64_t{1} << v)) body = substitute(body, vars_[v], solve(rest, v));
        Formula r = fix(sign_, vars_[t], body);
        memo_.emplace(key, r);
        return r;
    }

private:
    FixSign sign_;
    std::vector<std::string> vars_;
    std::vector<Formula> bodies_;
    std::map<std::pair<std::uint64_t, std::size_t>, Formula> memo_;
};

}  // namespace

Formula normalize_simfix(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> cs;
            for (const auto& c : f.children()) cs.push_back(normalize_simfix(c));
            return rebuild_junction(f.kind(), std::move(cs));
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::Prob:
        case FormulaKind::Mu:
        case FormulaKind::Nu:
            return with_body(f, normalize_simfix(f.body()));
        case FormulaKind::SimFix: {
            const auto& signs = f.sim_signs();
            if (!std::all_of(signs.begin(), signs.end(), [&](FixSign s) { return s == signs[0]; }))
                throw MixedSignBlock("simultaneous block " + f.to_string() + " mixes mu and nu equations");
            if (signs.size() > 63) throw SizeBudgetExceeded("simultaneous block with more than 63 equations");
            std::vector<Formula> bodies;
            for (const auto& c : f.children()) bodies.push_back(normalize_simfix(c));
            const auto& vars = f.sim_vars();
            std::size_t principal = std::find(vars.begin(), vars.end(), f.name()) - vars.begin();
            std::uint64_t all = vars.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << vars.size()) - 1;
            return BlockEliminator(signs[0], vars, bodies).solve(all, principal);
        }
        default:
            return f;
    }
}

// ---------------------------------------------------------------- well-formedness

namespace {

bool occurs_unguarded(const Formula& f, const std::string& v) {
    switch (f.kind()) {
        case FormulaKind::Var: return f.name() == v;
        case FormulaKind::And:
        case FormulaKind::Or:
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](const Formula& c) { return occurs_unguarded(c, v); });
        case FormulaKind::Mu:
        case FormulaKind::Nu: return f.name() != v && occurs_unguarded(f.body(), v);
        case FormulaKind::SimFix: {
            const auto& vs = f.sim_vars();
            if (std::find(vs.begin(), vs.end(), v) != vs.end()) return false;
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](const Formula& c) { return occurs_unguarded(c, v); });
        }
        default: return false;
    }
}

struct Binding {
    std::string var;
    FixSign sign;
};

void check(const Formula& f, std::vector<Binding>& env, std::vector<Violation>& out) {
    switch (f.kind()) {
        case FormulaKind::Prob: {
            if (!f.body().is_closed()) {
                std::string vs;
                for (const auto& v : f.body().free_vars()) vs += (vs.empty() ? "" : ", ") + v;
                out.push_back({"free-variable-under-probability", f.to_string(), "free variables: " + vs});
            }
            std::vector<Binding> fresh;
            check(f.body(), fresh, out);
            return;
        }
        case FormulaKind::Mu:
        case FormulaKind::Nu: {
            FixSign sign = f.kind() == FormulaKind::Mu ? FixSign::Least : FixSign::Greatest;
            if (occurs_unguarded(f.body(), f.name()))
                out.push_back({"unguarded-variable", f.to_string(),
                               "variable " + f.name() + " occurs outside any modality"});
            for (const auto& b : env)
                if (b.sign != sign && f.has_free(b.var))
                    out.push_back({"alternation", f.to_string(),
                                   std::string(to_string(sign)) + "-binder " + f.name() + " depends on " +
                                       to_string(b.sign) + "-variable " + b.var});
            env.push_back({f.name(), sign});
            check(f.body(), env, out);
            env.pop_back();
            return;
        }
        case FormulaKind::SimFix: {
            Formula n;
            try {
                n = normalize_simfix(f);
            } catch (const MixedSignBlock& e) {
                out.push_back({"mixed-sign-block", f.to_string(), e.what()});
                return;
            }
            check(n, env, out);
            return;
        }
        default:
            for (const auto& c : f.children()) check(c, env, out);
    }
}

}  // namespace

std::vector<Violation> check_wellformed(const Formula& f) {
    std::vector<Violation> out;
    if (!f.is_closed()) {
        std::string vs;
        for (const auto& v : f.free_vars()) vs += (vs.empty() ? "" : ", ") + v;
        out.push_back({"free-variable", f.to_string(), "free variables: " + vs});
    }
    std::vector<Binding> env;
    check(f, env, out);
    return out;
}

}  // namespace xpl
