#include "xpl/formula.hpp"
#include "xpl/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xpl {

struct Formula::Node {
    FormulaKind kind;
    std::string name;
    std::vector<Formula> children;
    Comparison cmp = Comparison::Greater;
    Rational threshold;
    std::vector<FixSign> sim_signs;
    std::vector<std::string> sim_vars;

    std::size_t hash = 0;
    std::size_t size = 1;
    bool state = false;
    std::vector<std::string> free;
};

namespace {

void hash_mix(std::size_t& seed, std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }

const std::shared_ptr<const Formula::Node>& shared_tt() {
    static const std::shared_ptr<const Formula::Node> n = [] {
        auto p = std::make_shared<Formula::Node>();
        p->kind = FormulaKind::True;
        p->state = true;
        p->hash = 0x51ed27;
        return p;
    }();
    return n;
}

}  // namespace

Formula make_node(FormulaKind kind, std::string name, std::vector<Formula> children, Comparison cmp,
                  Rational threshold, std::vector<FixSign> sim_signs, std::vector<std::string> sim_vars) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = kind;
    n->name = std::move(name);
    n->children = std::move(children);
    n->cmp = cmp;
    n->threshold = std::move(threshold);
    n->sim_signs = std::move(sim_signs);
    n->sim_vars = std::move(sim_vars);

    std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ULL;
    hash_mix(h, std::hash<std::string>{}(n->name));
    for (const auto& c : n->children) {
        hash_mix(h, c.hash());
        n->size += c.size();
    }
    if (kind == FormulaKind::Prob) {
        hash_mix(h, static_cast<std::size_t>(cmp));
        hash_mix(h, n->threshold.hash());
    }
    for (std::size_t i = 0; i < n->sim_vars.size(); ++i) {
        hash_mix(h, std::hash<std::string>{}(n->sim_vars[i]));
        hash_mix(h, static_cast<std::size_t>(n->sim_signs[i]));
    }
    n->hash = h;

    switch (kind) {
        case FormulaKind::True:
        case FormulaKind::False:
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
        case FormulaKind::Prob:
            n->state = true;
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
            n->state = std::all_of(n->children.begin(), n->children.end(),
                                   [](const Formula& c) { return c.is_state(); });
            break;
        default:
            n->state = false;
    }

    std::set<std::string> fv;
    switch (kind) {
        case FormulaKind::Var:
            fv.insert(n->name);
            break;
        case FormulaKind::Mu:
        case FormulaKind::Nu:
            fv.insert(n->children[0].free_vars().begin(), n->children[0].free_vars().end());
            fv.erase(n->name);
            break;
        case FormulaKind::SimFix:
            for (const auto& c : n->children) fv.insert(c.free_vars().begin(), c.free_vars().end());
            for (const auto& v : n->sim_vars) fv.erase(v);
            break;
        default:
            for (const auto& c : n->children) fv.insert(c.free_vars().begin(), c.free_vars().end());
    }
    n->free.assign(fv.begin(), fv.end());
    return Formula(std::move(n));
}

Formula::Formula() : n_(shared_tt()) {}

FormulaKind Formula::kind() const { return n_->kind; }
const std::string& Formula::name() const { return n_->name; }
const std::vector<Formula>& Formula::children() const { return n_->children; }
const Formula& Formula::body() const {
    if (n_->children.empty()) throw std::logic_error("formula has no body: " + to_string());
    return n_->children.front();
}
Comparison Formula::comparison() const { return n_->cmp; }
const Rational& Formula::threshold() const { return n_->threshold; }
const std::vector<FixSign>& Formula::sim_signs() const { return n_->sim_signs; }
const std::vector<std::string>& Formula::sim_vars() const { return n_->sim_vars; }
bool Formula::is_state() const { return n_->state; }
const std::vector<std::string>& Formula::free_vars() const { return n_->free; }
bool Formula::has_free(const std::string& v) const {
    return std::binary_search(n_->free.begin(), n_->free.end(), v);
}
std::size_t Formula::size() const { return n_->size; }
std::size_t Formula::hash() const { return n_->hash; }

bool operator==(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return std::strong_ordering::equal;
    const auto& x = *a.n_;
    const auto& y = *b.n_;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    if (auto c = x.name.compare(y.name); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.kind == FormulaKind::Prob) {
        if (auto c = x.cmp <=> y.cmp; c != 0) return c;
        if (auto c = x.threshold <=> y.threshold; c != 0) return c;
    }
    if (auto c = x.sim_vars <=> y.sim_vars; c != 0) return c;
    if (auto c = x.sim_signs <=> y.sim_signs; c != 0) return c;
    std::size_t n = std::min(x.children.size(), y.children.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
    return x.children.size() <=> y.children.size();
}

const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::Greater: return ">";
        case Comparison::GreaterEq: return ">=";
        case Comparison::Less: return "<";
        case Comparison::LessEq: return "<=";
    }
    return "?";
}

const char* to_string(FixSign s) { return s == FixSign::Least ? "mu" : "nu"; }

bool compare(double value, Comparison c, double p) {
    switch (c) {
        case Comparison::Greater: return value > p;
        case Comparison::GreaterEq: return value >= p;
        case Comparison::Less: return value < p;
        case Comparison::LessEq: return value <= p;
    }
    return false;
}

Formula tt() { return Formula(); }
Formula ff() {
    static const Formula f = make_node(FormulaKind::False, {}, {}, Comparison::Greater, {}, {}, {});
    return f;
}

namespace {

void check_identifier(const std::string& s, const char* what) {
    if (s.empty()) throw IllFormedFormula(std::string("empty ") + what);
}

// Flatten, drop units, short-circuit on zeros, sort and deduplicate.
Formula junction(FormulaKind kind, std::vector<Formula> children) {
    const FormulaKind unit = kind == FormulaKind::And ? FormulaKind::True : FormulaKind::False;
    const FormulaKind zero = kind == FormulaKind::And ? FormulaKind::False : FormulaKind::True;
    std::vector<Formula> flat;
    flat.reserve(children.size());
    for (auto& c : children) {
        if (c.kind() == zero) return c;
        if (c.kind() == unit) continue;
        if (c.kind() == kind) {
            for (const auto& g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return kind == FormulaKind::And ? tt() : ff();
    if (flat.size() == 1) return flat.front();
    return make_node(kind, {}, std::move(flat), Comparison::Greater, {}, {}, {});
}

}  // namespace

Formula prop(const std::string& name) {
    check_identifier(name, "proposition");
    return make_node(FormulaKind::Prop, name, {}, Comparison::Greater, {}, {}, {});
}
Formula neg_prop(const std::string& name) {
    check_identifier(name, "proposition");
    return make_node(FormulaKind::NegProp, name, {}, Comparison::Greater, {}, {}, {});
}
Formula var(const std::string& name) {
    check_identifier(name, "variable");
    return make_node(FormulaKind::Var, name, {}, Comparison::Greater, {}, {}, {});
}
Formula conj(std::vector<Formula> children) { return junction(FormulaKind::And, std::move(children)); }
Formula disj(std::vector<Formula> children) { return junction(FormulaKind::Or, std::move(children)); }
Formula conj(std::initializer_list<Formula> children) { return conj(std::vector<Formula>(children)); }
Formula disj(std::initializer_list<Formula> children) { return disj(std::vector<Formula>(children)); }

Formula diamond(const std::string& action, Formula body) {
    check_identifier(action, "action label");
    return make_node(FormulaKind::Diamond, action, {std::move(body)}, Comparison::Greater, {}, {}, {});
}
Formula box(const std::string& action, Formula body) {
    check_identifier(action, "action label");
    return make_node(FormulaKind::Box, action, {std::move(body)}, Comparison::Greater, {}, {}, {});
}
Formula fix(FixSign sign, const std::string& v, Formula body) {
    check_identifier(v, "variable");
    return make_node(sign == FixSign::Least ? FormulaKind::Mu : FormulaKind::Nu, v, {std::move(body)},
                     Comparison::Greater, {}, {}, {});
}
Formula mu(const std::string& v, Formula body) { return fix(FixSign::Least, v, std::move(body)); }
Formula nu(const std::string& v, Formula body) { return fix(FixSign::Greatest, v, std::move(body)); }

Formula prob(Comparison cmp, Rational threshold, Formula body) {
    if (threshold < Rational(0) || threshold > Rational(1))
        throw IllFormedFormula("probability threshold " + threshold.to_string() + " is outside [0,1]");
    return make_node(FormulaKind::Prob, {}, {std::move(body)}, cmp, std::move(threshold), {}, {});
}

Formula simfix(std::vector<SimEquation> equations, const std::string& principal) {
    if (equations.empty()) throw IllFormedFormula("empty simultaneous fixed-point block");
    std::vector<FixSign> signs;
    std::vector<std::string> vars;
    std::vector<Formula> bodies;
    for (auto& e : equations) {
        check_identifier(e.var, "variable");
        if (std::find(vars.begin(), vars.end(), e.var) != vars.end())
            throw IllFormedFormula("variable " + e.var + " defined twice in a simultaneous block");
        signs.push_back(e.sign);
        vars.push_back(e.var);
        bodies.push_back(std::move(e.body));
    }
    if (std::find(vars.begin(), vars.end(), principal) == vars.end())
        throw IllFormedFormula("principal variable " + principal + " is not defined in its block");
    return make_node(FormulaKind::SimFix, principal, std::move(bodies), Comparison::Greater, {}, std::move(signs),
                     std::move(vars));
}

Formula rebuild_junction(FormulaKind kind, std::vector<Formula> children) {
    if (kind == FormulaKind::And) return conj(std::move(children));
    if (kind == FormulaKind::Or) return disj(std::move(children));
    throw std::logic_error("rebuild_junction on a non-junction kind");
}

Formula with_body(const Formula& f, Formula body) {
    switch (f.kind()) {
        case FormulaKind::Diamond: return diamond(f.name(), std::move(body));
        case FormulaKind::Box: return box(f.name(), std::move(body));
        case FormulaKind::Mu: return mu(f.name(), std::move(body));
        case FormulaKind::Nu: return nu(f.name(), std::move(body));
        case FormulaKind::Prob: return prob(f.comparison(), f.threshold(), std::move(body));
        default: throw std::logic_error("with_body on a formula without a single body");
    }
}

namespace {

void collect_props(const Formula& f, std::set<std::string>& out) {
    if (f.kind() == FormulaKind::Prop || f.kind() == FormulaKind::NegProp) out.insert(f.name());
    for (const auto& c : f.children()) collect_props(c, out);
}

void print(std::ostream& os, const Formula& f);

void print_operand(std::ostream& os, const Formula& f) {
    if (f.is_junction()) {
        os << '(';
        print(os, f);
        os << ')';
    } else {
        print(os, f);
    }
}

void print(std::ostream& os, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::True: os << "tt"; break;
        case FormulaKind::False: os << "ff"; break;
        case FormulaKind::Prop: os << f.name(); break;
        case FormulaKind::NegProp: os << '!' << f.name(); break;
        case FormulaKind::Var: os << f.name(); break;
        case FormulaKind::And:
        case FormulaKind::Or: {
            const char* sep = f.kind() == FormulaKind::And ? " & " : " | ";
            bool first = true;
            for (const auto& c : f.children()) {
                if (!first) os << sep;
                first = false;
                print_operand(os, c);
            }
            break;
        }
        case FormulaKind::Diamond:
            os << '<' << f.name() << '>';
            print_operand(os, f.body());
            break;
        case FormulaKind::Box:
            os << '[' << f.name() << ']';
            print_operand(os, f.body());
            break;
        case FormulaKind::Mu:
        case FormulaKind::Nu:
            os << (f.kind() == FormulaKind::Mu ? "mu " : "nu ") << f.name() << ".(";
            print(os, f.body());
            os << ')';
            break;
        case FormulaKind::Prob:
            os << "Pr{" << to_string(f.comparison()) << ' ' << f.threshold() << "}(";
            print(os, f.body());
            os << ')';
            break;
        case FormulaKind::SimFix: {
            const auto& signs = f.sim_signs();
            bool uniform = std::all_of(signs.begin(), signs.end(), [&](FixSign s) { return s == signs[0]; });
            os << (uniform ? to_string(signs[0]) : "fix") << " { ";
            for (std::size_t i = 0; i < signs.size(); ++i) {
                if (i) os << "; ";
                if (!uniform) os << to_string(signs[i]) << ' ';
                os << f.sim_vars()[i] << " = (";
                print(os, f.children()[i]);
                os << ')';
            }
            os << " } " << f.name();
            break;
        }
    }
}

}  // namespace

std::vector<std::string> propositions(const Formula& f) {
    std::set<std::string> s;
    collect_props(f, s);
    return {s.begin(), s.end()};
}

std::string Formula::to_string() const {
    std::ostringstream os;
    print(os, *this);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
    print(os, f);
    return os;
}

}  // namespace xpl
