#include "xpl/depgraph.hpp"
#include "xpl/formula_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace xpl {

bool Closure::contains(const Formula& f) const {
    return std::binary_search(formulas.begin(), formulas.end(), f);
}

Closure closure(const Formula& f) {
    std::unordered_set<Formula, FormulaHash> seen{f};
    std::vector<Formula> work{f};
    auto add = [&](const Formula& g) {
        if (seen.insert(g).second) work.push_back(g);
    };
    while (!work.empty()) {
        Formula g = work.back();
        work.pop_back();
        switch (g.kind()) {
            case FormulaKind::And:
            case FormulaKind::Or:
                for (const auto& c : g.children()) add(c);
                break;
            case FormulaKind::Diamond:
            case FormulaKind::Box:
                add(g.body());
                break;
            case FormulaKind::Mu:
            case FormulaKind::Nu:
                add(unfold(g));
                break;
            case FormulaKind::SimFix:
                add(normalize_simfix(g));
                break;
            default:
                break;
        }
    }
    Closure c;
    c.formulas.assign(seen.begin(), seen.end());
    std::sort(c.formulas.begin(), c.formulas.end());
    return c;
}

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Unfactored: return "unfactored";
        case NodeKind::And: return "and";
        case NodeKind::Or: return "or";
        case NodeKind::Action: return "action";
        case NodeKind::True: return "tt";
        case NodeKind::False: return "ff";
    }
    return "?";
}

namespace {

std::string join(const std::set<ActionLabel>& xs) {
    std::string r;
    for (const auto& x : xs) r += (r.empty() ? "" : ", ") + x;
    return r;
}

}  // namespace

FactorizationFailure::FactorizationFailure(StateId state, std::string state_name, Formula formula,
                                           Formula attempted, std::set<ActionLabel> entangled,
                                           std::shared_ptr<const DepGraph> partial)
    : Error("no factored form for " + formula.to_string() + " at state " + state_name + " (actions " +
            join(entangled) + " guard more than one leaf of " + attempted.to_string() + ")"),
      state_(state),
      state_name_(std::move(state_name)),
      formula_(std::move(formula)),
      attempted_(std::move(attempted)),
      entangled_(std::move(entangled)),
      partial_(std::move(partial)) {}

bool check_propositional(const Plts& model, StateId s, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::True: return true;
        case FormulaKind::False: return false;
        case FormulaKind::Prop: return model.holds(s, f.name());
        case FormulaKind::NegProp: return !model.holds(s, f.name());
        case FormulaKind::And:
            return std::all_of(f.children().begin(), f.children().end(),
                               [&](const Formula& c) { return check_propositional(model, s, c); });
        case FormulaKind::Or:
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](const Formula& c) { return check_propositional(model, s, c); });
        default:
            throw std::invalid_argument("not a propositional state formula: " + f.to_string());
    }
}

namespace {

struct Expanded {
    Formula leaf;
    std::uint8_t signs;
};

void expand_with_signs(const Formula& f, std::uint8_t signs, std::vector<Expanded>& out, int budget = 10000) {
    if (budget <= 0) throw std::logic_error("unguarded fixed-point variable in " + f.to_string());
    if (f.is_junction()) {
        for (const auto& c : f.children()) expand_with_signs(c, signs, out, budget);
    } else if (f.is_binder()) {
        std::uint8_t bit = f.kind() == FormulaKind::Mu ? kLeastBit : kGreatestBit;
        expand_with_signs(unfold(f), signs | bit, out, budget - 1);
    } else {
        out.push_back({f, signs});
    }
}

}  // namespace

class GraphBuilder {
public:
    GraphBuilder(const Plts& model, const StateChecker& check_state, const DepGraphOptions& options)
        : model_(model), check_state_(check_state), options_(options) {
        for (std::uint32_t i = 0; i < model.num_states(); ++i) g_.state_names_.push_back(model.name(StateId{i}));
    }

    DepGraph build(StateId s, const Formula& f) {
        node_for(s, f);
        while (!queue_.empty()) {
            NodeId n = queue_.front();
            queue_.pop_front();
            process(n);
        }
        resolve_links();
        g_.complete_ = true;
        return std::move(g_);
    }

private:
    struct PendingLink {
        NodeId from;
        std::size_t from_leaf;
        NodeId to;
        std::optional<Formula> target;
        std::uint8_t signs;
    };

    const Plts& model_;
    const StateChecker& check_state_;
    DepGraphOptions options_;
    DepGraph g_;
    std::map<std::pair<std::uint32_t, DnfKey>, NodeId> index_;
    std::vector<DnfKey> keys_;
    std::deque<NodeId> queue_;
    std::vector<PendingLink> pending_;

    NodeId node_for(StateId s, const Formula& f) {
        DnfKey key = dnf_key(canonical_at(s, model_, f), options_.clause_budget);
        auto [it, inserted] = index_.try_emplace({s.index, key}, g_.nodes_.size());
        if (!inserted) return it->second;
        if (g_.nodes_.size() >= options_.node_budget)
            throw SizeBudgetExceeded("dependency graph exceeds " + std::to_string(options_.node_budget) + " nodes");
        g_.nodes_.push_back(DepNode{s, f, NodeKind::Unfactored, {}, {}});
        g_.out_.emplace_back();
        g_.leaves_.emplace_back();
        g_.unfolded_.push_back(0);
        keys_.push_back(std::move(key));
        queue_.push_back(it->second);
        return it->second;
    }

    void add_edge(NodeId from, EdgeKind kind, const ActionLabel& action, NodeId to) {
        g_.out_[from].push_back(g_.edges_.size());
        g_.edges_.push_back(DepEdge{from, kind, action, to});
    }

    static std::size_t leaf_index(const std::vector<Formula>& leaves, const Formula& leaf) {
        auto it = std::find(leaves.begin(), leaves.end(), leaf);
        if (it == leaves.end()) throw std::logic_error("leaf not found while linking traces");
        return static_cast<std::size_t>(it - leaves.begin());
    }

    void process(NodeId n) {
        const StateId s = g_.nodes_[n].state;
        const Formula phi = g_.nodes_[n].formula;
        if (phi.kind() == FormulaKind::True || phi.kind() == FormulaKind::False) {
            g_.nodes_[n].kind = phi.kind() == FormulaKind::True ? NodeKind::True : NodeKind::False;
            return;
        }

        FactorOutcome out = to_factored_form(s, model_, phi, check_state_);
        if (!out.factored()) {
            resolve_links();
            throw FactorizationFailure(s, model_.name(s), phi, out.formula, out.entangled,
                                       std::make_shared<const DepGraph>(g_));
        }
        const Formula& e = out.formula;
        if (dnf_key(e, options_.clause_budget) == keys_[n]) {
            expand(n, e);
            return;
        }

        g_.leaves_[n] = and_or_leaves(canonical_at(s, model_, phi));
        NodeId target = node_for(s, e);
        add_edge(n, EdgeKind::Epsilon, {}, target);

        std::map<ActionLabel, Formula> by_action;
        for (const auto& leaf : and_or_leaves(e))
            if (leaf.kind() == FormulaKind::Diamond) by_action.emplace(leaf.name(), leaf);
        const auto leaves = g_.leaves_[n];
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            std::vector<Expanded> expanded;
            expand_with_signs(leaves[i], 0, expanded);
            for (const auto& x : expanded) {
                g_.unfolded_[n] |= x.signs;
                if (!x.leaf.is_modal()) continue;
                auto it = by_action.find(x.leaf.name());
                if (it != by_action.end()) pending_.push_back({n, i, target, it->second, x.signs});
            }
        }
    }

    void expand(NodeId n, const Formula& e) {
        const StateId s = g_.nodes_[n].state;
        switch (e.kind()) {
            case FormulaKind::True:
                g_.nodes_[n].kind = NodeKind::True;
                return;
            case FormulaKind::False:
                g_.nodes_[n].kind = NodeKind::False;
                return;
            case FormulaKind::And:
            case FormulaKind::Or: {
                const bool is_and = e.kind() == FormulaKind::And;
                g_.nodes_[n].kind = is_and ? NodeKind::And : NodeKind::Or;
                g_.leaves_[n] = and_or_leaves(e);
                for (const auto& child : e.children()) {
                    NodeId c = node_for(s, child);
                    add_edge(n, is_and ? EdgeKind::EpsilonAnd : EdgeKind::EpsilonOr, {}, c);
                    for (const auto& leaf : and_or_leaves(child))
                        pending_.push_back({n, leaf_index(g_.leaves_[n], leaf), c, leaf, 0});
                }
                return;
            }
            case FormulaKind::Diamond: {
                const ActionLabel& a = e.name();
                g_.nodes_[n].kind = NodeKind::Action;
                g_.nodes_[n].action = a;
                g_.leaves_[n] = {e};
                std::map<StateId, NodeId> succ;
                for (StateId t : model_.successors(s, a)) {
                    NodeId c = node_for(t, e.body());
                    succ.emplace(t, c);
                    add_edge(n, EdgeKind::Action, a, c);
                    pending_.push_back({n, 0, c, std::nullopt, 0});
                }
                std::vector<std::vector<std::pair<NodeId, Rational>>> choices;
                for (const auto& dist : model_.choices(s, a)) {
                    auto& row = choices.emplace_back();
                    for (const auto& [t, p] : dist) row.emplace_back(succ.at(t), p);
                }
                g_.nodes_[n].choices = std::move(choices);
                return;
            }
            default:
                throw std::logic_error("factored formula with a non-diamond leaf: " + e.to_string());
        }
    }

    void resolve_links() {
        for (const auto& p : pending_) {
            const auto& targets = g_.leaves_[p.to];
            bool found = false;
            if (p.target) {
                auto it = std::find(targets.begin(), targets.end(), *p.target);
                if (it != targets.end()) {
                    g_.links_.push_back({p.from, p.from_leaf, p.to, static_cast<std::size_t>(it - targets.begin()),
                                         p.signs});
                    found = true;
                }
            }
            if (!found)
                for (std::size_t j = 0; j < targets.size(); ++j)
                    g_.links_.push_back({p.from, p.from_leaf, p.to, j, p.signs});
        }
        pending_.clear();
    }
};

DepGraph build_depgraph(const Plts& model, StateId s, const Formula& f, const StateChecker& check_state,
                        const DepGraphOptions& options) {
    if (s.index >= model.num_states()) throw std::out_of_range("start state out of range");
    return GraphBuilder(model, check_state, options).build(s, f);
}

DepGraph build_depgraph(const Plts& model, StateId s, const Formula& f, const DepGraphOptions& options) {
    StateChecker props = [&model](StateId t, const Formula& g) { return check_propositional(model, t, g); };
    return build_depgraph(model, s, f, props, options);
}

namespace {

std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r;
}

const char* edge_label(EdgeKind k) {
    switch (k) {
        case EdgeKind::Epsilon: return "\xce\xb5";
        case EdgeKind::EpsilonAnd: return "\xce\xb5\xe2\x88\xa7";
        case EdgeKind::EpsilonOr: return "\xce\xb5\xe2\x88\xa8";
        case EdgeKind::Action: return "";
    }
    return "";
}

}  // namespace

std::string export_dot(const DepGraph& g) {
    std::ostringstream os;
    os << "digraph depgraph {\n  node [shape=box, style=rounded];\n";
    for (NodeId i = 0; i < g.nodes().size(); ++i) {
        const auto& n = g.nodes()[i];
        os << "  n" << i << " [label=\"(" << escape(g.state_name(n.state)) << ", " << escape(n.formula.to_string())
           << ")\"];\n";
    }
    for (const auto& e : g.edges()) {
        os << "  n" << e.from << " -> n" << e.to << " [label=\""
           << (e.kind == EdgeKind::Action ? escape(e.action) : edge_label(e.kind)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace xpl
