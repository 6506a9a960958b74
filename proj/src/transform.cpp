#include "xpl/transform.hpp"
#include "xpl/errors.hpp"
#include "xpl/formula_ops.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace xpl {

AndOrTree and_or_tree(const Formula& f) {
    AndOrTree t;
    if (f.is_junction()) {
        t.kind = f.kind() == FormulaKind::And ? AndOrTree::Kind::And : AndOrTree::Kind::Or;
        for (const auto& c : f.children()) t.children.push_back(and_or_tree(c));
    } else {
        t.leaf = f;
    }
    return t;
}

namespace {

void collect_leaves(const Formula& f, std::vector<Formula>& out) {
    if (f.is_junction()) {
        for (const auto& c : f.children()) collect_leaves(c, out);
    } else {
        out.push_back(f);
    }
}

Formula fpe_rec(const Formula& f, int budget) {
    if (budget <= 0) throw std::logic_error("fpe: unguarded fixed-point variable in " + f.to_string());
    if (f.is_junction()) {
        std::vector<Formula> cs;
        cs.reserve(f.children().size());
        for (const auto& c : f.children()) cs.push_back(fpe_rec(c, budget));
        return rebuild_junction(f.kind(), std::move(cs));
    }
    if (f.is_binder()) return fpe_rec(unfold(f), budget - 1);
    return f;
}

bool non_probabilistic_leaf(const Formula& f) {
    if (f.is_state()) return true;
    if (f.is_modal()) {
        auto k = f.body().kind();
        return k == FormulaKind::True || k == FormulaKind::False;
    }
    return false;
}

}  // namespace

std::vector<Formula> and_or_leaves(const Formula& f) {
    std::vector<Formula> out;
    collect_leaves(f, out);
    return out;
}

Formula fpe(const Formula& f) { return fpe_rec(f, 10000); }

std::optional<Formula> probabs(const Formula& f) {
    if (non_probabilistic_leaf(f)) return std::nullopt;
    if (!f.is_junction()) return f;
    std::vector<Formula> kept;
    for (const auto& c : f.children())
        if (auto r = probabs(c)) kept.push_back(*r);
    if (kept.empty()) return std::nullopt;
    return rebuild_junction(f.kind(), std::move(kept));
}

Formula group_modalities(const Formula& f) {
    if (!f.is_junction()) return f;
    std::vector<Formula> kids;
    for (const auto& c : f.children()) kids.push_back(group_modalities(c));
    // Re-flatten: a child may have collapsed into the same junction kind.
    Formula flat = rebuild_junction(f.kind(), kids);
    if (!flat.is_junction() || flat.kind() != f.kind()) return flat;

    const bool is_and = f.kind() == FormulaKind::And;
    std::map<ActionLabel, std::vector<Formula>> boxes, diamonds;
    std::vector<Formula> out;
    for (const auto& c : flat.children()) {
        if (c.kind() == FormulaKind::Box) {
            boxes[c.name()].push_back(c.body());
        } else if (c.kind() == FormulaKind::Diamond) {
            diamonds[c.name()].push_back(c.body());
        } else {
            out.push_back(c);
        }
    }
    auto join = [&](std::vector<Formula> parts) {
        return is_and ? conj(std::move(parts)) : disj(std::move(parts));
    };
    std::set<ActionLabel> actions;
    for (const auto& [a, _] : boxes) actions.insert(a);
    for (const auto& [a, _] : diamonds) actions.insert(a);
    for (const auto& a : actions) {
        auto b = boxes.find(a);
        auto d = diamonds.find(a);
        if (b != boxes.end() && d != diamonds.end()) {
            std::vector<Formula> parts = b->second;
            parts.insert(parts.end(), d->second.begin(), d->second.end());
            out.push_back(is_and ? diamond(a, join(parts)) : box(a, join(parts)));
        } else if (b != boxes.end()) {
            out.push_back(box(a, join(b->second)));
        } else {
            out.push_back(diamond(a, join(d->second)));
        }
    }
    return join(std::move(out));
}

std::set<ActionLabel> action_set(const Formula& f) {
    std::set<ActionLabel> out;
    switch (f.kind()) {
        case FormulaKind::Diamond:
        case FormulaKind::Box:
            out.insert(f.name());
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Mu:
        case FormulaKind::Nu:
        case FormulaKind::SimFix:
            if (f.is_state()) break;
            for (const auto& c : f.children()) {
                auto s = action_set(c);
                out.insert(s.begin(), s.end());
            }
            break;
        default:
            break;
    }
    return out;
}

namespace {

class SeparabilityChecker {
public:
    explicit SeparabilityChecker(std::size_t budget) : budget_(budget) {}

    SeparabilityReport run(const Formula& f) {
        pending_.push_back(f);
        while (!pending_.empty() && report_.separable) {
            Formula g = pending_.back();
            pending_.pop_back();
            visit(g);
        }
        report_.visited = seen_.size();
        return report_;
    }

private:
    std::size_t budget_;
    // Keyed up to and-or rearrangement, as dependency-graph nodes are.
    // Syntactic keys never repeat for bodies like (body & X) | Y.
    std::set<DnfKey> seen_;
    std::vector<Formula> pending_;
    SeparabilityReport report_;

    void visit(const Formula& f) {
        if (f.is_state()) return;
        if (!seen_.insert(dnf_key(f)).second) return;  // assumed separable on revisit
        if (seen_.size() > budget_)
            throw SizeBudgetExceeded("separability check visited more than " + std::to_string(budget_) +
                                     " formulas");
        auto abstracted = probabs(fpe(f));
        if (!abstracted) return;
        Formula g = group_modalities(*abstracted);
        check_node(g, g);
    }

    void check_node(const Formula& node, const Formula& whole) {
        if (!report_.separable) return;
        if (node.is_junction()) {
            std::vector<std::set<ActionLabel>> sets;
            for (const auto& c : node.children()) sets.push_back(action_set(c));
            std::set<ActionLabel> overlap;
            for (std::size_t i = 0; i < sets.size(); ++i)
                for (std::size_t j = i + 1; j < sets.size(); ++j)
                    for (const auto& a : sets[i])
                        if (sets[j].count(a)) overlap.insert(a);
            if (!overlap.empty()) {
                report_.separable = false;
                report_.witness = whole;
                report_.entangled_node = node;
                report_.overlap = std::move(overlap);
                return;
            }
            for (const auto& c : node.children()) check_node(c, whole);
        } else if (node.is_modal()) {
            pending_.push_back(node.body());
        }
    }
};

}  // namespace

SeparabilityReport separability(const Formula& f, std::size_t budget) { return SeparabilityChecker(budget).run(f); }

bool is_separable(const Formula& f) { return separability(f).separable; }

Formula partial_evaluate(StateId s, const Plts& model, const Formula& f, const StateChecker& check_state) {
    if (f.is_state()) {
        if (f.kind() == FormulaKind::True || f.kind() == FormulaKind::False) return f;
        return check_state(s, f) ? tt() : ff();
    }
    switch (f.kind()) {
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> cs;
            for (const auto& c : f.children()) cs.push_back(partial_evaluate(s, model, c, check_state));
            return rebuild_junction(f.kind(), std::move(cs));
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box: {
            const bool present = model.has_action(s, f.name());
            const bool is_box = f.kind() == FormulaKind::Box;
            if (!present) return is_box ? tt() : ff();
            if (f.body().kind() == FormulaKind::True) return tt();
            if (f.body().kind() == FormulaKind::False) return ff();
            return is_box ? diamond(f.name(), f.body()) : f;
        }
        default:
            throw std::logic_error("partial_evaluate: unexpanded subformula " + f.to_string());
    }
}

bool is_factored(const Formula& f, std::set<ActionLabel>* entangled) {
    if (f.kind() == FormulaKind::True || f.kind() == FormulaKind::False) return true;
    std::map<ActionLabel, int> uses;
    bool ok = true;
    for (const auto& leaf : and_or_leaves(f)) {
        if (leaf.kind() != FormulaKind::Diamond) {
            ok = false;
            if (leaf.kind() == FormulaKind::Box && entangled) entangled->insert(leaf.name());
            continue;
        }
        if (++uses[leaf.name()] == 2) {
            ok = false;
            if (entangled) entangled->insert(leaf.name());
        }
    }
    return ok;
}

FactorOutcome to_factored_form(StateId s, const Plts& model, const Formula& f, const StateChecker& check_state) {
    FactorOutcome out;
    out.formula = group_modalities(partial_evaluate(s, model, fpe(f), check_state));
    if (!is_factored(out.formula, &out.entangled) && out.entangled.empty())
        throw std::logic_error("to_factored_form: leaf is not in action form: " + out.formula.to_string());
    return out;
}

Formula canonical_at(StateId s, const Plts& model, const Formula& f) {
    if (f.is_junction()) {
        std::vector<Formula> cs;
        for (const auto& c : f.children()) cs.push_back(canonical_at(s, model, c));
        return rebuild_junction(f.kind(), std::move(cs));
    }
    if (f.kind() == FormulaKind::Box && model.has_action(s, f.name())) return diamond(f.name(), f.body());
    return f;
}

namespace {

using Clause = std::vector<Formula>;
using ClauseSet = std::set<Clause>;

ClauseSet absorb(const ClauseSet& all);

ClauseSet dnf(const Formula& f, std::size_t budget) {
    switch (f.kind()) {
        case FormulaKind::True: return {Clause{}};
        case FormulaKind::False: return {};
        case FormulaKind::Or: {
            ClauseSet out;
            for (const auto& c : f.children()) {
                auto d = dnf(c, budget);
                out.insert(d.begin(), d.end());
                if (out.size() > budget)
                    throw SizeBudgetExceeded("DNF exceeds " + std::to_string(budget) + " clauses");
            }
            return out;
        }
        case FormulaKind::And: {
            ClauseSet acc{Clause{}};
            for (const auto& c : f.children()) {
                auto d = dnf(c, budget);
                ClauseSet next;
                for (const auto& x : acc)
                    for (const auto& y : d) {
                        Clause z;
                        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
                        next.insert(std::move(z));
                        if (next.size() > budget)
                            throw SizeBudgetExceeded("DNF exceeds " + std::to_string(budget) + " clauses");
                    }
                acc = std::move(next);
            }
            return acc;
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box: {
            // Along a d-tree an action has at most one successor, so both
            // modalities distribute over conjunction and disjunction.
            ClauseSet body = absorb(dnf(f.body(), budget));
            const bool is_box = f.kind() == FormulaKind::Box;
            if (body.empty()) return is_box ? ClauseSet{Clause{f}} : ClauseSet{};
            if (body.size() == 1 && body.begin()->empty()) return is_box ? ClauseSet{Clause{}} : ClauseSet{Clause{f}};
            ClauseSet out;
            for (const auto& clause : body) {
                if (clause.empty()) continue;
                Clause lifted;
                for (const auto& lit : clause) lifted.push_back(is_box ? box(f.name(), lit) : diamond(f.name(), lit));
                std::sort(lifted.begin(), lifted.end());
                out.insert(std::move(lifted));
            }
            return out;
        }
        default:
            return {Clause{f}};
    }
}

}  // namespace

DnfKey dnf_key(const Formula& f, std::size_t clause_budget) {
    ClauseSet all = absorb(dnf(f, clause_budget));
    return DnfKey{std::vector<Clause>(all.begin(), all.end())};
}

namespace {

ClauseSet absorb(const ClauseSet& all) {
    std::vector<Clause> sorted(all.begin(), all.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Clause& a, const Clause& b) { return a.size() < b.size(); });
    std::vector<Clause> kept;
    for (const auto& c : sorted) {
        bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
        });
        if (!absorbed) kept.push_back(c);
    }
    return ClauseSet(kept.begin(), kept.end());
}

}  // namespace

}  // namespace xpl
