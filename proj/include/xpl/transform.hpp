#pragma once

#include "xpl/formula.hpp"
#include "xpl/plts.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace xpl {

// Explicit and-or tree view. Formula junctions are already flattened, so this
// mirrors the And/Or structure of the formula down to its first non-junction.
struct AndOrTree {
    enum class Kind { And, Or, Leaf };
    Kind kind = Kind::Leaf;
    std::vector<AndOrTree> children;
    Formula leaf;
};

AndOrTree and_or_tree(const Formula& f);
// Leaves of the and-or tree in order; tt for tt, none for ff-free empty cases.
std::vector<Formula> and_or_leaves(const Formula& f);

// Expands every binder occurring at an and-or leaf position, repeatedly.
Formula fpe(const Formula& f);

// Removes and-or leaves that are state formulas or <a>tt, <a>ff, [a]tt, [a]ff.
// Returns nullopt when nothing probabilistic is left.
std::optional<Formula> probabs(const Formula& f);

// Merges modal leaves under each and-or node:
//   [a]x op [a]y -> [a](x op y),  <a>x op <a>y -> <a>(x op y),
//   [a]x & <a>y -> <a>(x & y),    [a]x | <a>y -> [a](x | y).
Formula group_modalities(const Formula& f);

std::set<ActionLabel> action_set(const Formula& f);

struct SeparabilityReport {
    bool separable = true;
    // When not separable: the transformed formula and the and-or node whose
    // children share actions.
    std::optional<Formula> witness;
    std::optional<Formula> entangled_node;
    std::set<ActionLabel> overlap;
    std::size_t visited = 0;
};

inline constexpr std::size_t kDefaultSeparabilityBudget = std::size_t{1} << 16;

// Greatest-fixed-point separability check: a formula is separable when, after
// fpe, probabs and group_modalities, the children of every and-or node have
// pairwise disjoint action sets and every modal body is again separable.
// Throws SizeBudgetExceeded after `budget` distinct formulas.
SeparabilityReport separability(const Formula& f, std::size_t budget = kDefaultSeparabilityBudget);
bool is_separable(const Formula& f);

using StateChecker = std::function<bool(StateId, const Formula&)>;

// Evaluates what can be decided at state s without looking at successors:
// state-formula leaves via `check_state`, modalities over absent actions,
// <a>tt/<a>ff/[a]tt/[a]ff, and turns [a]x into <a>x when a is present.
// Requires that f has no unguarded binders.
Formula partial_evaluate(StateId s, const Plts& model, const Formula& f, const StateChecker& check_state);

struct FactorOutcome {
    Formula formula;                     // group_modalities(partial_evaluate(s, fpe(f)))
    std::set<ActionLabel> entangled;     // actions guarding more than one leaf
    bool factored() const { return entangled.empty(); }
    bool trivial() const {
        return formula.kind() == FormulaKind::True || formula.kind() == FormulaKind::False;
    }
};

FactorOutcome to_factored_form(StateId s, const Plts& model, const Formula& f, const StateChecker& check_state);

// True for tt/ff and for and-or trees whose leaves are diamonds guarded by
// pairwise distinct actions. Offending actions are added to `entangled`.
bool is_factored(const Formula& f, std::set<ActionLabel>* entangled = nullptr);

// Converts top-level boxes over actions present at s into diamonds. Two
// formulas with equal results are interchangeable at s.
Formula canonical_at(StateId s, const Plts& model, const Formula& f);

// Disjunctive normal form over and-or leaves with absorption.
struct DnfKey {
    std::vector<std::vector<Formula>> clauses;
    friend bool operator==(const DnfKey&, const DnfKey&) = default;
    friend auto operator<=>(const DnfKey&, const DnfKey&) = default;
};

inline constexpr std::size_t kDefaultClauseBudget = std::size_t{1} << 16;

DnfKey dnf_key(const Formula& f, std::size_t clause_budget = kDefaultClauseBudget);

}  // namespace xpl
