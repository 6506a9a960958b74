#pragma once

#include "xpl/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace xpl {

struct StateId {
    std::uint32_t index = 0;
    friend auto operator<=>(const StateId&, const StateId&) = default;
};

using ActionLabel = std::string;
using Proposition = std::string;
using ChoiceIndex = std::uint32_t;

struct Transition {
    StateId from;
    ActionLabel action;
    ChoiceIndex choice = 0;
    StateId to;
    Rational prob;
};

// One resolved choice: successor states with their probabilities, sorted by state.
using Distribution = std::vector<std::pair<StateId, Rational>>;

// Finite probabilistic labelled transition system. For every (state, action)
// there is a list of distributions, one per choice index (dense, 0-based).
class Plts {
public:
    StateId add_state(std::string name, std::set<Proposition> props = {});
    void add_transition(StateId from, const ActionLabel& action, ChoiceIndex choice, StateId to, Rational prob);
    void add_transition(const std::string& from, const ActionLabel& action, ChoiceIndex choice,
                        const std::string& to, Rational prob);
    void add_proposition(StateId s, const Proposition& p);

    std::size_t num_states() const { return names_.size(); }
    const std::string& name(StateId s) const { return names_.at(s.index); }
    std::optional<StateId> find_state(const std::string& name) const;
    StateId state(const std::string& name) const;  // throws std::out_of_range
    const std::set<Proposition>& props(StateId s) const { return props_.at(s.index); }
    bool holds(StateId s, const Proposition& p) const { return props(s).count(p) > 0; }

    const std::set<ActionLabel>& actions() const { return alphabet_; }
    bool has_action(StateId s, const ActionLabel& a) const;
    std::vector<ActionLabel> actions_at(StateId s) const;

    // Distributions indexed by choice. Choices with no recorded transition are empty.
    std::vector<Distribution> choices(StateId s, const ActionLabel& a) const;
    std::vector<StateId> successors(StateId s, const ActionLabel& a) const;

    const std::vector<Transition>& transitions() const { return transitions_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, StateId> by_name_;
    std::vector<std::set<Proposition>> props_;
    std::set<ActionLabel> alphabet_;
    std::vector<Transition> transitions_;
    // (state, action) -> choice -> target -> summed probability
    std::vector<std::map<ActionLabel, std::vector<std::map<StateId, Rational>>>> out_;
};

struct Violation {
    std::string rule;
    std::string where;
    std::string detail;
};

// Checks the distribution, probability range, dense choice index and
// duplicate-entry rules. An empty result means the model is well formed.
std::vector<Violation> validate_plts(const Plts& model);

}  // namespace xpl
