#include "xpl/plts.hpp"

#include <stdexcept>
#include <tuple>

namespace xpl {

StateId Plts::add_state(std::string name, std::set<Proposition> props) {
    if (by_name_.count(name)) throw std::invalid_argument("duplicate state '" + name + "'");
    StateId id{static_cast<std::uint32_t>(names_.size())};
    by_name_.emplace(name, id);
    names_.push_back(std::move(name));
    props_.push_back(std::move(props));
    out_.emplace_back();
    return id;
}

void Plts::add_proposition(StateId s, const Proposition& p) { props_.at(s.index).insert(p); }

void Plts::add_transition(StateId from, const ActionLabel& action, ChoiceIndex choice, StateId to,
                          Rational prob) {
    if (from.index >= names_.size() || to.index >= names_.size())
        throw std::out_of_range("transition refers to an unknown state");
    if (action.empty()) throw std::invalid_argument("empty action label");
    alphabet_.insert(action);
    transitions_.push_back(Transition{from, action, choice, to, prob});
    auto& per_choice = out_[from.index][action];
    if (per_choice.size() <= choice) per_choice.resize(choice + 1);
    per_choice[choice][to] += prob;
}

void Plts::add_transition(const std::string& from, const ActionLabel& action, ChoiceIndex choice,
                          const std::string& to, Rational prob) {
    add_transition(state(from), action, choice, state(to), std::move(prob));
}

std::optional<StateId> Plts::find_state(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

StateId Plts::state(const std::string& name) const {
    auto s = find_state(name);
    if (!s) throw std::out_of_range("unknown state '" + name + "'");
    return *s;
}

bool Plts::has_action(StateId s, const ActionLabel& a) const {
    const auto& m = out_.at(s.index);
    return m.find(a) != m.end();
}

std::vector<ActionLabel> Plts::actions_at(StateId s) const {
    std::vector<ActionLabel> r;
    for (const auto& [a, _] : out_.at(s.index)) r.push_back(a);
    return r;
}

std::vector<Distribution> Plts::choices(StateId s, const ActionLabel& a) const {
    std::vector<Distribution> r;
    const auto& m = out_.at(s.index);
    auto it = m.find(a);
    if (it == m.end()) return r;
    for (const auto& targets : it->second) r.emplace_back(targets.begin(), targets.end());
    return r;
}

std::vector<StateId> Plts::successors(StateId s, const ActionLabel& a) const {
    std::set<StateId> seen;
    for (const auto& d : choices(s, a))
        for (const auto& [t, _] : d) seen.insert(t);
    return {seen.begin(), seen.end()};
}

std::vector<Violation> validate_plts(const Plts& model) {
    std::vector<Violation> out;
    auto where = [&](StateId s, const ActionLabel& a, ChoiceIndex c) {
        return "(" + model.name(s) + ", " + a + ", " + std::to_string(c) + ")";
    };

    std::set<std::tuple<std::uint32_t, ActionLabel, ChoiceIndex, std::uint32_t>> seen;
    for (const auto& t : model.transitions()) {
        if (t.prob <= Rational(0) || t.prob > Rational(1))
            out.push_back({"probability-range", where(t.from, t.action, t.choice),
                           "probability " + t.prob.to_string() + " to " + model.name(t.to) + " is outside (0,1]"});
        if (!seen.emplace(t.from.index, t.action, t.choice, t.to.index).second)
            out.push_back({"duplicate-transition", where(t.from, t.action, t.choice),
                           "target " + model.name(t.to) + " listed more than once"});
    }

    for (std::uint32_t i = 0; i < model.num_states(); ++i) {
        StateId s{i};
        for (const auto& a : model.actions_at(s)) {
            auto ds = model.choices(s, a);
            for (ChoiceIndex c = 0; c < ds.size(); ++c) {
                if (ds[c].empty()) {
                    out.push_back({"dense-choice", where(s, a, c), "choice index has no distribution"});
                    continue;
                }
                Rational sum;
                for (const auto& [_, p] : ds[c]) sum += p;
                if (sum != Rational(1))
                    out.push_back({"distribution-sum", where(s, a, c), "probabilities sum to " + sum.to_string()});
            }
        }
    }
    return out;
}

}  // namespace xpl
