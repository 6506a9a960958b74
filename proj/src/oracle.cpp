#include "xpl/oracle.hpp"

#include "xpl/errors.hpp"
#include "xpl/formula_ops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace xpl {

namespace {

// Three-valued truth, ordered F < U < T.
enum : char { F = '0', U = '1', T = '2' };

// Formulas reachable from the root through junction children, modal bodies
// and binder unfoldings, with the links needed to evaluate them bottom-up.
struct Table {
    struct Entry {
        Formula f;
        std::vector<std::size_t> children;  // junctions
        std::size_t next = 0;               // modal body or binder unfolding
    };
    std::vector<Entry> entries;
    std::unordered_map<Formula, std::size_t, FormulaHash> index;

    explicit Table(const Formula& root) {
        add(root);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            Formula f = entries[i].f;
            switch (f.kind()) {
                case FormulaKind::And:
                case FormulaKind::Or: {
                    std::vector<std::size_t> cs;
                    for (const auto& c : f.children()) cs.push_back(add(c));
                    entries[i].children = std::move(cs);
                    break;
                }
                case FormulaKind::Diamond:
                case FormulaKind::Box: {
                    std::size_t b = add(f.body());
                    entries[i].next = b;
                    break;
                }
                case FormulaKind::Mu:
                case FormulaKind::Nu: {
                    std::size_t u = add(unfold(f));
                    entries[i].next = u;
                    break;
                }
                case FormulaKind::Var: throw std::invalid_argument("oracle: formula is not closed");
                case FormulaKind::Prob: throw std::invalid_argument("oracle: nested probabilities are not supported");
                case FormulaKind::SimFix:
                    throw std::invalid_argument("oracle: simultaneous blocks must be normalized first");
                default: break;
            }
        }
    }

    std::size_t add(const Formula& f) {
        auto [it, fresh] = index.emplace(f, entries.size());
        if (fresh) entries.push_back({f, {}, 0});
        return it->second;
    }
    std::size_t size() const { return entries.size(); }
};

using Type = std::string;  // one truth value per table entry

// Truth values of every table entry at one tree node, given the node's state,
// whether it sits on the horizon, and the types of its children per action.
class Evaluator {
public:
    Evaluator(const Table& table, const Plts& model) : table_(table), model_(model) {}

    Type evaluate(StateId s, bool horizon, const std::map<ActionLabel, const Type*>& children) {
        Type out(table_.size(), '?');
        std::vector<bool> busy(table_.size(), false);
        std::function<char(std::size_t)> eval = [&](std::size_t i) -> char {
            if (out[i] != '?') return out[i];
            if (busy[i]) throw std::invalid_argument("oracle: formula is not guarded");
            busy[i] = true;
            const auto& e = table_.entries[i];
            char v = F;
            switch (e.f.kind()) {
                case FormulaKind::True: v = T; break;
                case FormulaKind::False: v = F; break;
                case FormulaKind::Prop: v = model_.holds(s, e.f.name()) ? T : F; break;
                case FormulaKind::NegProp: v = model_.holds(s, e.f.name()) ? F : T; break;
                case FormulaKind::And:
                    v = T;
                    for (std::size_t c : e.children) v = std::min(v, eval(c));
                    break;
                case FormulaKind::Or:
                    v = F;
                    for (std::size_t c : e.children) v = std::max(v, eval(c));
                    break;
                case FormulaKind::Diamond:
                case FormulaKind::Box: {
                    if (!model_.has_action(s, e.f.name())) {
                        v = e.f.kind() == FormulaKind::Diamond ? F : T;
                    } else if (horizon) {
                        v = U;
                    } else {
                        v = (*children.at(e.f.name()))[e.next];
                    }
                    break;
                }
                case FormulaKind::Mu:
                case FormulaKind::Nu: v = eval(e.next); break;
                default: throw std::logic_error("oracle: unexpected formula kind");
            }
            busy[i] = false;
            return out[i] = v;
        };
        for (std::size_t i = 0; i < table_.size(); ++i) eval(i);
        return out;
    }

private:
    const Table& table_;
    const Plts& model_;
};

// A distribution over node types, sorted by type.
using Dist = std::vector<std::pair<Type, Rational>>;
using DistSet = std::set<Dist>;

Dist normalize(std::map<Type, Rational> m) {
    Dist d;
    for (auto& [t, p] : m)
        if (!p.is_zero()) d.emplace_back(t, std::move(p));
    return d;
}

class ExactOracle {
public:
    ExactOracle(const Plts& model, const Table& table, std::size_t budget)
        : model_(model), eval_(table, model), budget_(budget) {}

    std::size_t work = 0;

    // Distributions of the root type of depth-limited trees at s, one per
    // pure scheduler (deduplicated).
    const DistSet& achievable(StateId s, std::size_t depth) {
        auto key = std::make_pair(s.index, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        DistSet result;
        if (depth == 0) {
            result.insert(Dist{{eval_.evaluate(s, true, {}), Rational(1)}});
        } else {
            std::vector<ActionLabel> actions = model_.actions_at(s);
            // Per action: distributions of the child type, over all choices
            // and all sub-schedulers of the successors.
            std::vector<std::vector<Dist>> per_action;
            for (const auto& a : actions) {
                DistSet options;
                for (const auto& dist : model_.choices(s, a)) {
                    if (dist.empty()) continue;
                    std::vector<std::map<Type, Rational>> partial = {{}};
                    for (const auto& [to, p] : dist) {
                        const DistSet& sub = achievable(to, depth - 1);
                        std::vector<std::map<Type, Rational>> next;
                        for (const auto& acc : partial) {
                            for (const auto& d : sub) {
                                auto m = acc;
                                for (const auto& [t, q] : d) m[t] += p * q;
                                next.push_back(std::move(m));
                                charge();
                            }
                        }
                        partial = std::move(next);
                    }
                    for (auto& m : partial) options.insert(normalize(std::move(m)));
                }
                per_action.emplace_back(options.begin(), options.end());
            }
            // One option per action; the node type is a function of the
            // children's types, which are independent across actions.
            std::vector<std::size_t> pick(actions.size(), 0);
            for (;;) {
                std::map<Type, Rational> node;
                combine(s, actions, per_action, pick, 0, {}, Rational(1), node);
                result.insert(normalize(std::move(node)));
                charge();
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == per_action[i].size()) pick[i++] = 0;
                if (i == pick.size()) break;
            }
        }
        return memo_.emplace(key, std::move(result)).first->second;
    }

private:
    const Plts& model_;
    Evaluator eval_;
    std::size_t budget_;
    std::map<std::pair<std::uint32_t, std::size_t>, DistSet> memo_;
    std::map<std::pair<std::uint32_t, std::vector<Type>>, Type> type_cache_;

    void charge() {
        if (++work > budget_) throw BudgetExceeded("oracle: more than " + std::to_string(budget_) + " distributions");
    }

    void combine(StateId s, const std::vector<ActionLabel>& actions, const std::vector<std::vector<Dist>>& options,
                 const std::vector<std::size_t>& pick, std::size_t i, std::vector<Type> chosen, const Rational& p,
                 std::map<Type, Rational>& out) {
        if (i == actions.size()) {
            auto key = std::make_pair(s.index, chosen);
            auto it = type_cache_.find(key);
            if (it == type_cache_.end()) {
                std::map<ActionLabel, const Type*> children;
                for (std::size_t k = 0; k < actions.size(); ++k) children[actions[k]] = &chosen[k];
                it = type_cache_.emplace(key, eval_.evaluate(s, false, children)).first;
            }
            out[it->second] += p;
            return;
        }
        for (const auto& [t, q] : options[i][pick[i]]) {
            chosen.push_back(t);
            combine(s, actions, options, pick, i + 1, chosen, p * q, out);
            chosen.pop_back();
        }
    }
};

// Pure history-dependent scheduler: a choice for every (history, action)
// with more than one choice. Histories are identified by their index in a
// pre-enumerated list.
class SampledOracle {
public:
    SampledOracle(const Plts& model, const Table& table, std::size_t root_index, const OracleConfig& cfg)
        : model_(model), eval_(table, model), root_(root_index), cfg_(cfg) {}

    OracleResult run(StateId s) {
        enumerate(s, {}, cfg_.depth);
        std::size_t schedulers = 1;
        for (const auto& d : decisions_) {
            if (schedulers > cfg_.budget / d.options) throw BudgetExceeded("oracle: too many schedulers");
            schedulers *= d.options;
        }
        if (schedulers > cfg_.budget) throw BudgetExceeded("oracle: too many schedulers");

        OracleResult best;
        best.schedulers = schedulers;
        std::vector<std::size_t> pick(decisions_.size(), 0);
        std::mt19937_64 rng(cfg_.seed);
        bool first = true;
        for (;;) {
            std::size_t sat = 0, open = 0;
            for (std::size_t k = 0; k < cfg_.samples; ++k) {
                char v = sample(s, {}, cfg_.depth, pick, rng)[root_];
                sat += v == T;
                open += v != F;
            }
            double n = static_cast<double>(cfg_.samples);
            double lo = sat / n, hi = open / n;
            if (first || lo > best.lower_estimate) {
                best.lower_estimate = lo;
                best.standard_error = std::sqrt(lo * (1 - lo) / n);
            }
            best.upper_estimate = first ? hi : std::max(best.upper_estimate, hi);
            first = false;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == decisions_[i].options) pick[i++] = 0;
            if (i == pick.size()) break;
        }
        return best;
    }

private:
    using History = std::vector<std::pair<ActionLabel, std::uint32_t>>;
    struct Decision {
        std::size_t options;
    };

    const Plts& model_;
    Evaluator eval_;
    std::size_t root_;
    const OracleConfig& cfg_;
    std::vector<Decision> decisions_;
    std::map<std::pair<History, ActionLabel>, std::size_t> decision_of_;
    std::map<std::tuple<std::uint32_t, ActionLabel, std::size_t>, std::discrete_distribution<std::size_t>> dists_;

    void enumerate(StateId s, const History& h, std::size_t depth) {
        if (depth == 0) return;
        for (const auto& a : model_.actions_at(s)) {
            auto choices = model_.choices(s, a);
            if (choices.size() > 1) {
                decision_of_.emplace(std::make_pair(h, a), decisions_.size());
                decisions_.push_back({choices.size()});
                if (decisions_.size() > cfg_.budget) throw BudgetExceeded("oracle: too many scheduler decisions");
            }
            std::set<StateId> succ;
            for (const auto& d : choices)
                for (const auto& [to, p] : d) succ.insert(to);
            for (StateId to : succ) {
                History next = h;
                next.emplace_back(a, to.index);
                enumerate(to, next, depth - 1);
            }
        }
    }

    Type sample(StateId s, const History& h, std::size_t depth, const std::vector<std::size_t>& pick,
                std::mt19937_64& rng) {
        if (depth == 0) return eval_.evaluate(s, true, {});
        std::vector<ActionLabel> actions = model_.actions_at(s);
        std::vector<Type> types;
        for (const auto& a : actions) {
            auto choices = model_.choices(s, a);
            std::size_t c = 0;
            if (auto it = decision_of_.find({h, a}); it != decision_of_.end()) c = pick[it->second];
            const Distribution& dist = choices[c];
            auto key = std::make_tuple(s.index, a, c);
            auto it = dists_.find(key);
            if (it == dists_.end()) {
                std::vector<double> w;
                for (const auto& [to, p] : dist) w.push_back(p.to_double());
                it = dists_.emplace(key, std::discrete_distribution<std::size_t>(w.begin(), w.end())).first;
            }
            StateId to = dist[it->second(rng)].first;
            History next = h;
            next.emplace_back(a, to.index);
            types.push_back(sample(to, next, depth - 1, pick, rng));
        }
        std::map<ActionLabel, const Type*> children;
        for (std::size_t k = 0; k < actions.size(); ++k) children[actions[k]] = &types[k];
        return eval_.evaluate(s, false, children);
    }
};

}  // namespace

OracleResult oracle_value(const Plts& model, StateId s, const Formula& f, const OracleConfig& cfg) {
    if (!f.is_closed()) throw std::invalid_argument("oracle: formula is not closed");
    if (cfg.mode == OracleMode::MonteCarlo && cfg.samples == 0)
        throw std::invalid_argument("oracle: at least one sample is needed");
    Table table(f);
    const std::size_t root = table.index.at(f);
    if (cfg.mode == OracleMode::MonteCarlo) return SampledOracle(model, table, root, cfg).run(s);

    ExactOracle exact(model, table, cfg.budget);
    const DistSet& all = exact.achievable(s, cfg.depth);
    OracleResult r;
    bool first = true;
    for (const auto& d : all) {
        Rational sat, open;
        for (const auto& [t, p] : d) {
            if (t[root] == T) sat += p;
            if (t[root] != F) open += p;
        }
        if (first || sat > r.lower) r.lower = sat;
        if (first || open > r.upper) r.upper = open;
        first = false;
    }
    r.work = exact.work;
    r.lower_estimate = r.lower.to_double();
    r.upper_estimate = r.upper.to_double();
    return r;
}

}  // namespace xpl
