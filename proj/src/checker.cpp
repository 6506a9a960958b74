#include "xpl/checker.hpp"
#include "xpl/formula_ops.hpp"

#include <stdexcept>

namespace xpl {

void require_wellformed(const Formula& f) {
    auto v = check_wellformed(f);
    if (v.empty()) return;
    std::string msg = "ill-formed formula:";
    for (const auto& x : v) msg += "\n  " + x.rule + ": " + x.detail + " in " + x.where;
    throw IllFormedFormula(msg);
}

ModelChecker::ModelChecker(const Plts& model, SolverConfig cfg, DepGraphOptions graph)
    : model_(model), cfg_(cfg), graph_options_(graph) {
    auto v = validate_plts(model);
    if (!v.empty()) {
        std::string msg = "invalid model:";
        for (const auto& x : v) msg += "\n  " + x.rule + " at " + x.where + ": " + x.detail;
        throw InvalidModel(msg);
    }
}

Verdict ModelChecker::check(StateId s, const Formula& phi) {
    if (!phi.is_state()) throw IllFormedFormula("not a state formula: " + phi.to_string());
    require_wellformed(phi);
    return check_rec(s, phi);
}

Verdict ModelChecker::check_rec(StateId s, const Formula& phi) {
    auto key = std::make_pair(s.index, phi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Verdict v;
    auto boolean = [&](bool b) {
        v.value = b ? 1.0 : 0.0;
        v.answer = b ? Answer::Holds : Answer::Fails;
    };
    switch (phi.kind()) {
        case FormulaKind::True: boolean(true); break;
        case FormulaKind::False: boolean(false); break;
        case FormulaKind::Prop: boolean(model_.holds(s, phi.name())); break;
        case FormulaKind::NegProp: boolean(!model_.holds(s, phi.name())); break;
        case FormulaKind::And:
        case FormulaKind::Or: {
            const bool is_and = phi.kind() == FormulaKind::And;
            const Answer decisive = is_and ? Answer::Fails : Answer::Holds;
            bool unknown = false;
            bool decided = false;
            for (const auto& c : phi.children()) {
                Verdict cv = check_rec(s, c);
                v.iterations += cv.iterations;
                v.converged = v.converged && cv.converged;
                if (cv.answer == decisive) {
                    decided = true;
                    break;
                }
                if (cv.answer == Answer::Unknown) unknown = true;
            }
            if (decided) {
                boolean(!is_and);
            } else if (unknown) {
                v.answer = Answer::Unknown;
                v.value = 0.5;
            } else {
                boolean(is_and);
            }
            break;
        }
        case FormulaKind::Prob: {
            ValueReport r = value(s, phi.body());
            Verdict t = check_threshold(r.value, phi.comparison(), phi.threshold(), cfg_);
            t.iterations = r.iterations;
            t.converged = r.converged;
            v = t;
            break;
        }
        default:
            throw IllFormedFormula("not a state formula: " + phi.to_string());
    }
    memo_.emplace(key, v);
    return v;
}

bool ModelChecker::nested(StateId s, const Formula& phi) {
    Verdict v = check_rec(s, phi);
    if (v.answer == Answer::Unknown)
        throw NestedUnknown("nested state formula " + phi.to_string() + " at state " + model_.name(s) +
                            " is within the comparison margin (value " + std::to_string(v.value) + ")");
    return v.answer == Answer::Holds;
}

DepGraph ModelChecker::graph(StateId s, const Formula& psi) {
    require_wellformed(psi);
    StateChecker cs = [this](StateId t, const Formula& f) { return nested(t, f); };
    return build_depgraph(model_, s, psi, cs, graph_options_);
}

ValueReport ModelChecker::value(StateId s, const Formula& psi) {
    if (s.index >= model_.num_states()) throw std::out_of_range("state index out of range");
    DepGraph g = graph(s, psi);
    EquationSystem sys = compress_copies(extract_equations(g));
    Solution sol = solve(sys, cfg_);
    ValueReport r;
    r.value = sol.values[sys.root];
    r.nodes = g.nodes().size();
    r.edges = g.edges().size();
    r.equations = sys.size();
    r.strata = sys.strata.size();
    r.iterations = sol.iterations;
    r.residual = sol.residual;
    r.converged = sol.converged;
    return r;
}

Verdict model_check(const Plts& model, StateId s, const Formula& phi, const SolverConfig& cfg) {
    return ModelChecker(model, cfg).check(s, phi);
}

ValueReport probabilistic_value(const Plts& model, StateId s, const Formula& psi, const SolverConfig& cfg) {
    return ModelChecker(model, cfg).value(s, psi);
}

}  // namespace xpl
