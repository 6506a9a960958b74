#pragma once

#include "xpl/depgraph.hpp"
#include "xpl/equations.hpp"
#include "xpl/formula.hpp"
#include "xpl/plts.hpp"

#include <map>
#include <utility>

namespace xpl {

struct ValueReport {
    double value = 0.0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t equations = 0;  // after copy compression
    std::size_t strata = 0;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

// Checks state formulas and computes probabilistic values on one model.
// Verdicts of nested state formulas are memoized per (state, formula), so a
// checker instance should be reused for repeated queries on the same model.
class ModelChecker {
public:
    explicit ModelChecker(const Plts& model, SolverConfig cfg = {}, DepGraphOptions graph = {});

    // s |= phi for a closed state formula. Throws FactorizationFailure,
    // NotConverged, NestedUnknown, MixedSignStratum, IllFormedFormula.
    Verdict check(StateId s, const Formula& phi);

    // Supremum over schedulers of the measure of outcomes satisfying psi.
    ValueReport value(StateId s, const Formula& psi);

    DepGraph graph(StateId s, const Formula& psi);

    const Plts& model() const { return model_; }
    const SolverConfig& config() const { return cfg_; }

private:
    const Plts& model_;
    SolverConfig cfg_;
    DepGraphOptions graph_options_;
    std::map<std::pair<std::uint32_t, Formula>, Verdict> memo_;

    Verdict check_rec(StateId s, const Formula& phi);
    bool nested(StateId s, const Formula& phi);
};

Verdict model_check(const Plts& model, StateId s, const Formula& phi, const SolverConfig& cfg = {});
ValueReport probabilistic_value(const Plts& model, StateId s, const Formula& psi, const SolverConfig& cfg = {});

// Throws IllFormedFormula listing every violation.
void require_wellformed(const Formula& f);

}  // namespace xpl
