#pragma once

#include "xpl/depgraph.hpp"
#include "xpl/errors.hpp"
#include "xpl/formula.hpp"
#include "xpl/rational.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace xpl {

using VarId = std::size_t;

enum class EquationKind { Constant, Copy, Product, Coproduct, Max };

struct Term {
    Rational coefficient;
    VarId var;
};

// x = c | x' | prod x_i | 1 - prod (1 - x_i) | max_c sum_j p_cj * x_cj
struct Equation {
    EquationKind kind = EquationKind::Constant;
    Rational constant;                       // Constant: 0 or 1
    std::vector<VarId> args;                 // Copy, Product, Coproduct
    std::vector<std::vector<Term>> choices;  // Max
};

struct EquationSystem {
    std::vector<Equation> equations;    // indexed by VarId
    std::vector<std::string> names;     // display label per variable
    std::vector<std::size_t> stratum;   // variable -> stratum index
    std::vector<std::vector<VarId>> strata;  // solve order: dependencies first
    std::vector<FixSign> stratum_sign;
    std::vector<bool> stratum_cyclic;
    std::vector<VarId> var_of_node;     // dependency-graph node -> variable
    VarId root = 0;

    std::size_t size() const { return equations.size(); }
};

// One variable per graph node. Strata are the strongly connected components of
// the variable dependency graph; the sign of a cyclic stratum comes from the
// binders unfolded along the leaf traces that cycle inside it.
EquationSystem extract_equations(const DepGraph& g);

// Removes copy equations x = y by substituting y for x everywhere.
EquationSystem compress_copies(const EquationSystem& sys);

// Recomputes strata for a hand-built system; cyclic strata take the sign of
// their members, which must agree (MixedSignStratum otherwise).
void assign_strata(EquationSystem& sys, const std::vector<FixSign>& sign_of_var);

std::string to_string(const EquationSystem& sys);

struct SolverConfig {
    double tolerance = 1e-9;
    std::size_t max_iterations = 1000000;
    double margin = 1e-6;
};

struct Solution {
    std::vector<double> values;
    std::size_t iterations = 0;  // sweeps summed over strata
    double residual = 0.0;       // max |x - f(x)| over all equations
    bool converged = true;
};

// Called after every sweep over a cyclic stratum.
using SweepObserver = std::function<void(std::size_t stratum, const std::vector<double>& values)>;

class NotConverged : public Error {
public:
    NotConverged(std::size_t stratum, Solution partial);
    std::size_t stratum() const { return stratum_; }
    const Solution& partial() const { return partial_; }

private:
    std::size_t stratum_;
    Solution partial_;
};

// Kleene iteration per stratum in dependency order (Gauss-Seidel sweeps), from
// 0 for least strata and from 1 for greatest strata, until no coordinate moves
// by `tolerance` or more.
Solution solve(const EquationSystem& sys, const SolverConfig& cfg = {}, const SweepObserver& observer = {});

double evaluate(const Equation& eq, const std::vector<double>& values);

enum class Answer { Holds, Fails, Unknown };
const char* to_string(Answer a);

struct Verdict {
    double value = 0.0;
    Answer answer = Answer::Unknown;
    std::size_t iterations = 0;
    bool converged = true;
};

// Unknown when |value - p| <= margin; otherwise the comparison decides.
Verdict check_threshold(double value, Comparison cmp, const Rational& p, const SolverConfig& cfg = {});

}  // namespace xpl
