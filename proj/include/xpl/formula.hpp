#pragma once

#include "xpl/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace xpl {

enum class FormulaKind : std::uint8_t {
    True,
    False,
    Prop,
    NegProp,
    Prob,
    And,
    Or,
    Var,
    Diamond,
    Box,
    Mu,
    Nu,
    SimFix,
};

enum class Comparison : std::uint8_t { Greater, GreaterEq, Less, LessEq };
enum class FixSign : std::uint8_t { Least, Greatest };

const char* to_string(Comparison c);
const char* to_string(FixSign s);
bool compare(double value, Comparison c, double p);

class Formula;

// Immutable, structurally shared XPL formula. State and fuzzy formulas share
// one representation; `is_state()` tells them apart. Instances are built only
// through the constructor functions below, which keep And/Or nodes flattened,
// deduplicated and sorted, so structurally equal formulas compare equal.
class Formula {
public:
    struct Node;

    Formula();  // tt

    FormulaKind kind() const;
    // Proposition, variable, action label, binder variable or SimFix principal.
    const std::string& name() const;
    const std::vector<Formula>& children() const;
    const Formula& body() const;  // first child; modal, binder and Prob bodies
    Comparison comparison() const;
    const Rational& threshold() const;

    // SimFix only: per-equation signs and variables; bodies are children().
    const std::vector<FixSign>& sim_signs() const;
    const std::vector<std::string>& sim_vars() const;

    bool is_state() const;
    bool is_closed() const { return free_vars().empty(); }
    bool is_modal() const { return kind() == FormulaKind::Diamond || kind() == FormulaKind::Box; }
    bool is_binder() const { return kind() == FormulaKind::Mu || kind() == FormulaKind::Nu; }
    bool is_junction() const { return kind() == FormulaKind::And || kind() == FormulaKind::Or; }
    const std::vector<std::string>& free_vars() const;  // sorted
    bool has_free(const std::string& var) const;
    std::size_t size() const;  // number of AST nodes
    std::size_t hash() const;

    std::string to_string() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;

    friend Formula make_node(FormulaKind, std::string, std::vector<Formula>, Comparison, Rational,
                             std::vector<FixSign>, std::vector<std::string>);
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula tt();
Formula ff();
Formula prop(const std::string& name);
Formula neg_prop(const std::string& name);
Formula var(const std::string& name);
Formula conj(std::vector<Formula> children);
Formula disj(std::vector<Formula> children);
Formula conj(std::initializer_list<Formula> children);
Formula disj(std::initializer_list<Formula> children);
Formula diamond(const std::string& action, Formula body);
Formula box(const std::string& action, Formula body);
Formula mu(const std::string& var, Formula body);
Formula nu(const std::string& var, Formula body);
Formula fix(FixSign sign, const std::string& var, Formula body);
Formula prob(Comparison cmp, Rational threshold, Formula body);

struct SimEquation {
    FixSign sign;
    std::string var;
    Formula body;
};
// Simultaneous fixed-point block; evaluates to the component named `principal`.
Formula simfix(std::vector<SimEquation> equations, const std::string& principal);

// Same kind of junction with new children (And -> conj, Or -> disj).
Formula rebuild_junction(FormulaKind kind, std::vector<Formula> children);
// Same modality / binder / Prob node with a new body.
Formula with_body(const Formula& f, Formula body);

// All proposition names occurring anywhere in f (including under Prob).
std::vector<std::string> propositions(const Formula& f);

}  // namespace xpl
