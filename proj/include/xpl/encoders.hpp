#pragma once

#include "xpl/formula.hpp"
#include "xpl/plts.hpp"
#include "xpl/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xpl {

// Translation output. Warnings flag inputs whose encoding is produced as
// written but whose meaning under maximizing schedulers is questionable.
struct Encoding {
    Formula formula;
    std::vector<std::string> warnings;
};

// ---------------------------------------------------------------- MDPs

struct MdpAction {
    std::string name;
    std::vector<std::pair<std::size_t, Rational>> distribution;  // target state index, probability
};

struct Mdp {
    std::vector<std::string> states;
    std::vector<std::set<Proposition>> labels;
    std::vector<std::vector<MdpAction>> actions;  // enabled actions per state

    std::size_t add_state(std::string name, std::set<Proposition> props = {});
    void add_action(std::size_t state, std::string name, std::vector<std::pair<std::size_t, Rational>> dist);
    std::size_t num_states() const { return states.size(); }
};

// Single action label "a"; the i-th enabled MDP action of a state becomes
// choice i. Terminal states get a probability-one self-loop.
inline constexpr const char* kMdpAction = "a";
Plts mdp_to_plts(const Mdp& m);

// ---------------------------------------------------------------- PCTL*

struct PctlFormula;
using PctlPtr = std::shared_ptr<const PctlFormula>;

// phi ::= A | phi & phi | !phi | Pr{>p} psi | Pr{>=p} psi
// psi ::= phi | X psi | psi U psi | psi & psi | !psi
struct PctlFormula {
    enum class Kind { Prop, Not, And, Prob, Next, Until };
    Kind kind = Kind::Prop;
    std::string name;
    Comparison comparison = Comparison::Greater;
    Rational threshold;
    std::vector<PctlPtr> args;

    bool is_state() const;
};

PctlPtr pctl_prop(std::string name);
PctlPtr pctl_not(PctlPtr f);
PctlPtr pctl_and(PctlPtr a, PctlPtr b);
PctlPtr pctl_prob(Comparison cmp, Rational p, PctlPtr path);  // cmp is > or >=
PctlPtr pctl_next(PctlPtr f);
PctlPtr pctl_until(PctlPtr a, PctlPtr b);

// Unary operators bind tightest, then U (right associative), then &.
PctlPtr parse_pctl(std::string_view text);
std::string to_string(const PctlFormula& f);

Encoding pctl_to_xpl(const PctlFormula& f);

// ---------------------------------------------------------------- RMDPs

// A vertex is a plain node of the component, or a port of one of its boxes:
// (box, entry of the callee) is a call port, (box, exit of the callee) a
// return port.
struct RmdpVertex {
    std::string box;  // empty for plain nodes
    std::string node;
    friend auto operator<=>(const RmdpVertex&, const RmdpVertex&) = default;
};

struct RmdpEdge {
    RmdpVertex from;
    RmdpVertex to;
    Rational prob;  // ignored for player 1 and 2 sources
};

struct RmdpComponent {
    std::string name;
    std::vector<std::string> nodes;  // includes entries and exits
    std::vector<std::string> entries;
    std::vector<std::string> exits;  // exit i (1-based) is exits[i - 1]
    std::vector<std::pair<std::string, std::string>> boxes;  // box name, callee component
    std::map<RmdpVertex, int> player;  // 0 (default), 1 maximizer, 2 minimizer
    std::vector<RmdpEdge> edges;
};

struct Rmdp {
    std::vector<RmdpComponent> components;
};

// State name of a vertex of component `comp` in the translated PLTS.
std::string rmdp_state_name(const std::string& comp, const RmdpVertex& v);

// Actions: p (probabilistic step), n (one choice per target, probability 1),
// c (call port to the callee's entry), r_i (call port to the i-th return
// port), e_i (self-loop at the i-th exit). No propositions.
Plts rmdp_to_plts(const Rmdp& r);

struct TerminationFormula {
    Formula formula;
    bool expected_separable = false;
};

// Termination at exit `target_exit` (1-based). One exit gives the single
// least fixed point; more exits give a normalized simultaneous block.
TerminationFormula termination_formula(std::size_t num_exits, std::size_t target_exit);
// The simultaneous block before normalization.
Formula termination_system(std::size_t num_exits, std::size_t target_exit);

// ---------------------------------------------------------------- branching processes

struct BpRule {
    Rational prob;
    std::vector<std::string> children;  // child type names, in order
};

struct BpType {
    std::string name;
    std::vector<std::vector<BpRule>> modes;  // one rule distribution per mode
    std::set<Proposition> props;
};

struct BranchingProcess {
    std::vector<BpType> types;
};

// Each type is a state with action "step" (choice = mode) leading to one
// intermediate state per rule. A rule state reaches its i-th child through
// action child_i with probability one; a childless rule state has a "death"
// self-loop.
Plts bp_to_plts(const BranchingProcess& bp);
std::size_t max_children(const BranchingProcess& bp);
std::string child_action(std::size_t i);  // 1-based
// mu X.(<death>tt | <step>X | (<child_1>X & [child_2]X & ... & [child_k]X))
Formula extinction_formula(std::size_t max_children);

// ---------------------------------------------------------------- PTTL

struct PttlFormula;
using PttlPtr = std::shared_ptr<const PttlFormula>;

// phi ::= A | !phi | phi & phi | Pr{>p} psi | Pr{>=p} psi
// psi ::= AX phi | EX phi | A[phi U phi] | E[phi U phi] | A[phi R phi] | E[phi R phi]
struct PttlFormula {
    enum class Kind { Prop, Not, And, Prob, AX, EX, AU, EU, AR, ER };
    Kind kind = Kind::Prop;
    std::string name;
    Comparison comparison = Comparison::Greater;
    Rational threshold;
    std::vector<PttlPtr> args;

    bool is_state() const;
};

PttlPtr pttl_prop(std::string name);
PttlPtr pttl_not(PttlPtr f);
PttlPtr pttl_and(PttlPtr a, PttlPtr b);
PttlPtr pttl_prob(Comparison cmp, Rational p, PttlPtr path);
PttlPtr pttl_path(PttlFormula::Kind kind, PttlPtr a, PttlPtr b = nullptr);

PttlPtr parse_pttl(std::string_view text);
std::string to_string(const PttlFormula& f);

// Placeholder action standing for "any action"; expand_any_action replaces
// <->f by the disjunction of <a>f and [-]f by the conjunction of [a]f.
inline constexpr const char* kAnyAction = "-";
Encoding pttl_to_xpl(const PttlFormula& f);
Formula expand_any_action(const Formula& f, const std::set<ActionLabel>& alphabet);

}  // namespace xpl
