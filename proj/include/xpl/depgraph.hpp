#pragma once

#include "xpl/errors.hpp"
#include "xpl/formula.hpp"
#include "xpl/plts.hpp"
#include "xpl/transform.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace xpl {

struct Closure {
    std::vector<Formula> formulas;  // sorted
    bool contains(const Formula& f) const;
    std::size_t size() const { return formulas.size(); }
};

// Fisher-Ladner closure: subformulas of junctions, modal bodies and one
// unfolding of every binder. Prob leaves are not entered.
Closure closure(const Formula& f);

enum class NodeKind { Unfactored, And, Or, Action, True, False };
enum class EdgeKind { Epsilon, EpsilonAnd, EpsilonOr, Action };

const char* to_string(NodeKind k);

using NodeId = std::size_t;

struct DepNode {
    StateId state;
    Formula formula;     // as first reached
    NodeKind kind = NodeKind::Unfactored;
    ActionLabel action;  // Action nodes only
    // Action nodes only: for every choice index, (successor node, probability).
    std::vector<std::vector<std::pair<NodeId, Rational>>> choices;
};

struct DepEdge {
    NodeId from;
    EdgeKind kind;
    ActionLabel action;  // Action edges only
    NodeId to;
};

// Sign bits of the fixed-point binders unfolded along a trace link.
inline constexpr std::uint8_t kLeastBit = 1;
inline constexpr std::uint8_t kGreatestBit = 2;

// A step of a single leaf obligation from one node to a leaf of a successor
// node. Cycles of such steps tell which binder keeps recurring in a
// strongly connected part of the graph.
struct TraceLink {
    NodeId from;
    std::size_t from_leaf;
    NodeId to;
    std::size_t to_leaf;
    std::uint8_t signs;
};

class DepGraph {
public:
    const std::vector<DepNode>& nodes() const { return nodes_; }
    const std::vector<DepEdge>& edges() const { return edges_; }
    const std::vector<std::size_t>& out_edges(NodeId n) const { return out_.at(n); }
    NodeId root() const { return 0; }
    const std::string& state_name(StateId s) const { return state_names_.at(s.index); }

    // Leaf obligations per node and the links between them.
    const std::vector<Formula>& leaves(NodeId n) const { return leaves_.at(n); }
    const std::vector<TraceLink>& trace_links() const { return links_; }
    // Signs of all binders expanded when factoring the node.
    std::uint8_t unfolded_signs(NodeId n) const { return unfolded_.at(n); }

    bool complete() const { return complete_; }

private:
    friend class GraphBuilder;
    std::vector<DepNode> nodes_;
    std::vector<DepEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<Formula>> leaves_;
    std::vector<TraceLink> links_;
    std::vector<std::uint8_t> unfolded_;
    std::vector<std::string> state_names_;
    bool complete_ = false;
};

// Raised when a reachable node has no factored form. Carries the graph built
// so far, whose last node is the entangled one.
class FactorizationFailure : public Error {
public:
    FactorizationFailure(StateId state, std::string state_name, Formula formula, Formula attempted,
                         std::set<ActionLabel> entangled, std::shared_ptr<const DepGraph> partial);

    StateId state() const { return state_; }
    const std::string& state_name() const { return state_name_; }
    const Formula& formula() const { return formula_; }
    const Formula& attempted() const { return attempted_; }
    const std::set<ActionLabel>& entangled() const { return entangled_; }
    const std::shared_ptr<const DepGraph>& partial_graph() const { return partial_; }

private:
    StateId state_;
    std::string state_name_;
    Formula formula_, attempted_;
    std::set<ActionLabel> entangled_;
    std::shared_ptr<const DepGraph> partial_;
};

struct DepGraphOptions {
    std::size_t node_budget = 1000000;
    std::size_t clause_budget = kDefaultClauseBudget;
};

// Evaluates propositional state formulas against the state's labels; throws
// std::invalid_argument on Prob subformulas.
bool check_propositional(const Plts& model, StateId s, const Formula& f);

DepGraph build_depgraph(const Plts& model, StateId s, const Formula& f, const StateChecker& check_state,
                        const DepGraphOptions& options = {});
DepGraph build_depgraph(const Plts& model, StateId s, const Formula& f, const DepGraphOptions& options = {});

std::string export_dot(const DepGraph& g);

}  // namespace xpl
