#include "xpl/equations.hpp"

#include "scc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace xpl {

namespace {

std::vector<std::vector<std::size_t>> dependencies(const EquationSystem& sys) {
    std::vector<std::vector<std::size_t>> succ(sys.size());
    for (VarId v = 0; v < sys.size(); ++v) {
        const auto& eq = sys.equations[v];
        for (VarId a : eq.args) succ[v].push_back(a);
        for (const auto& row : eq.choices)
            for (const auto& t : row) succ[v].push_back(t.var);
        std::sort(succ[v].begin(), succ[v].end());
        succ[v].erase(std::unique(succ[v].begin(), succ[v].end()), succ[v].end());
    }
    return succ;
}

// Fills strata from the dependency components; `sign_bits(members)` returns the
// sign bits claimed by a cyclic component.
template <class SignBits>
void stratify(EquationSystem& sys, SignBits sign_bits) {
    auto succ = dependencies(sys);
    auto comps = detail::strongly_connected(succ);
    sys.stratum.assign(sys.size(), 0);
    sys.strata.clear();
    sys.stratum_sign.clear();
    sys.stratum_cyclic.clear();
    for (auto& comp : comps) {
        std::size_t k = sys.strata.size();
        bool cyclic = comp.size() > 1 ||
                      std::binary_search(succ[comp[0]].begin(), succ[comp[0]].end(), comp[0]);
        FixSign sign = FixSign::Least;
        if (cyclic) {
            std::uint8_t bits = sign_bits(comp);
            if (bits == (kLeastBit | kGreatestBit)) {
                std::string who;
                for (std::size_t i = 0; i < comp.size() && i < 4; ++i) who += (i ? ", " : "") + sys.names[comp[i]];
                throw MixedSignStratum("equations {" + who + (comp.size() > 4 ? ", ..." : "") +
                                       "} recur through both least and greatest fixed points");
            }
            if (bits == kGreatestBit) sign = FixSign::Greatest;
        }
        for (VarId v : comp) sys.stratum[v] = k;
        sys.strata.push_back(std::move(comp));
        sys.stratum_sign.push_back(sign);
        sys.stratum_cyclic.push_back(cyclic);
    }
}

// Sign bits per dependency-graph node, derived from cycles of leaf traces.
std::vector<std::uint8_t> trace_cycle_signs(const DepGraph& g, const std::vector<std::size_t>& node_component) {
    const auto& nodes = g.nodes();
    std::vector<std::size_t> offset(nodes.size() + 1, 0);
    for (NodeId n = 0; n < nodes.size(); ++n) offset[n + 1] = offset[n] + g.leaves(n).size();
    const std::size_t total = offset.back();
    std::vector<std::vector<std::size_t>> succ(total);
    std::vector<std::size_t> owner(total);
    for (NodeId n = 0; n < nodes.size(); ++n)
        for (std::size_t i = offset[n]; i < offset[n + 1]; ++i) owner[i] = n;
    for (const auto& l : g.trace_links()) succ[offset[l.from] + l.from_leaf].push_back(offset[l.to] + l.to_leaf);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    auto comps = detail::strongly_connected(succ);
    std::vector<std::size_t> comp_of(total);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (auto v : comps[c]) comp_of[v] = c;

    std::vector<std::uint8_t> per_component(comps.size(), 0);
    for (const auto& l : g.trace_links()) {
        std::size_t a = offset[l.from] + l.from_leaf, b = offset[l.to] + l.to_leaf;
        if (comp_of[a] == comp_of[b]) per_component[comp_of[a]] |= l.signs;
    }
    std::vector<std::uint8_t> per_graph_component(*std::max_element(node_component.begin(), node_component.end()) + 1, 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        per_graph_component[node_component[owner[comps[c][0]]]] |= per_component[c];
    std::vector<std::uint8_t> out(nodes.size());
    for (NodeId n = 0; n < nodes.size(); ++n) out[n] = per_graph_component[node_component[n]];
    return out;
}

std::string label(const DepGraph& g, NodeId n) {
    const auto& node = g.nodes()[n];
    return "(" + g.state_name(node.state) + ", " + node.formula.to_string() + ")";
}

}  // namespace

EquationSystem extract_equations(const DepGraph& g) {
    if (!g.complete()) throw std::logic_error("extract_equations on an incomplete dependency graph");
    const auto& nodes = g.nodes();
    EquationSystem sys;
    sys.equations.resize(nodes.size());
    for (NodeId n = 0; n < nodes.size(); ++n) {
        sys.names.push_back(label(g, n));
        Equation& eq = sys.equations[n];
        const auto& node = nodes[n];
        switch (node.kind) {
            case NodeKind::True:
                eq.kind = EquationKind::Constant;
                eq.constant = 1;
                break;
            case NodeKind::False:
                eq.kind = EquationKind::Constant;
                eq.constant = 0;
                break;
            case NodeKind::Unfactored:
            case NodeKind::And:
            case NodeKind::Or:
                eq.kind = node.kind == NodeKind::Unfactored ? EquationKind::Copy
                          : node.kind == NodeKind::And      ? EquationKind::Product
                                                            : EquationKind::Coproduct;
                for (std::size_t e : g.out_edges(n)) eq.args.push_back(g.edges()[e].to);
                break;
            case NodeKind::Action:
                eq.kind = EquationKind::Max;
                for (const auto& row : node.choices) {
                    auto& terms = eq.choices.emplace_back();
                    for (const auto& [to, p] : row) terms.push_back({p, to});
                }
                break;
        }
    }
    sys.var_of_node.resize(nodes.size());
    for (NodeId n = 0; n < nodes.size(); ++n) sys.var_of_node[n] = n;
    sys.root = g.root();

    // Component ids of the node graph coincide with those of the equations.
    auto succ = dependencies(sys);
    auto comps = detail::strongly_connected(succ);
    std::vector<std::size_t> comp_of(nodes.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (auto v : comps[c]) comp_of[v] = c;
    auto cycle_signs = trace_cycle_signs(g, comp_of);

    stratify(sys, [&](const std::vector<VarId>& comp) {
        std::uint8_t bits = cycle_signs[comp[0]];
        if (bits == 0)
            for (VarId v : comp) bits |= g.unfolded_signs(v);
        return bits;
    });
    return sys;
}

EquationSystem compress_copies(const EquationSystem& sys) {
    const std::size_t n = sys.size();
    // Representative of each variable along its copy chain; copy cycles keep
    // their equations.
    std::vector<VarId> rep(n);
    for (VarId v = 0; v < n; ++v) {
        VarId cur = v;
        std::vector<bool> seen(n, false);
        while (sys.equations[cur].kind == EquationKind::Copy && !seen[cur]) {
            seen[cur] = true;
            cur = sys.equations[cur].args.front();
        }
        rep[v] = sys.equations[cur].kind == EquationKind::Copy ? v : cur;
    }
    std::vector<VarId> new_id(n, static_cast<VarId>(-1));
    EquationSystem out;
    for (VarId v = 0; v < n; ++v) {
        if (rep[v] != v) continue;
        new_id[v] = out.equations.size();
        out.equations.push_back(sys.equations[v]);
        out.names.push_back(sys.names[v]);
    }
    auto map = [&](VarId v) { return new_id[rep[v]]; };
    for (auto& eq : out.equations) {
        for (auto& a : eq.args) a = map(a);
        for (auto& row : eq.choices)
            for (auto& t : row) t.var = map(t.var);
    }
    out.var_of_node.resize(sys.var_of_node.size());
    for (std::size_t i = 0; i < sys.var_of_node.size(); ++i) out.var_of_node[i] = map(sys.var_of_node[i]);
    out.root = map(sys.root);

    std::vector<FixSign> old_sign(n);
    for (VarId v = 0; v < n; ++v) old_sign[v] = sys.stratum_sign[sys.stratum[v]];
    std::vector<VarId> old_of_new(out.size());
    for (VarId v = 0; v < n; ++v)
        if (new_id[v] != static_cast<VarId>(-1)) old_of_new[new_id[v]] = v;
    stratify(out, [&](const std::vector<VarId>& comp) {
        std::uint8_t bits = 0;
        for (VarId v : comp)
            bits |= old_sign[old_of_new[v]] == FixSign::Least ? kLeastBit : kGreatestBit;
        return bits;
    });
    return out;
}

void assign_strata(EquationSystem& sys, const std::vector<FixSign>& sign_of_var) {
    if (sign_of_var.size() != sys.size()) throw std::invalid_argument("one sign per variable expected");
    if (sys.names.size() < sys.size())
        for (VarId v = sys.names.size(); v < sys.size(); ++v) sys.names.push_back("x" + std::to_string(v));
    stratify(sys, [&](const std::vector<VarId>& comp) {
        std::uint8_t bits = 0;
        for (VarId v : comp) bits |= sign_of_var[v] == FixSign::Least ? kLeastBit : kGreatestBit;
        return bits;
    });
}

std::string to_string(const EquationSystem& sys) {
    std::ostringstream os;
    auto x = [](VarId v) { return "x" + std::to_string(v); };
    for (VarId v = 0; v < sys.size(); ++v) {
        const auto& eq = sys.equations[v];
        os << x(v) << " = ";
        switch (eq.kind) {
            case EquationKind::Constant: os << eq.constant; break;
            case EquationKind::Copy: os << x(eq.args.front()); break;
            case EquationKind::Product:
                for (std::size_t i = 0; i < eq.args.size(); ++i) os << (i ? " * " : "") << x(eq.args[i]);
                break;
            case EquationKind::Coproduct:
                os << "coprod(";
                for (std::size_t i = 0; i < eq.args.size(); ++i) os << (i ? ", " : "") << x(eq.args[i]);
                os << ")";
                break;
            case EquationKind::Max: {
                auto row = [&](const std::vector<Term>& terms) {
                    std::string s;
                    for (std::size_t i = 0; i < terms.size(); ++i) {
                        if (i) s += " + ";
                        if (!terms[i].coefficient.is_one()) s += terms[i].coefficient.to_string() + "*";
                        s += x(terms[i].var);
                    }
                    return s;
                };
                if (eq.choices.size() == 1) {
                    os << row(eq.choices[0]);
                } else {
                    os << "max(";
                    for (std::size_t c = 0; c < eq.choices.size(); ++c) os << (c ? ", " : "") << row(eq.choices[c]);
                    os << ")";
                }
                break;
            }
        }
        os << "    [" << (sys.stratum_sign[sys.stratum[v]] == FixSign::Least ? "mu" : "nu") << " stratum "
           << sys.stratum[v] << "] " << sys.names[v] << "\n";
    }
    return os.str();
}

double evaluate(const Equation& eq, const std::vector<double>& values) {
    switch (eq.kind) {
        case EquationKind::Constant: return eq.constant.to_double();
        case EquationKind::Copy: return values[eq.args.front()];
        case EquationKind::Product: {
            double p = 1.0;
            for (VarId a : eq.args) p *= values[a];
            return p;
        }
        case EquationKind::Coproduct: {
            double q = 1.0;
            for (VarId a : eq.args) q *= 1.0 - values[a];
            return 1.0 - q;
        }
        case EquationKind::Max: {
            double best = 0.0;
            bool first = true;
            for (const auto& row : eq.choices) {
                double s = 0.0;
                for (const auto& t : row) s += t.coefficient.to_double() * values[t.var];
                if (first || s > best) best = s;  // ties keep the lowest choice index
                first = false;
            }
            return best;
        }
    }
    return 0.0;
}

NotConverged::NotConverged(std::size_t stratum, Solution partial)
    : Error("value iteration did not converge in stratum " + std::to_string(stratum) + " after " +
            std::to_string(partial.iterations) + " sweeps (residual " + std::to_string(partial.residual) + ")"),
      stratum_(stratum),
      partial_(std::move(partial)) {}

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : v > 1.0 ? 1.0 : v; }

double residual(const EquationSystem& sys, const std::vector<double>& values) {
    double r = 0.0;
    for (VarId v = 0; v < sys.size(); ++v) r = std::max(r, std::fabs(values[v] - evaluate(sys.equations[v], values)));
    return r;
}

}  // namespace

Solution solve(const EquationSystem& sys, const SolverConfig& cfg, const SweepObserver& observer) {
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    Solution sol;
    sol.values.assign(sys.size(), 0.0);
    auto& x = sol.values;
    // Compute each stratum's per-variable coefficient arrays once: evaluation
    // converts rationals to doubles, which is far too slow inside the loop.
    struct Compiled {
        EquationKind kind;
        double constant;
        std::vector<VarId> args;
        std::vector<std::vector<std::pair<double, VarId>>> rows;
    };
    std::vector<Compiled> compiled(sys.size());
    for (VarId v = 0; v < sys.size(); ++v) {
        const auto& eq = sys.equations[v];
        auto& c = compiled[v];
        c.kind = eq.kind;
        c.constant = eq.constant.to_double();
        c.args = eq.args;
        for (const auto& row : eq.choices) {
            auto& r = c.rows.emplace_back();
            for (const auto& t : row) r.emplace_back(t.coefficient.to_double(), t.var);
        }
    }
    auto eval = [&](VarId v) {
        const auto& c = compiled[v];
        switch (c.kind) {
            case EquationKind::Constant: return c.constant;
            case EquationKind::Copy: return x[c.args.front()];
            case EquationKind::Product: {
                double p = 1.0;
                for (VarId a : c.args) p *= x[a];
                return p;
            }
            case EquationKind::Coproduct: {
                double q = 1.0;
                for (VarId a : c.args) q *= 1.0 - x[a];
                return 1.0 - q;
            }
            case EquationKind::Max: {
                double best = 0.0;
                bool first = true;
                for (const auto& row : c.rows) {
                    double s = 0.0;
                    for (const auto& [p, w] : row) s += p * x[w];
                    if (first || s > best) best = s;
                    first = false;
                }
                return best;
            }
        }
        return 0.0;
    };

    for (std::size_t k = 0; k < sys.strata.size(); ++k) {
        const auto& members = sys.strata[k];
        if (!sys.stratum_cyclic[k]) {
            x[members[0]] = clamp01(eval(members[0]));
            ++sol.iterations;
            continue;
        }
        const double start = sys.stratum_sign[k] == FixSign::Least ? 0.0 : 1.0;
        for (VarId v : members) x[v] = start;
        bool done = false;
        for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
            double change = 0.0;
            for (VarId v : members) {
                double nv = clamp01(eval(v));
                change = std::max(change, std::fabs(nv - x[v]));
                x[v] = nv;
            }
            ++sol.iterations;
            if (observer) observer(k, x);
            if (change < cfg.tolerance) {
                done = true;
                break;
            }
        }
        if (!done) {
            sol.converged = false;
            sol.residual = residual(sys, x);
            throw NotConverged(k, std::move(sol));
        }
    }
    sol.residual = residual(sys, x);
    return sol;
}

const char* to_string(Answer a) {
    switch (a) {
        case Answer::Holds: return "holds";
        case Answer::Fails: return "fails";
        case Answer::Unknown: return "unknown";
    }
    return "?";
}

Verdict check_threshold(double value, Comparison cmp, const Rational& p, const SolverConfig& cfg) {
    Verdict v;
    v.value = value;
    double pd = p.to_double();
    if (std::fabs(value - pd) <= cfg.margin) {
        v.answer = Answer::Unknown;
    } else {
        v.answer = compare(value, cmp, pd) ? Answer::Holds : Answer::Fails;
    }
    return v;
}

}  // namespace xpl
