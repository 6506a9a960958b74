// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include "fixtures.hpp"
#include "generators.hpp"
#include "xpl/checker.hpp"
#include "xpl/cli.hpp"
#include "xpl/encoders.hpp"
#include "xpl/formula_ops.hpp"
#include "xpl/io.hpp"
#include "xpl/oracle.hpp"
#include "xpl/sample_models.hpp"
#include "xpl/transform.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace xpl;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- 1, 2

// The worked-example graph: node set and labelled edges.
std::string graph_shape_error(const Plts& m, const DepGraph& g) {
    Formula psi = choice_loop_formula();
    Formula bc = conj({box("b", psi), box("c", psi)});
    Formula abc = box("a", bc);
    std::vector<std::pair<std::string, Formula>> expected = {
        {"s1", psi}, {"s1", abc}, {"s2", bc}, {"s2", box("b", psi)}, {"s2", box("c", psi)},
        {"s3", psi}, {"s4", psi}, {"s3", abc}, {"s4", abc}, {"s5", bc}, {"s6", bc}, {"s5", tt()}, {"s6", tt()}};
    const char* names[] = {"1", "1a", "2bc", "2b", "2c", "3", "4", "3a", "4a", "5bc", "6bc", "5tt", "6tt"};
    std::map<std::pair<std::string, DnfKey>, NodeId> index;
    for (NodeId n = 0; n < g.nodes().size(); ++n) {
        const auto& node = g.nodes()[n];
        index[{m.name(node.state), dnf_key(canonical_at(node.state, m, node.formula))}] = n;
    }
    if (index.size() != g.nodes().size()) return "two graph nodes share a key";
    std::map<std::string, NodeId> id;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        StateId s = m.state(expected[i].first);
        auto it = index.find({expected[i].first, dnf_key(canonical_at(s, m, expected[i].second))});
        if (it == index.end()) return "missing node (" + expected[i].first + ", " + expected[i].second.to_string() + ")";
        id[names[i]] = it->second;
    }
    std::multiset<std::tuple<NodeId, std::string, NodeId>> edges, want = {
        {id["1"], "eps", id["1a"]},       {id["1a"], "a", id["2bc"]},   {id["2bc"], "and", id["2b"]},
        {id["2bc"], "and", id["2c"]},     {id["2b"], "b", id["3"]},     {id["2b"], "b", id["4"]},
        {id["2c"], "c", id["3"]},         {id["2c"], "c", id["4"]},     {id["3"], "eps", id["3a"]},
        {id["4"], "eps", id["4a"]},       {id["3a"], "a", id["2bc"]},   {id["3a"], "a", id["5bc"]},
        {id["4a"], "a", id["2bc"]},       {id["4a"], "a", id["6bc"]},   {id["5bc"], "eps", id["5tt"]},
        {id["6bc"], "eps", id["6tt"]}};
    for (const auto& e : g.edges()) {
        std::string label = e.kind == EdgeKind::Action ? e.action
                            : e.kind == EdgeKind::Epsilon ? "eps"
                            : e.kind == EdgeKind::EpsilonAnd ? "and" : "or";
        edges.emplace(e.from, label, e.to);
    }
    if (edges != want) return "edge set differs";
    if (g.root() != id["1"]) return "root is not (s1, psi)";
    return {};
}

Outcome worked_example() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Plts m = choice_loop_model();
    StateId s1 = m.state("s1");
    ValueReport r = probabilistic_value(m, s1, choice_loop_formula());
    DepGraph g = build_depgraph(m, s1, choice_loop_formula());
    double t = seconds_since(t0);
    o.require(std::fabs(r.value - 0.25) <= 1e-6, "value " + fmt(r.value));
    o.require(g.nodes().size() == 13 && g.edges().size() == 16,
              std::to_string(g.nodes().size()) + " nodes, " + std::to_string(g.edges().size()) + " edges");
    std::string shape = graph_shape_error(m, g);
    o.require(shape.empty(), shape);
    o.require(t < 1.0, "took " + fmt(t) + " s");
    if (o.pass) o.detail = "value " + fmt(r.value) + ", 13 nodes, 16 edges, " + fmt(t) + " s";
    return o;
}

// x1 = x_bc; x_bc = x_b * x_c; x_b = x_c = max(x3a, x4a);
// x3a = 1/3 + 2/3 x_bc; x4a = 1/4 + 3/4 x_bc; two constants 1.
std::string equation_shape_error(const EquationSystem& sys) {
    if (sys.size() != 8) return std::to_string(sys.size()) + " equations";
    auto single = [](const Equation& e) {
        return e.kind == EquationKind::Max && e.choices.size() == 1 && e.choices[0].size() == 1 &&
               e.choices[0][0].coefficient == Rational(1);
    };
    const Equation& root = sys.equations[sys.root];
    if (!single(root)) return "root is not a copy of one successor";
    VarId bc = root.choices[0][0].var;
    const Equation& prod = sys.equations[bc];
    if (prod.kind != EquationKind::Product || prod.args.size() != 2) return "no binary product under the root";
    std::set<VarId> loops;
    for (VarId branch : prod.args) {
        const Equation& e = sys.equations[branch];
        if (e.kind != EquationKind::Max || e.choices.size() != 2) return "branch is not a two-way max";
        std::set<VarId> targets;
        for (const auto& ch : e.choices) {
            if (ch.size() != 1 || ch[0].coefficient != Rational(1)) return "branch choice is not a unit term";
            targets.insert(ch[0].var);
        }
        if (loops.empty()) loops = targets;
        if (targets != loops || targets.size() != 2) return "branches choose between different variables";
    }
    std::multiset<Rational> back, exit;
    for (VarId l : loops) {
        const Equation& e = sys.equations[l];
        if (e.kind != EquationKind::Max || e.choices.size() != 1 || e.choices[0].size() != 2)
            return "loop equation is not a two-term sum";
        for (const auto& t : e.choices[0]) {
            if (t.var == bc) {
                back.insert(t.coefficient);
            } else if (sys.equations[t.var].kind == EquationKind::Constant &&
                       sys.equations[t.var].constant == Rational(1)) {
                exit.insert(t.coefficient);
            } else {
                return "loop equation has an unexpected term";
            }
        }
    }
    if (back != std::multiset<Rational>{Rational(2, 3), Rational(3, 4)}) return "wrong loop-back coefficients";
    if (exit != std::multiset<Rational>{Rational(1, 3), Rational(1, 4)}) return "wrong exit coefficients";
    std::size_t constants = 0;
    for (const auto& e : sys.equations) constants += e.kind == EquationKind::Constant;
    if (constants != 2) return std::to_string(constants) + " constants";
    return {};
}

Outcome equations() {
    Outcome o;
    Plts m = choice_loop_model();
    EquationSystem sys = compress_copies(extract_equations(build_depgraph(m, m.state("s1"), choice_loop_formula())));
    std::string err = equation_shape_error(sys);
    o.require(err.empty(), err);
    if (o.pass) o.detail = "8 equations: 1 copy-max, 1 product, 2 choice maxima, 2 loop sums, 2 constants";
    return o;
}

// ---------------------------------------------------------------- 3

PctlPtr random_pctl(std::mt19937_64& rng, int depth, bool state) {
    using testgen::uniform;
    int r = uniform(rng, 0, depth <= 0 ? 0 : state ? 4 : 7);
    const char* props[] = {"A", "B", "C"};
    switch (r) {
        case 0: return pctl_prop(props[uniform(rng, 0, 2)]);
        case 1: return pctl_not(random_pctl(rng, depth - 1, state));
        case 2: return pctl_and(random_pctl(rng, depth - 1, state), random_pctl(rng, depth - 1, state));
        case 3:
        case 4:
            return pctl_prob(uniform(rng, 0, 1) ? Comparison::Greater : Comparison::GreaterEq,
                             Rational(uniform(rng, 0, 4), 4), random_pctl(rng, depth - 1, false));
        case 5: return pctl_next(random_pctl(rng, depth - 1, false));
        default: return pctl_until(random_pctl(rng, depth - 1, false), random_pctl(rng, depth - 1, false));
    }
}

Outcome separability_suite() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    o.require(is_separable(testgen::separable_example()), "separable example rejected");
    o.require(is_separable(termination_formula(1, 1).formula), "one-exit termination rejected");
    o.require(!is_separable(testgen::separable_example_dnf()), "dnf form accepted");
    o.require(!is_separable(testgen::entangled_example()), "entangled example accepted");
    for (std::size_t k = 2; k <= 4; ++k)
        for (std::size_t j = 1; j <= k; ++j)
            o.require(!is_separable(termination_formula(k, j).formula),
                      "termination with " + std::to_string(k) + " exits accepted");

    std::mt19937_64 rng(2024);
    std::size_t pctl = 0;
    for (int i = 0; i < 200; ++i) {
        PctlPtr f = random_pctl(rng, 4, i % 2 == 0);
        Formula e = pctl_to_xpl(*f).formula;
        o.require(is_separable(e), "encoding of " + to_string(*f) + " rejected");
        ++pctl;
    }
    std::size_t random = 0;
    for (FormulaKind k : {FormulaKind::And, FormulaKind::Or}) {
        testgen::FormulaOptions opt;
        opt.only = k;
        testgen::FormulaGen gen(rng, opt);
        for (int i = 0; i < 100; ++i) {
            Formula f = gen.closed();
            o.require(is_separable(f), "single-junction formula rejected: " + f.to_string());
            ++random;
        }
    }
    double t = seconds_since(t0);
    o.require(t < 5.0, "took " + fmt(t) + " s");
    if (o.pass)
        o.detail = std::to_string(pctl) + " encodings, " + std::to_string(random) + " random formulas, " + fmt(t) + " s";
    return o;
}

// ---------------------------------------------------------------- 4

Outcome termination_family() {
    Outcome o;
    // The q = 1/2 member has a double root at 1, where Kleene iteration is
    // sublinear; the stopping tolerance has to be tight.
    SolverConfig tight{1e-14, 100000000, 1e-6};
    Formula psi1 = termination_formula(1, 1).formula;
    std::string values;
    for (auto [n, d] : {std::pair{1, 4}, {1, 3}, {1, 2}, {2, 3}}) {
        Rational q(n, d);
        double qd = q.to_double(), expect = std::min(1.0, qd / (1 - qd));
        Plts p = rmdp_to_plts(testgen::rmc_family(q));
        double v = probabilistic_value(p, p.state("A.en"), psi1, tight).value;
        o.require(std::fabs(v - expect) <= 1e-6, "q = " + q.to_string() + ": " + fmt(v) + " vs " + fmt(expect));
        values += (values.empty() ? "" : ", ") + fmt(v);
    }
    Plts choice = rmdp_to_plts(testgen::rmdp_choice_family(Rational(1, 4), Rational(1, 3)));
    double v = probabilistic_value(choice, choice.state("A.en"), psi1, tight).value;
    double expect = std::max(1.0 / 3, 1.0 / 2);
    o.require(std::fabs(v - expect) <= 1e-6, "max variant " + fmt(v) + " vs " + fmt(expect));
    if (o.pass) o.detail = "values " + values + "; max variant " + fmt(v);
    return o;
}

// ---------------------------------------------------------------- 5

// Solves A x = b exactly; A is square and non-singular.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::runtime_error("singular system");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
    return b;
}

// Max over memoryless deterministic schedulers of Pr(A U B) from state 0.
Rational brute_force_until(const Mdp& m) {
    const std::size_t n = m.num_states();
    std::vector<std::size_t> pick(n, 0);
    Rational best(0);
    for (;;) {
        // Transition matrix of the induced chain; terminal states loop.
        std::vector<std::map<std::size_t, Rational>> P(n);
        for (std::size_t s = 0; s < n; ++s) {
            if (m.actions[s].empty()) {
                P[s][s] = Rational(1);
                continue;
            }
            for (const auto& [t, p] : m.actions[s][pick[s]].distribution) P[s][t] += p;
        }
        auto has = [&](std::size_t s, const char* prop) { return m.labels[s].count(prop) > 0; };
        // States that reach B through A-states with positive probability.
        std::vector<bool> good(n, false);
        for (std::size_t s = 0; s < n; ++s) good[s] = has(s, "B");
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t s = 0; s < n; ++s) {
                if (good[s] || !has(s, "A")) continue;
                for (const auto& [t, p] : P[s])
                    if (good[t]) {
                        good[s] = changed = true;
                        break;
                    }
            }
        }
        std::vector<std::size_t> unknown, pos(n, n);
        for (std::size_t s = 0; s < n; ++s)
            if (good[s] && !has(s, "B")) {
                pos[s] = unknown.size();
                unknown.push_back(s);
            }
        std::vector<Rational> x(n);
        for (std::size_t s = 0; s < n; ++s) x[s] = has(s, "B") ? Rational(1) : Rational(0);
        if (!unknown.empty()) {
            std::size_t k = unknown.size();
            std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
            std::vector<Rational> b(k);
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t s = unknown[i];
                a[i][i] += Rational(1);
                for (const auto& [t, p] : P[s]) {
                    if (pos[t] < n) {
                        a[i][pos[t]] -= p;
                    } else if (has(t, "B")) {
                        b[i] += p;
                    }
                }
            }
            auto sol = solve_linear(a, b);
            for (std::size_t i = 0; i < k; ++i) x[unknown[i]] = sol[i];
        }
        if (x[0] > best) best = x[0];
        std::size_t i = 0;
        while (i < n && (m.actions[i].empty() || ++pick[i] == m.actions[i].size())) pick[i++] = 0;
        if (i == n) break;
    }
    return best;
}

Mdp random_mdp(std::mt19937_64& rng) {
    using testgen::uniform;
    Mdp m;
    int n = uniform(rng, 1, 4);
    for (int s = 0; s < n; ++s) {
        std::set<Proposition> props;
        if (uniform(rng, 0, 99) < 60) props.insert("A");
        if (uniform(rng, 0, 99) < 30) props.insert("B");
        m.add_state("m" + std::to_string(s), props);
    }
    for (int s = 0; s < n; ++s) {
        int k = uniform(rng, 0, 3);
        for (int a = 0; a < k; ++a) {
            int support = uniform(rng, 1, std::min(3, n));
            std::vector<std::size_t> targets;
            while (static_cast<int>(targets.size()) < support) {
                std::size_t t = static_cast<std::size_t>(uniform(rng, 0, n - 1));
                if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
            }
            std::vector<long> w;
            long total = 0;
            for (int j = 0; j < support; ++j) total += w.emplace_back(uniform(rng, 1, 5));
            std::vector<std::pair<std::size_t, Rational>> dist;
            for (int j = 0; j < support; ++j) dist.emplace_back(targets[j], Rational(w[j], total));
            m.add_action(static_cast<std::size_t>(s), "act" + std::to_string(a), dist);
        }
    }
    return m;
}

Outcome mdp_until() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5150);
    SolverConfig cfg{1e-13, 100000000, 1e-6};
    double worst = 0.0;
    int verdicts = 0;
    for (int i = 0; i < 50; ++i) {
        Mdp mdp = random_mdp(rng);
        Plts p = mdp_to_plts(mdp);
        Rational pth(testgen::uniform(rng, 0, 4), 4);
        Formula phi = pctl_to_xpl(*pctl_prob(Comparison::GreaterEq, pth, parse_pctl("A U B"))).formula;
        ModelChecker mc(p, cfg);
        double v = mc.value(StateId{0}, phi.body()).value;
        Rational exact = brute_force_until(mdp);
        double err = std::fabs(v - exact.to_double());
        worst = std::max(worst, err);
        o.require(err <= 1e-6, "mdp " + std::to_string(i) + ": solver " + fmt(v) + " vs " + exact.to_string());
        Verdict verdict = mc.check(StateId{0}, phi);
        if (std::fabs(exact.to_double() - pth.to_double()) > cfg.margin) {
            bool holds = exact >= pth;
            o.require(verdict.answer == (holds ? Answer::Holds : Answer::Fails),
                      "mdp " + std::to_string(i) + ": wrong verdict for threshold " + pth.to_string());
            ++verdicts;
        }
    }
    double t = seconds_since(t0);
    o.require(t < 30.0, "took " + fmt(t) + " s");
    if (o.pass)
        o.detail = "50 MDPs, max error " + fmt(worst) + ", " + std::to_string(verdicts) + " verdicts, " + fmt(t) + " s";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome factorization_failure() {
    Outcome o;
    Plts p = rmdp_to_plts(testgen::two_exit_model());
    Formula psi = termination_formula(2, 1).formula;
    try {
        Verdict v = model_check(p, p.state("A.en"), prob(Comparison::GreaterEq, Rational(1, 2), psi));
        o.require(false, std::string("returned a verdict: ") + to_string(v.answer));
    } catch (const FactorizationFailure& e) {
        o.require(e.entangled().count("c") > 0, "entangled actions do not include c");
    }

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "xpl_acceptance";
    fs::create_directories(dir);
    {
        std::ofstream(dir / "two_exit.plts") << write_plts(p);
        std::ofstream(dir / "two_exit.xpl") << "Pr{>= 1/2}(" << psi.to_string() << ")\n";
    }
    std::ostringstream out, err;
    int code = run_cli({"xplcheck", "check", (dir / "two_exit.plts").string(), "A.en",
                        "@" + (dir / "two_exit.xpl").string()},
                       out, err);
    fs::remove_all(dir);
    o.require(code == kExitFactorization, "exit code " + std::to_string(code) + ": " + err.str());
    o.require(out.str().find("verdict") == std::string::npos, "a verdict was printed");
    if (o.pass) o.detail = "exit code 3; entangled on c";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(777);
    std::size_t involutions = 0, complements = 0, strata = 0, idempotent = 0;

    testgen::FormulaOptions with_prob;
    with_prob.prob = true;
    testgen::FormulaGen any(rng, with_prob);
    for (int i = 0; i < 500; ++i) {
        Formula f = any.closed();
        o.require(neg(neg(f)) == f, "neg is not an involution on " + f.to_string());
        ++involutions;
    }

    // Complement on reactive models with binder-free formulas, whose values
    // are fixed by a finite prefix of the d-tree.
    testgen::FormulaOptions finite;
    finite.binders = false;
    testgen::FormulaGen fin(rng, finite);
    testgen::ModelOptions reactive;
    reactive.max_choices = 1;
    double worst = 0.0;
    for (int tries = 0; complements < 50 && tries < 5000; ++tries) {
        Formula f = fin.closed();
        if (!is_separable(f)) continue;
        Plts m = testgen::random_model(rng, reactive);
        double a = probabilistic_value(m, StateId{0}, f).value;
        double b = probabilistic_value(m, StateId{0}, neg(f)).value;
        worst = std::max(worst, std::fabs(a + b - 1));
        o.require(std::fabs(a + b - 1) <= 2e-6, "complement fails on " + f.to_string());
        ++complements;
    }
    o.require(complements == 50, "only " + std::to_string(complements) + " complement cases");

    // Kleene iterates and residuals on random systems.
    testgen::FormulaGen rec(rng, {});
    SolverConfig cfg{1e-12, 10000000, 1e-6};
    double max_residual = 0.0;
    std::size_t mixed = 0;
    for (int i = 0; i < 300; ++i) {
        Formula f = rec.closed();
        if (!is_separable(f)) continue;
        Plts m = testgen::random_model(rng, {});
        EquationSystem sys;
        try {
            sys = compress_copies(extract_equations(build_depgraph(m, StateId{0}, f)));
        } catch (const MixedSignStratum&) {
            ++mixed;
            continue;
        }
        std::vector<double> last(sys.size(), -1.0);
        auto observer = [&](std::size_t k, const std::vector<double>& values) {
            bool least = sys.stratum_sign[k] == FixSign::Least;
            for (VarId v : sys.strata[k]) {
                o.require(values[v] >= 0.0 && values[v] <= 1.0, "iterate outside [0, 1] for " + f.to_string());
                if (last[v] >= 0.0)
                    o.require(least ? values[v] >= last[v] : values[v] <= last[v],
                              "non-monotone iterate for " + f.to_string());
                last[v] = values[v];
            }
        };
        Solution sol = solve(sys, cfg, observer);
        max_residual = std::max(max_residual, sol.residual);
        o.require(sol.residual <= 1e-8, "residual " + fmt(sol.residual) + " for " + f.to_string());
        strata += sys.strata.size();
    }

    testgen::FormulaGen idem(rng, with_prob);
    for (int i = 0; i < 300; ++i) {
        Formula f = idem.closed();
        Formula e = fpe(f);
        o.require(fpe(e) == e, "fpe not idempotent on " + f.to_string());
        if (auto p = probabs(e)) o.require(probabs(*p) == p, "probabs not idempotent on " + f.to_string());
        Formula g = group_modalities(e);
        o.require(group_modalities(g) == g, "group_modalities not idempotent on " + f.to_string());
        ++idempotent;
    }
    if (o.pass)
        o.detail = std::to_string(involutions) + " involutions, " + std::to_string(complements) +
                   " complements (max error " + fmt(worst) + "), " + std::to_string(strata) +
                   " strata (max residual " + fmt(max_residual) + ", " + std::to_string(mixed) +
                   " mixed-sign systems skipped), " + std::to_string(idempotent) + " idempotence checks";
    return o;
}

// ---------------------------------------------------------------- 8

Outcome oracle_consistency() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31337);
    testgen::FormulaOptions fo;
    fo.sign = FixSign::Least;
    fo.max_depth = 3;
    fo.actions = {"a", "b"};
    testgen::FormulaGen gen(rng, fo);
    testgen::ModelOptions mo;
    mo.max_states = 3;
    mo.actions = {"a", "b"};
    SolverConfig cfg{1e-13, 100000000, 1e-6};
    std::size_t pairs = 0, strict = 0;
    while (pairs < 30) {
        Formula f = gen.closed();
        if (!is_separable(f) || f.is_state()) continue;
        Plts m = testgen::random_model(rng, mo);
        double v = probabilistic_value(m, StateId{0}, f, cfg).value;
        Rational prev(0);
        for (std::size_t k = 1; k <= 6; ++k) {
            OracleConfig oc;
            oc.depth = k;
            Rational lower = oracle_value(m, StateId{0}, f, oc).lower;
            o.require(lower >= prev, "pair " + std::to_string(pairs) + ": depth " + std::to_string(k) + " decreases");
            o.require(lower.to_double() <= v + 1e-9,
                      "pair " + std::to_string(pairs) + ": oracle " + lower.to_string() + " above solver " + fmt(v) +
                          " for " + f.to_string());
            prev = lower;
        }
        strict += prev.to_double() > 0.0;
        ++pairs;
    }
    if (o.pass)
        o.detail = "30 pairs, " + std::to_string(strict) + " with a positive bound, " + fmt(seconds_since(t0)) + " s";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"worked example value and graph", worked_example},
        {"worked example equations", equations},
        {"separability suite", separability_suite},
        {"one-exit termination family", termination_family},
        {"MDP until vs scheduler enumeration", mdp_until},
        {"non-separable failure path", factorization_failure},
        {"property suites", properties},
        {"oracle consistency", oracle_consistency},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
                  << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
