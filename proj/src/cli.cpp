#include "xpl/cli.hpp"

#include "xpl/checker.hpp"
#include "xpl/encoders.hpp"
#include "xpl/errors.hpp"
#include "xpl/formula_ops.hpp"
#include "xpl/io.hpp"
#include "xpl/oracle.hpp"
#include "xpl/sample_models.hpp"
#include "xpl/transform.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace xpl {

namespace {

struct Options {
    double tolerance = 1e-9;
    std::size_t max_iters = 1000000;
    double margin = 1e-6;
    std::size_t depth = 4;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::size_t budget = 1000000;
    bool timing = false;

    SolverConfig solver() const { return {tolerance, max_iters, margin}; }
};

class Printer {
public:
    Printer(std::ostream& out, bool color) : out_(out), color_(color) {
        out_ << std::setprecision(12);
    }
    std::ostream& os() { return out_; }

    void field(const std::string& key, const std::string& value) { out_ << key << ": " << value << '\n'; }
    void field(const std::string& key, double value) { out_ << key << ": " << value << '\n'; }
    void field(const std::string& key, std::size_t value) { out_ << key << ": " << value << '\n'; }

    void verdict(Answer a) {
        const char* code = a == Answer::Holds ? "\033[32m" : a == Answer::Fails ? "\033[31m" : "\033[33m";
        out_ << "verdict: " << (color_ ? code : "") << to_string(a) << (color_ ? "\033[0m" : "") << '\n';
    }

private:
    std::ostream& out_;
    bool color_;
};

// Formula arguments are literal text, or @path to read the text from a file.
std::string argument_text(const std::string& arg) { return arg.size() > 1 && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

Formula formula_arg(const std::string& arg) { return parse_formula(argument_text(arg)); }

StateId state_arg(const Plts& m, const std::string& name) {
    auto s = m.find_state(name);
    if (!s) throw InputError("unknown state " + name);
    return *s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

// Model and formula of an encoding: to PREFIX.plts / PREFIX.xpl, or stdout.
void emit_encoding(Printer& p, const std::string& prefix, const Plts& model, const Formula& f,
                   const std::vector<std::string>& notes) {
    if (prefix.empty()) {
        p.os() << write_plts(model);
        for (const auto& n : notes) p.os() << "# " << n << '\n';
        p.os() << "# formula\n" << f.to_string() << '\n';
        return;
    }
    write_text(prefix + ".plts", write_plts(model));
    write_text(prefix + ".xpl", f.to_string() + "\n");
    for (const auto& n : notes) p.os() << "# " << n << '\n';
    p.field("model", prefix + ".plts");
    p.field("formula", prefix + ".xpl");
}

void print_report(Printer& p, const ValueReport& r) {
    p.field("value", r.value);
    p.field("nodes", r.nodes);
    p.field("edges", r.edges);
    p.field("equations", r.equations);
    p.field("strata", r.strata);
    p.field("iterations", r.iterations);
    p.field("residual", r.residual);
}

std::string join(const std::set<ActionLabel>& s) {
    std::string out;
    for (const auto& a : s) out += (out.empty() ? "" : ", ") + a;
    return out;
}

bool use_color(const std::ostream& out) {
    if (std::getenv("XPLCHECK_NO_COLOR")) return false;
    return &out == &std::cout && isatty(STDOUT_FILENO);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model checker for XPL over probabilistic labelled transition systems", "xplcheck"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--tolerance", opt.tolerance, "Solver stopping tolerance")->capture_default_str();
    app.add_option("--max-iters", opt.max_iters, "Solver sweep limit")->capture_default_str();
    app.add_option("--margin", opt.margin, "Threshold margin for unknown verdicts")->capture_default_str();
    app.add_option("--depth", opt.depth, "Oracle depth")->capture_default_str();
    app.add_option("--samples", opt.samples, "Oracle samples per scheduler")->capture_default_str();
    app.add_option("--seed", opt.seed, "Oracle random seed")->capture_default_str();
    app.add_option("--budget", opt.budget, "Oracle enumeration budget")->capture_default_str();
    app.add_flag("--timing", opt.timing, "Report wall-clock time");

    std::string model_path, state_name, formula, prefix, mode = "exact";
    std::size_t target = 1;

    auto model_state_formula = [&](CLI::App* sub) {
        sub->add_option("model", model_path, "PLTS file")->required();
        sub->add_option("state", state_name, "State name")->required();
        sub->add_option("formula", formula, "Formula text or @file")->required();
    };
    auto* check = app.add_subcommand("check", "Decide a state formula at a state");
    model_state_formula(check);
    auto* value = app.add_subcommand("value", "Probabilistic value of a fuzzy formula");
    model_state_formula(value);
    auto* graph = app.add_subcommand("graph", "Dependency graph in DOT");
    model_state_formula(graph);
    auto* oracle = app.add_subcommand("oracle", "Bounded-depth brute-force bounds");
    model_state_formula(oracle);
    oracle->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    auto* separable = app.add_subcommand("separable", "Separability of a formula");
    separable->add_option("formula", formula, "Formula text or @file")->required();

    auto* enc_pctl = app.add_subcommand("encode-pctl", "MDP and PCTL* formula to PLTS and XPL");
    enc_pctl->add_option("model", model_path, "MDP file")->required();
    enc_pctl->add_option("formula", formula, "PCTL* formula text or @file")->required();
    auto* enc_rmdp = app.add_subcommand("encode-rmdp", "RMDP to PLTS and termination formula");
    enc_rmdp->add_option("model", model_path, "RMDP file")->required();
    enc_rmdp->add_option("--target", target, "Exit to terminate at (1-based)")->capture_default_str();
    auto* enc_pttl = app.add_subcommand("encode-pttl", "PTTL formula over a PLTS to XPL");
    enc_pttl->add_option("model", model_path, "PLTS file")->required();
    enc_pttl->add_option("formula", formula, "PTTL formula text or @file")->required();
    auto* enc_bp = app.add_subcommand("encode-bp", "Branching process to PLTS and extinction formula");
    enc_bp->add_option("model", model_path, "Branching process file")->required();
    for (auto* sub : {enc_pctl, enc_rmdp, enc_pttl, enc_bp})
        sub->add_option("-o,--output", prefix, "Write PREFIX.plts and PREFIX.xpl");
    auto* repro = app.add_subcommand("repro-example5", "Worked choice-loop example end to end");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    Printer p(out, use_color(out));
    auto started = std::chrono::steady_clock::now();
    auto finish = [&](int code) {
        if (opt.timing) {
            std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - started;
            p.field("time_ms", ms.count());
        }
        return code;
    };

    try {
        if (check->parsed()) {
            Plts m = read_plts(read_file(model_path));
            Formula phi = formula_arg(formula);
            if (!phi.is_state()) throw InputError("check needs a state formula; use 'value' for fuzzy formulas");
            ModelChecker mc(m, opt.solver());
            Verdict v = mc.check(state_arg(m, state_name), phi);
            p.verdict(v.answer);
            if (phi.kind() == FormulaKind::Prob) p.field("value", v.value);
            return finish(v.answer == Answer::Holds ? kExitHolds : v.answer == Answer::Fails ? kExitFails : kExitUnknown);
        }
        if (value->parsed()) {
            Plts m = read_plts(read_file(model_path));
            ModelChecker mc(m, opt.solver());
            print_report(p, mc.value(state_arg(m, state_name), formula_arg(formula)));
            return finish(kExitHolds);
        }
        if (graph->parsed()) {
            Plts m = read_plts(read_file(model_path));
            ModelChecker mc(m, opt.solver());
            p.os() << export_dot(mc.graph(state_arg(m, state_name), formula_arg(formula)));
            return finish(kExitHolds);
        }
        if (oracle->parsed()) {
            Plts m = read_plts(read_file(model_path));
            OracleConfig cfg{opt.depth, mode == "mc" ? OracleMode::MonteCarlo : OracleMode::Exact, opt.samples,
                             opt.seed, opt.budget};
            OracleResult r;
            try {
                r = oracle_value(m, state_arg(m, state_name), normalize_simfix(formula_arg(formula)), cfg);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            p.field("depth", opt.depth);
            if (cfg.mode == OracleMode::Exact) {
                p.field("lower", r.lower.to_double());
                p.field("upper", r.upper.to_double());
                p.field("lower_exact", r.lower.to_string());
                p.field("upper_exact", r.upper.to_string());
            } else {
                p.field("schedulers", r.schedulers);
                p.field("lower", r.lower_estimate);
                p.field("upper", r.upper_estimate);
                p.field("standard_error", r.standard_error);
            }
            return finish(kExitHolds);
        }
        if (separable->parsed()) {
            SeparabilityReport rep = xpl::separability(formula_arg(formula));
            p.field("separable", rep.separable ? "true" : "false");
            if (!rep.separable) {
                if (rep.entangled_node) p.field("entangled node", rep.entangled_node->to_string());
                p.field("shared actions", join(rep.overlap));
            }
            return finish(rep.separable ? kExitHolds : kExitFails);
        }
        if (enc_pctl->parsed()) {
            Plts m = mdp_to_plts(read_mdp(read_file(model_path)));
            Encoding e = pctl_to_xpl(*parse_pctl(argument_text(formula)));
            for (const auto& w : e.warnings) err << "warning: " << w << '\n';
            emit_encoding(p, prefix, m, e.formula, {});
            return finish(kExitHolds);
        }
        if (enc_rmdp->parsed()) {
            Rmdp r = read_rmdp(read_file(model_path));
            std::size_t exits = 1;
            for (const auto& c : r.components) exits = std::max(exits, c.exits.size());
            if (target == 0 || target > exits) throw InputError("--target must be between 1 and " + std::to_string(exits));
            Plts m = rmdp_to_plts(r);
            TerminationFormula t = termination_formula(exits, target);
            emit_encoding(p, prefix, m, t.formula,
                          {std::string("expected separable: ") + (t.expected_separable ? "yes" : "no")});
            return finish(kExitHolds);
        }
        if (enc_pttl->parsed()) {
            Plts m = read_plts(read_file(model_path));
            Encoding e = pttl_to_xpl(*parse_pttl(argument_text(formula)));
            for (const auto& w : e.warnings) err << "warning: " << w << '\n';
            emit_encoding(p, prefix, m, expand_any_action(e.formula, m.actions()), {});
            return finish(kExitHolds);
        }
        if (enc_bp->parsed()) {
            BranchingProcess bp = read_bp(read_file(model_path));
            emit_encoding(p, prefix, bp_to_plts(bp), extinction_formula(max_children(bp)), {});
            return finish(kExitHolds);
        }
        if (repro->parsed()) {
            Plts m = choice_loop_model();
            Formula psi = choice_loop_formula();
            StateId s1 = m.state("s1");
            DepGraph g = build_depgraph(m, s1, psi);
            EquationSystem sys = compress_copies(extract_equations(g));
            p.field("formula", psi.to_string());
            p.field("state", std::string("s1"));
            p.field("nodes", g.nodes().size());
            p.field("edges", g.edges().size());
            p.field("equations", sys.size());
            p.os() << to_string(sys);
            Solution sol = solve(sys, opt.solver());
            p.field("value", sol.values[sys.root]);
            p.field("iterations", sol.iterations);
            return finish(kExitHolds);
        }
    } catch (const FactorizationFailure& e) {
        err << "error: formula is not separable on this model\n"
            << "  state: " << e.state_name() << '\n'
            << "  formula: " << e.formula().to_string() << '\n'
            << "  entangled actions: " << join(e.entangled()) << '\n';
        return kExitFactorization;
    } catch (const NotConverged& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    } catch (const NestedUnknown& e) {
        err << "error: " << e.what() << '\n';
        p.verdict(Answer::Unknown);
        return kExitUnknown;
    } catch (const Error& e) {
        // Input errors and checks outside the supported fragment.
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace xpl
