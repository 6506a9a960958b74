#include <doctest.h>

#include "fixtures.hpp"
#include "xpl/checker.hpp"
#include "xpl/encoders.hpp"
#include "xpl/formula_ops.hpp"
#include "xpl/transform.hpp"

#include <cmath>

using namespace xpl;

namespace {

std::set<std::tuple<std::string, std::string, ChoiceIndex, std::string, Rational>> edge_set(const Plts& m) {
    std::set<std::tuple<std::string, std::string, ChoiceIndex, std::string, Rational>> out;
    for (const auto& t : m.transitions()) out.emplace(m.name(t.from), t.action, t.choice, m.name(t.to), t.prob);
    return out;
}

double value_at(const Plts& m, const std::string& s, const Formula& f) {
    return probabilistic_value(m, m.state(s), f, {1e-13, 50000000, 1e-6}).value;
}

}  // namespace

TEST_CASE("mdp translation") {
    Mdp chain;
    auto s = chain.add_state("s");
    auto t = chain.add_state("t");
    chain.add_action(s, "go", {{t, Rational(1)}});
    chain.add_action(t, "stay", {{t, Rational(1)}});
    Plts p = mdp_to_plts(chain);
    CHECK(p.actions() == std::set<ActionLabel>{"a"});
    CHECK(p.choices(StateId{0}, "a").size() == 1);
    CHECK(p.choices(StateId{1}, "a").size() == 1);

    Mdp two;
    auto u = two.add_state("u", {"A"});
    auto x = two.add_state("x", {"B"});
    auto y = two.add_state("y");
    two.add_action(u, "alpha", {{x, Rational(1)}});
    two.add_action(u, "beta", {{y, Rational(1)}});
    Plts q = mdp_to_plts(two);
    CHECK(edge_set(q) == decltype(edge_set(q)){{"u", "a", 0, "x", Rational(1)},
                                               {"u", "a", 1, "y", Rational(1)},
                                               {"x", "a", 0, "x", Rational(1)},
                                               {"y", "a", 0, "y", Rational(1)}});
    CHECK(validate_plts(q).empty());
    CHECK(q.holds(q.state("x"), "B"));
    CHECK(q.holds(q.state("u"), "A"));
    // Reaching B is possible with the first action only.
    CHECK(value_at(q, "u", pctl_to_xpl(*parse_pctl("A U B")).formula) == doctest::Approx(1.0));
    CHECK(value_at(q, "u", pctl_to_xpl(*parse_pctl("C U B")).formula) == doctest::Approx(0.0));
    CHECK(value_at(q, "u", pctl_to_xpl(*parse_pctl("X B")).formula) == doctest::Approx(1.0));

    Mdp bad;
    auto b = bad.add_state("b");
    bad.add_action(b, "half", {{b, Rational(1, 2)}});
    CHECK_THROWS_AS(mdp_to_plts(bad), InvalidDistribution);
}

TEST_CASE("pctl parsing and encoding") {
    CHECK(pctl_to_xpl(*parse_pctl("X A")).formula == diamond("a", prop("A")));
    CHECK(pctl_to_xpl(*parse_pctl("A U B")).formula ==
          mu("X1", disj({prop("B"), conj({prop("A"), diamond("a", var("X1"))})})));
    CHECK(pctl_to_xpl(*parse_pctl("!A")).formula == neg_prop("A"));
    CHECK(pctl_to_xpl(*parse_pctl("!(A U B)")).formula ==
          nu("X1", conj({neg_prop("B"), disj({neg_prop("A"), box("a", var("X1"))})})));
    Formula pr = pctl_to_xpl(*parse_pctl("Pr{>=1/2}(A U X B)")).formula;
    CHECK(pr.kind() == FormulaKind::Prob);
    CHECK(pr.comparison() == Comparison::GreaterEq);
    CHECK(pr.threshold() == Rational(1, 2));

    // A proposition named X1 pushes fresh variables past it.
    Formula clash = pctl_to_xpl(*parse_pctl("X1 U B")).formula;
    CHECK(clash.name() == "X2");

    auto f = parse_pctl("A & B U C & X D");
    CHECK(to_string(*f) == "((A & (B U C)) & X D)");
    CHECK(parse_pctl("A U B U C")->args[1]->kind == PctlFormula::Kind::Until);
    CHECK(parse_pctl("Pr{>0.3}(X A)")->is_state());
    CHECK_FALSE(parse_pctl("X A")->is_state());

    CHECK_THROWS_AS(parse_pctl("A U"), ParseError);
    CHECK_THROWS_AS(parse_pctl("Pr{<1/2}(A)"), ParseError);
    CHECK_THROWS_AS(parse_pctl("Pr{>3/2}(A)"), ParseError);
    CHECK_THROWS_AS(parse_pctl("(A"), ParseError);

    CHECK(pctl_to_xpl(*parse_pctl("!Pr{>1/2}(X A)")).warnings.empty());
    CHECK(pctl_to_xpl(*parse_pctl("Pr{>1/2}(!Pr{>1/2}(X A) U B)")).warnings.size() == 1);
}

TEST_CASE("pctl encodings are separable and build on mdp images") {
    const char* inputs[] = {"A U B",  "!(A U B)", "X (A U B)", "(A U B) & (C U D)", "!(A U B) & X !C",
                            "A U (B U C)", "X X A", "(!A U B) U C", "Pr{>1/2}(X A) U B"};
    Mdp m;
    auto s0 = m.add_state("s0", {"A"});
    auto s1 = m.add_state("s1", {"A", "C"});
    auto s2 = m.add_state("s2", {"B", "D"});
    m.add_action(s0, "l", {{s1, Rational(1, 2)}, {s2, Rational(1, 2)}});
    m.add_action(s0, "r", {{s0, Rational(1, 3)}, {s1, Rational(2, 3)}});
    m.add_action(s1, "l", {{s2, Rational(1)}});
    Plts p = mdp_to_plts(m);
    for (const char* in : inputs) {
        INFO(in);
        Formula f = pctl_to_xpl(*parse_pctl(in)).formula;
        CHECK(is_separable(f));
        CHECK(check_wellformed(f).empty());
        for (std::uint32_t s = 0; s < p.num_states(); ++s) {
            try {
                ModelChecker(p).graph(StateId{s}, f);
            } catch (const MixedSignStratum&) {
                // ν and μ traces meeting in one component is a solver limit, not a factorization failure.
            }
        }
    }
}

TEST_CASE("rmdp translation") {
    Rmdp r = testgen::rmc_family(Rational(1, 3));
    Plts p = rmdp_to_plts(r);
    CHECK(validate_plts(p).empty());
    CHECK(edge_set(p) == decltype(edge_set(p)){
                             {"A.en", "p", 0, "A.ex", Rational(1, 3)},
                             {"A.en", "p", 0, "A.b1.en", Rational(2, 3)},
                             {"A.b1.en", "c", 0, "A.en", Rational(1)},
                             {"A.b1.en", "r1", 0, "A.b1.ex", Rational(1)},
                             {"A.b1.ex", "p", 0, "A.b2.en", Rational(1)},
                             {"A.b2.en", "c", 0, "A.en", Rational(1)},
                             {"A.b2.en", "r1", 0, "A.b2.ex", Rational(1)},
                             {"A.b2.ex", "p", 0, "A.ex", Rational(1)},
                             {"A.ex", "e1", 0, "A.ex", Rational(1)},
                         });
    CHECK_FALSE(p.actions().count("n"));
    for (std::uint32_t s = 0; s < p.num_states(); ++s) {
        CHECK(p.props(StateId{s}).empty());
        if (p.name(StateId{s}).find(".b") != std::string::npos && p.name(StateId{s}).ends_with(".en"))
            CHECK(p.choices(StateId{s}, "c").size() == 1);
    }

    Plts choice = rmdp_to_plts(testgen::rmdp_choice_family(Rational(1, 4), Rational(1, 3)));
    auto n = choice.choices(choice.state("A.en"), "n");
    REQUIRE(n.size() == 2);
    CHECK(n[0] == Distribution{{choice.state("A.u1"), Rational(1)}});
    CHECK(n[1] == Distribution{{choice.state("A.u2"), Rational(1)}});
}

TEST_CASE("rmdp input errors") {
    Rmdp r = testgen::rmc_family(Rational(1, 3));
    r.components[0].edges.push_back({{"b2", "nowhere"}, {"", "ex"}, Rational(1)});
    CHECK_THROWS_AS(rmdp_to_plts(r), InconsistentExitIndexing);

    Rmdp sum = testgen::rmc_family(Rational(1, 3));
    sum.components[0].edges[0].prob = Rational(1, 2);
    CHECK_THROWS_AS(rmdp_to_plts(sum), InvalidDistribution);

    Rmdp into_entry = testgen::rmc_family(Rational(1, 3));
    into_entry.components[0].edges.push_back({{"b2", "ex"}, {"", "en"}, Rational(0)});
    CHECK_THROWS_AS(rmdp_to_plts(into_entry), InvalidModel);

    Rmdp callee = testgen::rmc_family(Rational(1, 3));
    callee.components[0].boxes.push_back({"b3", "B"});
    CHECK_THROWS_AS(rmdp_to_plts(callee), InvalidModel);
}

TEST_CASE("termination formulas") {
    auto one = termination_formula(1, 1);
    CHECK(one.expected_separable);
    CHECK(one.formula == parse_formula("mu X.(<e1>tt | <p>X | <n>X | (<c>X & <r1>X))"));
    CHECK(is_separable(one.formula));

    auto two = termination_formula(2, 1);
    CHECK_FALSE(two.expected_separable);
    CHECK_FALSE(is_separable(two.formula));
    CHECK(check_wellformed(two.formula).empty());
    CHECK(termination_system(2, 1).kind() == FormulaKind::SimFix);
    CHECK(termination_system(2, 1).sim_vars() == std::vector<std::string>{"T1", "T2"});
    CHECK(two.formula ==
          parse_formula("mu { T1 = (<e1>tt | <p>T1 | <n>T1 | (<c>T1 & <r1>T1) | (<c>T2 & <r2>T1)); "
                        "T2 = (<e2>tt | <p>T2 | <n>T2 | (<c>T1 & <r1>T2) | (<c>T2 & <r2>T2)) } T1"));
    CHECK_FALSE(is_separable(termination_formula(3, 2).formula));
    CHECK_THROWS_AS(termination_formula(2, 3), std::invalid_argument);
}

TEST_CASE("rmc termination values") {
    for (auto [q, expect] : {std::pair{Rational(1, 4), 1.0 / 3}, {Rational(1, 3), 0.5}, {Rational(2, 3), 1.0}}) {
        Plts p = rmdp_to_plts(testgen::rmc_family(q));
        CHECK(value_at(p, "A.en", termination_formula(1, 1).formula) == doctest::Approx(expect).epsilon(1e-6));
    }
    Plts p = rmdp_to_plts(testgen::rmdp_choice_family(Rational(1, 4), Rational(1, 3)));
    CHECK(value_at(p, "A.en", termination_formula(1, 1).formula) == doctest::Approx(0.5).epsilon(1e-6));

    Plts two = rmdp_to_plts(testgen::two_exit_model());
    CHECK_THROWS_AS(probabilistic_value(two, two.state("A.en"), termination_formula(2, 1).formula),
                    FactorizationFailure);
}

TEST_CASE("branching process extinction") {
    BranchingProcess dies{{{"T", {{{Rational(1), {}}}}, {}}}};
    Plts p = bp_to_plts(dies);
    CHECK(p.has_action(p.state("T:0.0"), "death"));
    CHECK(value_at(p, "T", extinction_formula(max_children(dies))) == doctest::Approx(1.0));

    BranchingProcess split{{{"T", {{{Rational(1, 3), {}}, {Rational(2, 3), {"T", "T"}}}}, {}}}};
    Plts q = bp_to_plts(split);
    CHECK(validate_plts(q).empty());
    CHECK(max_children(split) == 2);
    Formula ext = extinction_formula(2);
    CHECK(ext == parse_formula("mu X.(<death>tt | <step>X | (<child_1>X & [child_2]X))"));
    CHECK(is_separable(ext));
    CHECK(value_at(q, "T", ext) == doctest::Approx(0.5).epsilon(1e-6));

    BranchingProcess modes{{{"T", {{{Rational(1, 3), {}}, {Rational(2, 3), {"T", "T"}}}, {{Rational(1), {}}}}, {}}}};
    CHECK(value_at(bp_to_plts(modes), "T", ext) == doctest::Approx(1.0).epsilon(1e-6));

    BranchingProcess bad{{{"T", {{{Rational(1, 2), {}}}}, {}}}};
    CHECK_THROWS_AS(bp_to_plts(bad), InvalidDistribution);
    BranchingProcess unknown{{{"T", {{{Rational(1), {"U"}}}}, {}}}};
    CHECK_THROWS_AS(bp_to_plts(unknown), InvalidModel);
}

TEST_CASE("pttl parsing and encoding") {
    CHECK(pttl_to_xpl(*parse_pttl("AX A")).formula == box("-", prop("A")));
    CHECK(pttl_to_xpl(*parse_pttl("EX A")).formula == diamond("-", prop("A")));
    CHECK(pttl_to_xpl(*parse_pttl("E[A U B]")).formula ==
          mu("X1", disj({prop("B"), conj({prop("A"), diamond("-", var("X1"))})})));
    CHECK(pttl_to_xpl(*parse_pttl("A[A R B]")).formula ==
          nu("X1", conj({prop("B"), disj({prop("A"), box("-", var("X1"))})})));
    auto pr = parse_pttl("!Pr{>=1/2}(A[A U B]) & C");
    CHECK(pr->is_state());
    CHECK(to_string(*pr) == "(!Pr{>= 1/2}(A[A U B]) & C)");
    CHECK_THROWS_AS(parse_pttl("A[B]"), ParseError);
    CHECK_THROWS_AS(parse_pttl("Pr{>1/2}(A)"), ParseError);
    CHECK_THROWS_AS(parse_pttl("AX AX A"), ParseError);

    Formula eu = pttl_to_xpl(*parse_pttl("E[A U B]")).formula;
    Formula expanded = expand_any_action(eu, {"a", "b"});
    CHECK(expanded == mu("X1", disj({prop("B"), conj({prop("A"), disj({diamond("a", var("X1")),
                                                                        diamond("b", var("X1"))})})})));
    CHECK(is_separable(expanded));
    CHECK(expand_any_action(box("-", prop("A")), {}) == tt());
    CHECK(expand_any_action(diamond("-", prop("A")), {}) == ff());

    // E[tt-free reachability] on a two-branch tree: <-> may pick either child.
    Plts m;
    m.add_state("r", {"A"});
    m.add_state("x", {"B"});
    m.add_state("y");
    m.add_transition("r", "a", 0, "x", Rational(1, 2));
    m.add_transition("r", "a", 0, "y", Rational(1, 2));
    m.add_transition("r", "b", 0, "y", Rational(1));
    m.add_transition("x", "a", 0, "x", Rational(1));
    m.add_transition("y", "a", 0, "y", Rational(1));
    Formula f = expand_any_action(eu, m.actions());
    CHECK(value_at(m, "r", f) == doctest::Approx(0.5));
    Formula au = expand_any_action(pttl_to_xpl(*parse_pttl("A[A U B]")).formula, m.actions());
    CHECK(value_at(m, "r", au) == doctest::Approx(0.0));
}
