#pragma once

#include "xpl/encoders.hpp"

namespace xpl::testgen {

// Four separable, distinct sub-formulas; psi1|psi2 and psi3|psi4 are separable.
inline Formula psi(int i) { return diamond("d" + std::to_string(i), prop("P" + std::to_string(i))); }

inline Formula separable_example() {
    return conj({box("a", disj({psi(1), psi(2)})), box("b", disj({psi(3), psi(4)}))});
}

inline Formula separable_example_dnf() {
    std::vector<Formula> ds;
    for (int i : {1, 2})
        for (int j : {3, 4}) ds.push_back(conj({box("a", psi(i)), box("b", psi(j))}));
    return disj(ds);
}

inline Formula entangled_example() {
    return disj({conj({box("a", psi(1)), box("b", psi(4))}), conj({box("a", psi(2)), box("b", psi(3))})});
}

// One component A with entry en and exit ex: en goes to ex with probability q
// and otherwise calls A twice in sequence. Termination is the least root of
// x = q + (1 - q) x^2.
inline Rmdp rmc_family(const Rational& q) {
    RmdpComponent a;
    a.name = "A";
    a.nodes = {"en", "ex"};
    a.entries = {"en"};
    a.exits = {"ex"};
    a.boxes = {{"b1", "A"}, {"b2", "A"}};
    a.edges = {{{"", "en"}, {"", "ex"}, q},
               {{"", "en"}, {"b1", "en"}, Rational(1) - q},
               {{"b1", "ex"}, {"b2", "en"}, Rational(1)},
               {{"b2", "ex"}, {"", "ex"}, Rational(1)}};
    return {{a}};
}

// The entry is a maximizing node choosing between two copies of the body
// above, with exit probabilities q1 and q2.
inline Rmdp rmdp_choice_family(const Rational& q1, const Rational& q2) {
    RmdpComponent a;
    a.name = "A";
    a.nodes = {"en", "u1", "u2", "ex"};
    a.entries = {"en"};
    a.exits = {"ex"};
    a.boxes = {{"b1", "A"}, {"b2", "A"}};
    a.player[{"", "en"}] = 1;
    a.edges = {{{"", "en"}, {"", "u1"}, Rational(1)},
               {{"", "en"}, {"", "u2"}, Rational(1)},
               {{"", "u1"}, {"", "ex"}, q1},
               {{"", "u1"}, {"b1", "en"}, Rational(1) - q1},
               {{"", "u2"}, {"", "ex"}, q2},
               {{"", "u2"}, {"b1", "en"}, Rational(1) - q2},
               {{"b1", "ex"}, {"b2", "en"}, Rational(1)},
               {{"b2", "ex"}, {"", "ex"}, Rational(1)}};
    return {{a}};
}

// Two exits: the entry leaves through either exit or calls itself and
// continues from whichever exit the call returns through.
inline Rmdp two_exit_model() {
    RmdpComponent a;
    a.name = "A";
    a.nodes = {"en", "x1", "x2"};
    a.entries = {"en"};
    a.exits = {"x1", "x2"};
    a.boxes = {{"b", "A"}};
    a.edges = {{{"", "en"}, {"", "x1"}, Rational(1, 3)},
               {{"", "en"}, {"", "x2"}, Rational(1, 3)},
               {{"", "en"}, {"b", "en"}, Rational(1, 3)},
               {{"b", "x1"}, {"", "x2"}, Rational(1)},
               {{"b", "x2"}, {"", "x1"}, Rational(1)}};
    return {{a}};
}

}  // namespace xpl::testgen
