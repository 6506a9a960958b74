#pragma once

#include "xpl/formula.hpp"
#include "xpl/plts.hpp"

namespace xpl {

// Six-state model: s1 -a-> s2; from s2 both b and c choose between s3 and s4
// (two choice indices each); s3 -a-> s2 (2/3) | s5 (1/3); s4 -a-> s2 (3/4) | s6 (1/4).
// With `reactive` set, b only reaches s3 and c only reaches s4.
Plts choice_loop_model(bool reactive = false);

// mu X.([a][b]X & [a][c]X): every round through s2 eventually terminates.
Formula choice_loop_formula();

}  // namespace xpl
