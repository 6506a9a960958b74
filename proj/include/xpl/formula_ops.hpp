#pragma once

#include "xpl/formula.hpp"
#include "xpl/plts.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace xpl {

// Parses the concrete formula syntax:
//   tt  ff  A  !A  f & g  f | g  <a>f  [a]f  mu X.(f)  nu X.(f)
//   Pr{>= 1/2}(f)  mu { X = (f); Y = (g) } X  fix { mu X = (f); nu Y = (g) } X
// Modalities bind tightest, then &, then |. Identifiers bound by an enclosing
// binder are variables; all others are propositions. Binder names are made
// unique, so the result never shadows or captures.
Formula parse_formula(std::string_view text);

// Dual formula: tt/ff, A/!A, &/|, <a>/[a], mu/nu, Pr>p / Pr<=p, Pr>=p / Pr<p.
Formula neg(const Formula& f);

// Replace free occurrences of `v` by `replacement`. Throws std::logic_error if
// a binder inside `f` would capture a free variable of `replacement`.
Formula substitute(const Formula& f, const std::string& v, const Formula& replacement);

// One unfolding: sigma X.b  ->  b[sigma X.b / X].
Formula unfold(const Formula& binder);

// Rename binders so that no two nested binders share a name and no binder
// collides with a proposition or a free variable.
Formula rename_apart(const Formula& f);

// Eliminates simultaneous fixed-point blocks into nested unary binders.
// Throws MixedSignBlock if a block mixes least and greatest equations.
Formula normalize_simfix(const Formula& f);

// Unguarded free variables, alternation between least and greatest binders,
// free variables under Pr and at top level, and mixed SimFix blocks.
std::vector<Violation> check_wellformed(const Formula& f);

}  // namespace xpl
