#pragma once

#include "xpl/encoders.hpp"
#include "xpl/plts.hpp"

#include <string>
#include <string_view>

namespace xpl {

// Line-oriented text formats; '#' starts a comment, blank lines are ignored,
// probabilities are rationals "n/d" or decimals.
//
// PLTS:
//   states s1 s2 ...
//   label <state> <prop>...
//   <from> <action> <choice> <to> <prob>
Plts read_plts(std::string_view text);
std::string write_plts(const Plts& m);

// MDP (terminal states may omit actions):
//   states s0 s1 ...
//   label <state> <prop>...
//   action <state> <name> <to> <prob> [<to> <prob>]...
Mdp read_mdp(std::string_view text);

// RMDP; ports are written box.node:
//   component <name>
//   nodes <node>...
//   entries <node>...
//   exits <node>...
//   box <box> <component>
//   player <vertex> <0|1|2>
//   edge <vertex> <vertex> [<prob>]
//   end
Rmdp read_rmdp(std::string_view text);

// Branching process; a mode index per rule, children after "->":
//   type <name> <prop>...
//   rule <type> <mode> <prob> -> <child>...
BranchingProcess read_bp(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace xpl
