#ifndef SETMEANS_DSL_HPP
#define SETMEANS_DSL_HPP

#include <string>
#include <string_view>

#include "setmeans/set_core.hpp"

namespace setmeans {

/// Parses the set language:
///
///   expr := term { "U" term }
///   term := prim | "(" expr ")" | shift(expr, rat) | below(expr, rat) | above(expr, rat)
///   prim := {rat, ...} | seq(a, w, r) | tower(k, a, r [, w]) | [lo, hi] | cantor(lo, hi, m, r)
///   rat  := [+|-] digits [ "/" digits ]
///
/// Throws ParseError (1-based line and column of the first offending token,
/// expected-token set) and ValidationError for out-of-range parameters.
SetExpr parse(std::string_view src);

/// Canonical text: the normal form when the expression normalizes, else a
/// structural rendering. parse(render(e)) normalizes like e.
std::string render(const SetExpr& e);

/// Structural rendering without normalization.
std::string renderRaw(const SetExpr& e);

} // namespace setmeans

#endif
